"""Multiplexing arithmetic: echo durations, variant tables, k-round plans.

An event noted on a clear data word leaves a residual ambiguity of 1/E (the
echo).  The surplus of an N_E-valued transport over an N_C-valued data
alphabet cancels it over n_e subsequent words, where n_e is the least n with

    E * N_C**n  <=  N_E**n

All boundary decisions here are exact big-integer comparisons; the
logarithmic form is only used to seed the search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Optional

ECHO_COLUMNS = (2, 4, 8, 16, 32, 64)


def min_echo_words(e: int, n_transport: int, n_clear: int) -> int:
    """Smallest n with e * n_clear**n <= n_transport**n (exact integers)."""
    if n_clear < 1 or e < 2:
        raise ValueError("need n_clear >= 1 and e >= 2")
    if n_transport <= n_clear:
        raise ValueError("no surplus capacity: n_transport must exceed n_clear")
    guess = math.log(e) / (math.log(n_transport) - math.log(n_clear))
    n = max(1, math.ceil(guess) - 2)
    while e * n_clear**n > n_transport**n:
        n += 1
    while n > 1 and e * n_clear ** (n - 1) <= n_transport ** (n - 1):
        n -= 1
    return n


def max_echo_modulus(n_clear: int, n_noted: int) -> int:
    """n_clear divided by the largest power of two not greater than n_noted."""
    if n_clear < 1 or n_noted < 1:
        raise ValueError("counts must be positive")
    pow2 = 1 << (n_noted.bit_length() - 1)
    return n_clear // pow2


@dataclass(frozen=True)
class MuxVariant:
    n_clear: int
    n_noted: int
    n_transport: int
    gcd: int
    e_max: int
    echo_table: dict[int, Optional[int]]   # E -> n_e, None where E > e_max


def variant(n_clear: int, n_noted: int) -> MuxVariant:
    """Full multiplexing-variant row for n_clear clear + n_noted noted words."""
    n_transport = n_clear + n_noted
    e_max = max_echo_modulus(n_clear, n_noted)
    table: dict[int, Optional[int]] = {}
    for e in ECHO_COLUMNS:
        if e <= e_max:
            table[e] = min_echo_words(e, n_transport, n_clear)
        else:
            table[e] = None
    return MuxVariant(n_clear, n_noted, n_transport, gcd(n_clear, n_noted), e_max, table)


class CapacityCheck(NamedTuple):
    feasible: bool
    lhs: int           # factor * base_data**words
    rhs: int           # base_transport**words

    def __bool__(self) -> bool:  # pragma: no cover - convenience
        return self.feasible


def capacity_check(factor: int, words: int, base_data: int, base_transport: int) -> CapacityCheck:
    """Exact test factor * base_data**words <= base_transport**words."""
    if min(factor, words, base_data, base_transport) < 1:
        raise ValueError("all arguments must be >= 1")
    lhs = factor * base_data**words
    rhs = base_transport**words
    return CapacityCheck(lhs <= rhs, lhs, rhs)


@dataclass(frozen=True)
class RoundPlan:
    rounds: tuple[tuple[int, int], ...]    # (reduction factor, duration) per round
    k: int
    total: int
    max_round: int

    @property
    def factors(self) -> tuple[int, ...]:
        return tuple(f for f, _ in self.rounds)


def _compositions(total: int) -> list[tuple[int, ...]]:
    if total == 0:
        return [()]
    out = []
    for head in range(1, total + 1):
        for rest in _compositions(total - head):
            out.append((head, *rest))
    return out


def round_plans(e: int, n_transport: int, n_clear: int) -> list[RoundPlan]:
    """All ordered factorizations of echo modulus e into power-of-two rounds.

    Each round factor F gets its minimal duration for the given transport
    ratio.  e must be a power of two.
    """
    if e < 2 or e & (e - 1):
        raise ValueError(f"echo modulus must be a power of two >= 2, got {e}")
    exponent = e.bit_length() - 1
    duration = {
        bits: min_echo_words(1 << bits, n_transport, n_clear)
        for bits in range(1, exponent + 1)
    }
    plans = []
    for combo in _compositions(exponent):
        rounds = tuple((1 << bits, duration[bits]) for bits in combo)
        lengths = [n for _, n in rounds]
        plans.append(RoundPlan(rounds, len(rounds), sum(lengths), max(lengths)))
    return plans


class MuxProfile(NamedTuple):
    n_transport: int
    n_clear: int
    n_noted: int
    n_e: int      # per-round (halving) duration
    k: int        # number of rounds


# Built-in root-type profiles; n_e is the single-halving duration and k
# the round count of the standard plan.
ROOT_PROFILES: dict[str, MuxProfile] = {
    "2-3": MuxProfile(3, 2, 1, 2, 1),
    "4-5": MuxProfile(5, 4, 1, 4, 2),
    "8-9": MuxProfile(9, 8, 1, 6, 3),
    "16-21": MuxProfile(21, 16, 5, 3, 4),
}


def profile(root_type: str) -> MuxProfile:
    try:
        return ROOT_PROFILES[root_type]
    except KeyError:
        raise ValueError(f"unknown root type {root_type!r}; known: {sorted(ROOT_PROFILES)}") from None
