"""Side-stream scrambling: base-2 LFSR plus a mapped ternary generator.

The base-2 generator is a 33-bit LFSR with polynomial x**33 + x**13 + 1
(the classic master side-stream generator), stepped once per word.  Each
word derives:

  * sy, two bits scrambling the page-selector input,
  * sx, three bits scrambling the postfix,
  * sg, four bits mapped mod 9 to a ternary digit pair scrambling the root.

The mod-9 mapping of four bits keeps the digit bias under 50% relative (see
the balance module's sub-scrambler error analysis).
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

MASK33 = (1 << 33) - 1


class Lfsr33:
    """x**33 + x**13 + 1 Fibonacci LFSR, one bit per step."""

    def __init__(self, seed: int = 1):
        seed &= MASK33
        if seed == 0:
            raise ValueError("LFSR seed must be nonzero")
        self.state = seed

    def step(self) -> int:
        s = self.state
        bit = ((s >> 32) ^ (s >> 12)) & 1
        self.state = ((s << 1) | bit) & MASK33
        return self.state


class WordKeys(NamedTuple):
    sy: int       # 2 bits, selector input
    sx: int       # 3 bits, postfix
    g1: int       # ternary digits for the root pair
    g0: int


NULL_KEYS = WordKeys(0, 0, 0, 0)


class WordScrambler:
    """Per-word scrambling keys; a disabled instance yields all-zero keys."""

    def __init__(self, seed: int = 1, enabled: bool = True):
        self.enabled = enabled
        self._lfsr = Lfsr33(seed if seed else 1)

    def next_keys(self) -> WordKeys:
        state = self._lfsr.step()
        if not self.enabled:
            return NULL_KEYS
        g = ((state >> 16) & 0xF) % 9
        return WordKeys((state >> 8) & 0x3, state & 0x7, g // 3, g % 3)


def scramble_root(root: int, keys: WordKeys) -> int:
    """Digit-wise mod-3 addition on the binary-coded nonary root."""
    d1, d0 = root // 3, root % 3
    return 3 * ((d1 + keys.g1) % 3) + (d0 + keys.g0) % 3


def descramble_root(root: int, keys: WordKeys) -> int:
    d1, d0 = root // 3, root % 3
    return 3 * ((d1 - keys.g1) % 3) + (d0 - keys.g0) % 3


def ternary_scramble(digits: Iterable[int], generator: Iterable[int]) -> Iterator[int]:
    """Digit-wise mod-3 addition of a generator stream onto a digit stream."""
    for d, g in zip(digits, generator):
        if not 0 <= d <= 2:
            raise ValueError(f"not a ternary digit: {d}")
        yield (d + g) % 3


def ternary_descramble(digits: Iterable[int], generator: Iterable[int]) -> Iterator[int]:
    for d, g in zip(digits, generator):
        if not 0 <= d <= 2:
            raise ValueError(f"not a ternary digit: {d}")
        yield (d - g) % 3


def mapped_ternary_generator(seed: int = 1, bits: int = 4) -> Iterator[int]:
    """Ternary generator from LFSR bit groups via value mod 3."""
    if bits < 2:
        raise ValueError("need at least 2 bits per digit")
    lfsr = Lfsr33(seed)
    while True:
        state = lfsr.step()
        yield (state & ((1 << bits) - 1)) % 3
