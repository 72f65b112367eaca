"""MDI output statistics: PAM17 generation, transits, power/wobble/change.

The partial-response filter out(t) = 3*a(t) + a(t-1) (in eighths of full
scale, a in -2..+2) turns each wire's PAM5 stream into a 17-level signal.
Statistics over the four-wire output are computed by exact enumeration:
per-wire distributions convolved across independent wires for the memoryless
reference, and exact stationary Markov-chain sums for room processes on
coupled two-orbit constellations.

Normalizations: instantaneous power is W(t) = sum_w (out_w/8)**2 / 4 of
W_max (all four wires at full scale); change power uses the full per-wire
swing of 16 eighths, c(t) = sum_w (d_out_w/16)**2 / 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .stellar import ArrangedOutline, StellarSpec, gain

PAM5 = (-2, -1, 0, 1, 2)
FILTER_TAPS = (3, 1)            # out = 3*a(t) + 1*a(t-1), quarter-weights x4


def filter_output(current: int, previous: int) -> int:
    return FILTER_TAPS[0] * current + FILTER_TAPS[1] * previous


def filter_distribution() -> list[tuple[int, Fraction, Fraction]]:
    """(output level, probability, normalized power) for iid uniform input."""
    counts: dict[int, int] = {}
    for prev, cur in product(PAM5, repeat=2):
        out = filter_output(cur, prev)
        counts[out] = counts.get(out, 0) + 1
    return [
        (out, Fraction(counts[out], 25), Fraction(out * out, 64))
        for out in sorted(counts)
    ]


class Transit(NamedTuple):
    source: int
    target: int
    possible: bool
    hits: int                # of the 125 (prev, shared, next) input triples
    hop_power: Fraction      # ((target - source) / 16)**2


def transit_matrix() -> dict[tuple[int, int], Transit]:
    """Reachability and hit counts of every PAM17 output transition."""
    counts: dict[tuple[int, int], int] = {}
    for prev, shared, nxt in product(PAM5, repeat=3):
        o1 = filter_output(shared, prev)
        o2 = filter_output(nxt, shared)
        counts[o1, o2] = counts.get((o1, o2), 0) + 1
    matrix = {}
    for o1 in range(-8, 9):
        for o2 in range(-8, 9):
            hits = counts.get((o1, o2), 0)
            matrix[o1, o2] = Transit(
                o1, o2, hits > 0, hits, Fraction((o2 - o1) ** 2, 256)
            )
    return matrix


# ---------------------------------------------------------------------------
# Statistics report
# ---------------------------------------------------------------------------


class StatBlock(NamedTuple):
    mean: float
    deviation: float
    pk_minus: float
    pk_plus: float

    @property
    def span(self) -> float:
        return self.pk_plus - self.pk_minus


@dataclass(frozen=True)
class StatsReport:
    power: StatBlock
    change: StatBlock
    wobble: Optional[StatBlock]      # None where wobble is not applicable
    jump_gain_db: Optional[float] = None
    mc_seed: Optional[int] = None            # set on sampled reports only
    mc_std_error: Optional[float] = None     # standard error of the power mean

    @property
    def wobble_absent(self) -> bool:
        return self.wobble is not None and self.wobble.pk_plus == 0


def _dist_stats(dist: dict[Fraction, Fraction]) -> StatBlock:
    mean = sum((v * p for v, p in dist.items()), start=Fraction(0))
    var = sum(((v - mean) ** 2 * p for v, p in dist.items()), start=Fraction(0))
    return StatBlock(float(mean), float(var) ** 0.5, float(min(dist)), float(max(dist)))


def _convolve(a: dict[Fraction, Fraction], b: dict[Fraction, Fraction]) -> dict[Fraction, Fraction]:
    out: dict[Fraction, Fraction] = {}
    for va, pa in a.items():
        for vb, pb in b.items():
            key = va + vb
            out[key] = out.get(key, 0) + pa * pb
    return out


def _four_wire(dist: dict[Fraction, Fraction]) -> dict[Fraction, Fraction]:
    pair = _convolve(dist, dist)
    quad = _convolve(pair, pair)
    return {v / 4: p for v, p in quad.items()}


# ---------------------------------------------------------------------------
# Process specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProcessSpec:
    """What drives the MDI: the memoryless reference, a room process, or a
    fixed symbol sequence."""

    kind: str                                   # "iid-pam5" | "constellation" | "fixed"
    spec: Optional[StellarSpec] = None
    rule: Optional["JumpRule"] = None
    outline: Optional[ArrangedOutline] = None
    sequence: Optional[Sequence[tuple[int, int, int, int]]] = None


def reference_process() -> ProcessSpec:
    return ProcessSpec(kind="iid-pam5")


def power_stats(process: ProcessSpec) -> StatsReport:
    if process.kind == "iid-pam5":
        return _iid_reference_stats()
    if process.kind == "constellation":
        if process.spec is None or process.rule is None:
            raise ValueError("constellation process needs a spec and a rule")
        return dynamic_stats(process.spec, process.rule, process.outline)
    if process.kind == "fixed":
        if not process.sequence:
            raise ValueError("fixed process needs a symbol sequence")
        return _fixed_sequence_stats(process.sequence)
    raise ValueError(f"unknown process kind {process.kind!r}")


def _iid_reference_stats() -> StatsReport:
    power_one: dict[Fraction, Fraction] = {}
    for prev, cur in product(PAM5, repeat=2):
        v = Fraction(filter_output(cur, prev) ** 2, 64)
        power_one[v] = power_one.get(v, 0) + Fraction(1, 25)
    change_one: dict[Fraction, Fraction] = {}
    for p, a, n in product(PAM5, repeat=3):
        delta = filter_output(n, a) - filter_output(a, p)
        v = Fraction(delta * delta, 256)
        change_one[v] = change_one.get(v, 0) + Fraction(1, 125)
    return StatsReport(
        power=_dist_stats(_four_wire(power_one)),
        change=_dist_stats(_four_wire(change_one)),
        wobble=None,
    )


def _fixed_sequence_stats(symbols: Sequence[tuple[int, int, int, int]]) -> StatsReport:
    if len(symbols) < 2:
        raise ValueError("need at least two symbols")
    outs = []
    prev = symbols[0]
    for sym in symbols:
        outs.append(tuple(filter_output(c, p) for c, p in zip(sym, prev)))
        prev = sym
    powers = [sum((o / 8.0) ** 2 for o in word) / 4.0 for word in outs]
    changes = [
        sum(((b - a) / 16.0) ** 2 for a, b in zip(w1, w2)) / 4.0
        for w1, w2 in zip(outs, outs[1:])
    ]

    def block(xs: list[float]) -> StatBlock:
        mean = sum(xs) / len(xs)
        var = sum((x - mean) ** 2 for x in xs) / len(xs)
        return StatBlock(mean, math.sqrt(var), min(xs), max(xs))

    return StatsReport(power=block(powers), change=block(changes), wobble=None)


# ---------------------------------------------------------------------------
# Room processes on coupled constellations
# ---------------------------------------------------------------------------


def _zone(deltas: Sequence[int], n_views: int) -> frozenset[int]:
    out = set()
    for d in deltas:
        out.add(d % n_views)
        out.add(-d % n_views)
    return frozenset(out)


@dataclass(frozen=True)
class JumpRule:
    """Per-plane banned view deltas.  Plane AB carries the stronger zone."""

    name: str
    zone_ab: tuple[int, ...]
    zone_cd: tuple[int, ...]

    def zones(self, n_views: int) -> tuple[frozenset[int], frozenset[int]]:
        return _zone(self.zone_ab, n_views), _zone(self.zone_cd, n_views)


def builtin_rule(name: str, n_views: int) -> JumpRule:
    """Built-in options: static, one-way/two-way keep exclusion, and the
    widened zones banning the nearest views plus the diagonal."""
    half = n_views // 2
    rules = {
        "static": JumpRule("static", (), ()),
        "gj": JumpRule("gj", (0,), ()),
        "gj+": JumpRule("gj+", (0,), (0,)),
        "g2j": JumpRule("g2j", (0, 1, half), ()),
        "g2j+": JumpRule("g2j+", (0, 1, half), (0, 1, half)),
    }
    try:
        return rules[name]
    except KeyError:
        raise ValueError(f"unknown jump rule {name!r}") from None


def rule_min_jump(rule: JumpRule, n_views: int) -> float:
    """Smallest allowed combined angular move, in radians."""
    za, zc = rule.zones(n_views)
    dphi = 2.0 * math.pi / n_views
    best = math.inf
    for da in range(n_views):
        if da in za:
            continue
        wa = min(da, n_views - da) * dphi
        for dc in range(n_views):
            if dc in zc:
                continue
            wc = min(dc, n_views - dc) * dphi
            best = min(best, math.hypot(wa, wc))
    if math.isinf(best):
        raise ValueError("rule excludes every transit")
    return best


def _room_positions(spec: StellarSpec, outline: Optional[ArrangedOutline]):
    """(x, y) per (orbit, view), normalized so full scale is 1.0."""
    if outline is None:
        return {(r.orbit, r.index): (r.x, r.y) for r in spec.rooms()}
    scale = float(outline.levels - 1)
    return {
        (a.room.orbit, a.room.index): (a.x / scale, a.y / scale)
        for a in outline.rooms
    }


def _coords_array(spec: StellarSpec, outline: Optional[ArrangedOutline]) -> np.ndarray:
    """[orbit (0=R, 1=r), view, xy] position array, full scale 1.0."""
    pos = _room_positions(spec, outline)
    coords = np.zeros((2, spec.n_views, 2))
    for (orbit, view), (x, y) in pos.items():
        coords[0 if orbit == "R" else 1, view] = (x, y)
    return coords


def dynamic_stats(spec: StellarSpec, rule: JumpRule,
                  outline: Optional[ArrangedOutline] = None) -> StatsReport:
    """Exact stationary statistics of the coupled room process.

    States are (orbit pattern, view_AB, view_CD) with the two planes always
    on opposite orbits; successors are uniform over the views the rule
    permits, with the orbit pattern free.  Constant out-degree and the
    symmetric delta zones make the uniform distribution stationary (see
    stationary_check), so all sums below weight states equally.
    """
    n = spec.n_views
    za, zc = rule.zones(n)
    allowed_a = np.array([d for d in range(n) if d not in za], dtype=int)
    allowed_c = np.array([d for d in range(n) if d not in zc], dtype=int)
    if allowed_a.size == 0 or allowed_c.size == 0:
        raise ValueError("disconnected: rule excludes every transit")
    coords = _coords_array(spec, outline)
    design_power = (1.0 + spec.rho**2) / 4.0

    plane_power = np.sum(coords**2, axis=2)          # [orbit, view]
    word_powers = []
    for swap in (0, 1):
        w = plane_power[swap][:, None] + plane_power[1 - swap][None, :]
        word_powers.append(w.ravel())
    parr = np.concatenate(word_powers) / 4.0
    wob = np.abs(parr - design_power)
    power_block = StatBlock(float(parr.mean()), float(parr.std()),
                            float(parr.min()), float(parr.max()))
    wobble_block = StatBlock(float(wob.mean()), float(wob.std()),
                             float(wob.min()), float(wob.max()))

    # d2[o1, v1, o2, v2]: squared displacement between any two rooms.
    diff = coords[:, :, None, None, :] - coords[None, None, :, :, :]
    d2 = np.sum(diff**2, axis=-1)

    views = np.arange(n)
    mean = sq_mean = 0.0
    cmin, cmax = math.inf, -math.inf
    for swap in (0, 1):
        for swap2 in (0, 1):
            # per-plane displacement tables over (view, allowed delta)
            ta = d2[swap, views[:, None], swap2, (views[:, None] + allowed_a) % n]
            tc = d2[1 - swap, views[:, None], 1 - swap2, (views[:, None] + allowed_c) % n]
            a = ta.ravel()
            c = tc.ravel()
            total = a[:, None] + c[None, :]
            mean += total.mean()
            sq_mean += (total**2).mean()
            cmin = min(cmin, float(a.min() + c.min()))
            cmax = max(cmax, float(a.max() + c.max()))
    mean /= 4.0 * 16.0
    sq_mean /= 4.0 * 256.0
    change_block = StatBlock(mean, math.sqrt(max(0.0, sq_mean - mean * mean)),
                             cmin / 16.0, cmax / 16.0)

    min_jump = rule_min_jump(rule, n)
    jump_db = gain(2.0 * math.pi, min_jump) if min_jump > 0 else 0.0
    return StatsReport(power=power_block, change=change_block,
                       wobble=wobble_block, jump_gain_db=jump_db)


def wobble_stats(outline: ArrangedOutline, spec: StellarSpec,
                 rule: Optional[JumpRule] = None) -> StatBlock:
    """Wobble block of an arranged outline under the (static by default) process."""
    rule = rule or builtin_rule("static", spec.n_views)
    report = dynamic_stats(spec, rule, outline)
    assert report.wobble is not None
    return report.wobble


def stationary_check(spec: StellarSpec, rule: JumpRule, tol: float = 1e-12) -> float:
    """Max |pi*P - pi| for the uniform distribution (should be ~0)."""
    n = spec.n_views
    za, zc = rule.zones(n)
    allowed_a = [d for d in range(n) if d not in za]
    allowed_c = [d for d in range(n) if d not in zc]
    if not allowed_a or not allowed_c:
        raise ValueError("disconnected: rule excludes every transit")
    out_degree = 2 * len(allowed_a) * len(allowed_c)
    pi = np.full((2, n, n), 1.0 / (2 * n * n))
    nxt = np.zeros_like(pi)
    source = pi[0] + pi[1]           # orbit pattern of the successor is free
    for da in allowed_a:
        rolled_a = np.roll(source, da, axis=0)
        for dc in allowed_c:
            shifted = np.roll(rolled_a, dc, axis=1)
            nxt[0] += shifted
            nxt[1] += shifted
    nxt /= out_degree
    residual = float(np.abs(nxt - pi).max())
    if residual > tol:
        raise AssertionError(f"uniform distribution is not stationary: {residual}")
    return residual


# ---------------------------------------------------------------------------
# Monte Carlo fallback (counter-based generator, reproducible)
# ---------------------------------------------------------------------------


def monte_carlo_power_stats(spec: StellarSpec, rule: JumpRule, samples: int,
                            seed: Optional[int],
                            outline: Optional[ArrangedOutline] = None) -> StatsReport:
    """Sampled statistics of the room process; requires an explicit seed."""
    if seed is None:
        raise ValueError("Monte Carlo requested without seed")
    rng = np.random.Generator(np.random.Philox(seed))
    n = spec.n_views
    za, zc = rule.zones(n)
    allowed_a = np.array([d for d in range(n) if d not in za])
    allowed_c = np.array([d for d in range(n) if d not in zc])
    if allowed_a.size == 0 or allowed_c.size == 0:
        raise ValueError("disconnected: rule excludes every transit")
    pos = _room_positions(spec, outline)
    design_power = (1.0 + spec.rho**2) / 4.0

    coords = np.zeros((2, n, 2))
    for (orbit, view), (x, y) in pos.items():
        coords[0 if orbit == "R" else 1, view] = (x, y)

    swap = rng.integers(0, 2, size=samples + 1)
    da = allowed_a[rng.integers(0, allowed_a.size, size=samples)]
    dc = allowed_c[rng.integers(0, allowed_c.size, size=samples)]
    va = np.concatenate(([rng.integers(0, n)], np.zeros(samples, dtype=int)))
    vc = np.concatenate(([rng.integers(0, n)], np.zeros(samples, dtype=int)))
    va[1:] = (va[0] + np.cumsum(da)) % n
    vc[1:] = (vc[0] + np.cumsum(dc)) % n
    ab = coords[swap, va]
    cd = coords[1 - swap, vc]
    power = (np.sum(ab * ab, axis=1) + np.sum(cd * cd, axis=1)) / 4.0
    dab = np.diff(ab, axis=0)
    dcd = np.diff(cd, axis=0)
    change = (np.sum(dab * dab, axis=1) + np.sum(dcd * dcd, axis=1)) / 16.0
    wobble = np.abs(power - design_power)
    return StatsReport(
        power=StatBlock(float(power.mean()), float(power.std()),
                        float(power.min()), float(power.max())),
        change=StatBlock(float(change.mean()), float(change.std()),
                         float(change.min()), float(change.max())),
        wobble=StatBlock(float(wobble.mean()), float(wobble.std()),
                         float(wobble.min()), float(wobble.max())),
        mc_seed=seed,
        mc_std_error=float(power.std() / math.sqrt(power.size)),
    )
