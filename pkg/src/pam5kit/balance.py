"""Symmetry decomposition of the 625-point constellation and hit balancing.

A *symmetry* is a set of constellation points whose repetition shifts the
per-level and per-page hit rates uniformly: hits distribute equally over the
Y bins it touches, equally over the X bins it touches, and either only onto
P0, equally onto P2/P4/P6, or equally onto the odd pages.  The 64 symmetries
built here partition the constellation and fall into seven groups with
identical per-repeat effect rows; balancing assigns a repeat count per group
so that all eight pages get the same hit total while the per-Y-bin and
per-X-bin rates come as close together as the arithmetic allows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Optional

from .levels import SUBSET_TO_PAGE, Symbol4D

L, Z, H = -2, 0, 2
Y_VALUES = (L, Z, H)
_Y_NEXT = {L: Z, Z: H, H: L}   # the three-way level rotation L -> z -> H


def _rot(value: int, times: int) -> int:
    for _ in range(times % 3):
        value = _Y_NEXT[value]
    return value


def _cyc_dist(a: int, b: int) -> int:
    """Rotation steps from a to b in the L->z->H cycle."""
    for d in range(3):
        if _rot(a, d) == b:
            return d
    raise ValueError


GROUPS = ("s2", "s3", "s8", "s16", "s24_even", "s24_ten", "s24_odd")

GROUP_SIZES = {"s2": 2, "s3": 3, "s8": 8, "s16": 16,
               "s24_even": 24, "s24_ten": 24, "s24_odd": 24}

GROUP_MEMBERS = {"s2": 8, "s3": 27, "s8": 6, "s16": 9,
                 "s24_even": 9, "s24_ten": 1, "s24_odd": 4}


@dataclass(frozen=True)
class Symmetry:
    group: str
    ordinal: int
    points: tuple[Symbol4D, ...]

    @property
    def size(self) -> int:
        return len(self.points)


class EffectRow(NamedTuple):
    """Per-repeat hit deltas: per Y bin, per X bin, per page, total per pair."""

    dh_y: int
    dh_x: int
    dh_pages: tuple[int, int, int, int, int, int, int, int]
    dh_z: int


# Normative oracle: the reference repeat-effect rows for the seven groups.
EXPECTED_EFFECTS: dict[str, EffectRow] = {
    "s2": EffectRow(0, 1, (2, 0, 0, 0, 0, 0, 0, 0), 2),
    "s3": EffectRow(1, 0, (3, 0, 0, 0, 0, 0, 0, 0), 3),
    "s8": EffectRow(2, 1, (0, 2, 0, 2, 0, 2, 0, 2), 8),
    "s16": EffectRow(4, 2, (0, 4, 0, 4, 0, 4, 0, 4), 16),
    "s24_even": EffectRow(4, 6, (0, 0, 8, 0, 8, 0, 8, 0), 24),
    "s24_ten": EffectRow(6, 3, (0, 6, 0, 6, 0, 6, 0, 6), 24),
    "s24_odd": EffectRow(2, 9, (0, 6, 0, 6, 0, 6, 0, 6), 24),
}


# ---------------------------------------------------------------------------
# Catalog construction
# ---------------------------------------------------------------------------


def _build_s2() -> list[Symmetry]:
    """XXXX split into 8 antipodal sign pairs."""
    out = []
    for ordinal, bits in enumerate(product((-1, 1), repeat=3), start=1):
        point = (-1, *bits)
        anti = tuple(-v for v in point)
        out.append(Symmetry("s2", ordinal, (point, anti)))
    return out


def _build_s3() -> list[Symmetry]:
    """YYYY split into 27 orbits of the simultaneous level rotation."""
    out = []
    ordinal = 0
    for rest in product(Y_VALUES, repeat=3):
        ordinal += 1
        base = (L, *rest)
        orbit = tuple(tuple(_rot(v, t) for v in base) for t in range(3))
        out.append(Symmetry("s3", ordinal, orbit))
    return out


# Odd-page rotations: the X coordinate moves right-to-left through the word
# while the Y values rotate positions with it, walking pages P1, P3, P7, P5.
def _odd_y_orbit(triple: tuple[int, int, int]) -> tuple[Symbol4D, ...]:
    t2, t1, t0 = triple
    points: list[Symbol4D] = []
    for x in (-1, 1):
        points.append((t2, t1, t0, x))
        points.append((t1, t0, x, t2))
        points.append((t0, x, t2, t1))
        points.append((x, t2, t1, t0))
    return tuple(points)


def _odd_x_orbit(signs: tuple[int, int, int]) -> tuple[Symbol4D, ...]:
    x2, x1, x0 = signs
    points: list[Symbol4D] = []
    for y in Y_VALUES:
        points.append((x2, x1, x0, y))
        points.append((x1, x0, y, x2))
        points.append((x0, y, x2, x1))
        points.append((y, x2, x1, x0))
    return tuple(points)


def _partner_triple(triple: tuple[int, int, int]) -> tuple[int, int, int]:
    """Replace the doubled Y value by the absent one (two-value triples only)."""
    values = set(triple)
    doubled = next(v for v in values if triple.count(v) == 2)
    absent = next(v for v in Y_VALUES if v not in values)
    return tuple(absent if v == doubled else v for v in triple)  # type: ignore[return-value]


def _build_odd_y_groups() -> tuple[list[Symmetry], list[Symmetry], Symmetry]:
    """Size-8 (distinct triples), size-16 (paired triples), and the size-24
    orbit union of the constant triples."""
    s8, s16 = [], []
    perms = [t for t in product(Y_VALUES, repeat=3) if len(set(t)) == 3]
    for ordinal, t in enumerate(perms, start=1):
        s8.append(Symmetry("s8", ordinal, _odd_y_orbit(t)))

    seen: set[tuple[int, int, int]] = set()
    ordinal = 0
    for t in product(Y_VALUES, repeat=3):
        if len(set(t)) != 2 or t in seen:
            continue
        partner = _partner_triple(t)
        seen.update((t, partner))
        ordinal += 1
        s16.append(Symmetry("s16", ordinal, _odd_y_orbit(t) + _odd_y_orbit(partner)))

    ten_points = sum((_odd_y_orbit((v, v, v)) for v in Y_VALUES), start=())
    return s8, s16, Symmetry("s24_ten", 10, ten_points)


def _build_s24_odd() -> list[Symmetry]:
    out = []
    reps = [s for s in product((-1, 1), repeat=3) if s[0] == -1]
    for ordinal, signs in enumerate(reps, start=11):
        anti = tuple(-v for v in signs)
        out.append(Symmetry("s24_odd", ordinal,
                            _odd_x_orbit(signs) + _odd_x_orbit(anti)))  # type: ignore[arg-type]
    return out


# Even non-P0 pages: six placements of a Y pair into the 2X+2Y patterns,
# with per-placement level rotations chosen so every wire position sees all
# three Y values.  The exponent vector depends on the pair's internal
# rotation distance d.
_EVEN_PLACEMENTS = (
    ("YYXX", (3, 2)),   # P2
    ("XXYY", (1, 0)),   # P2
    ("YXXY", (3, 0)),   # P4
    ("XYYX", (2, 1)),   # P4
    ("YXYX", (3, 1)),   # P6
    ("XYXY", (2, 0)),   # P6
)

_EVEN_EXPONENTS = {
    0: (0, 0, 1, 1, 2, 2),
    1: (0, 1, 2, 2, 1, 0),
    2: (0, 2, 1, 1, 2, 0),
}


def _build_s24_even() -> list[Symmetry]:
    out = []
    ordinal = 0
    for a, b in product(Y_VALUES, repeat=2):
        ordinal += 1
        exps = _EVEN_EXPONENTS[_cyc_dist(a, b)]
        points: list[Symbol4D] = []
        for (pattern, (hi, lo)), k in zip(_EVEN_PLACEMENTS, exps):
            u, v = _rot(a, k), _rot(b, k)
            for sx in product((-1, 1), repeat=2):
                word = [0, 0, 0, 0]
                word[3 - hi] = u
                word[3 - lo] = v
                it = iter(sx)
                for pos, c in enumerate(pattern):
                    if c == "X":
                        word[pos] = next(it)
                points.append(tuple(word))  # type: ignore[arg-type]
        out.append(Symmetry("s24_even", ordinal, tuple(points)))
    return out


@dataclass(frozen=True)
class SymmetryCatalog:
    symmetries: tuple[Symmetry, ...]

    def group(self, name: str) -> list[Symmetry]:
        return [s for s in self.symmetries if s.group == name]


def effect_of(symmetry: Symmetry) -> EffectRow:
    """Recompute the per-repeat effect row from the member points."""
    y_bins: dict[tuple[int, int], int] = {}
    x_bins: dict[tuple[int, int], int] = {}
    pages = [0] * 8
    for point in symmetry.points:
        pages[SUBSET_TO_PAGE["".join("X" if v in (-1, 1) else "Y" for v in point)]] += 1
        for pair, level in enumerate(point):
            bins = x_bins if level in (-1, 1) else y_bins
            bins[pair, level] = bins.get((pair, level), 0) + 1

    def uniform(bins: dict, levels: int) -> int:
        if not bins:
            return 0
        counts = set(bins.values())
        if len(counts) != 1 or len(bins) != 4 * levels:
            raise ValueError(f"non-uniform bin hits in {symmetry.group} #{symmetry.ordinal}")
        return counts.pop()

    dh_y = uniform(y_bins, 3)
    dh_x = uniform(x_bins, 2)
    return EffectRow(dh_y, dh_x, tuple(pages), len(symmetry.points))  # type: ignore[arg-type]


def build_catalog() -> SymmetryCatalog:
    """Construct and validate the 64-symmetry decomposition."""
    s8, s16, ten = _build_odd_y_groups()
    symmetries = (
        _build_s2() + _build_s3() + s8 + s16
        + _build_s24_even() + [ten] + _build_s24_odd()
    )
    catalog = SymmetryCatalog(tuple(symmetries))

    all_points: set[Symbol4D] = set()
    for sym in symmetries:
        if len(set(sym.points)) != len(sym.points):
            raise ValueError(f"duplicate points inside {sym.group} #{sym.ordinal}")
        if all_points & set(sym.points):
            raise ValueError(f"{sym.group} #{sym.ordinal} overlaps another symmetry")
        all_points.update(sym.points)
        if effect_of(sym) != EXPECTED_EFFECTS[sym.group]:
            raise ValueError(f"effect row mismatch for {sym.group} #{sym.ordinal}")
    if len(all_points) != 625:
        raise ValueError(f"catalog covers {len(all_points)} of 625 points")
    for name in GROUPS:
        if len(catalog.group(name)) != GROUP_MEMBERS[name]:
            raise ValueError(f"wrong member count for {name}")
    return catalog


# ---------------------------------------------------------------------------
# Balancing problem
# ---------------------------------------------------------------------------


class Infeasible(ValueError):
    """Raised when a balancing target violates a structural constraint."""


@dataclass(frozen=True)
class BalanceSolution:
    hz: int
    ne_floor: int
    group_sums: dict[str, int]
    h_y: int
    h_x: int
    h_page: int
    unbalance: int          # |h_y - h_x|
    signed_delta: int       # h_y - h_x
    member_split: dict[str, tuple[int, ...]]
    effective_p0: int
    effective_even_page: int
    effective_odd_page: int

    @property
    def p_y(self) -> Fraction:
        return Fraction(self.h_y, self.hz)

    @property
    def p_x(self) -> Fraction:
        return Fraction(self.h_x, self.hz)


def _round_robin(total: int, members: int) -> tuple[int, ...]:
    base, extra = divmod(total, members)
    return tuple(base + (1 if i < extra else 0) for i in range(members))


def hit_totals(group_sums: dict[str, int]) -> tuple[int, int, list[int]]:
    """H_y, H_x and the eight page hit totals implied by per-group sums."""
    h_y = h_x = 0
    pages = [0] * 8
    for name, count in group_sums.items():
        row = EXPECTED_EFFECTS[name]
        h_y += row.dh_y * count
        h_x += row.dh_x * count
        for page in range(8):
            pages[page] += row.dh_pages[page] * count
    return h_y, h_x, pages


def _page_effectives(g: dict[str, int]) -> tuple[int, int, int]:
    """Distinct points per page group under round-robin member filling."""
    used = {name: min(g[name], GROUP_MEMBERS[name]) for name in GROUPS}
    p0 = 2 * used["s2"] + 3 * used["s3"]
    even = 8 * used["s24_even"]
    odd = 2 * used["s8"] + 4 * used["s16"] + 6 * used["s24_ten"] + 6 * used["s24_odd"]
    return p0, even, odd


def _odd_floor(g3: int, g4: int, g6: int, g7: int) -> int:
    return (8 * min(g3, 6) + 16 * min(g4, 9)
            + 24 * min(g6, 1) + 24 * min(g7, 4))


def _best_odd_completion(t: int, g7: int, ne_floor: int) -> Optional[tuple[int, int, int]]:
    """Pick (g3, g4, g6) with g3 + 2*g4 + 3*g6 = t meeting the odd-page floor.

    Minimizes the repeat count g3 + g4 + g6, then takes the lexicographically
    smallest triple.  The floor only sees the capped values (6, 9, 1), so it
    suffices to enumerate capped bases and pack any surplus weight into the
    size-24 slot first.
    """
    best: Optional[tuple[int, tuple[int, int, int]]] = None
    for c3 in range(min(6, t) + 1):
        for c4 in range(min(9, (t - c3) // 2) + 1):
            for c6 in range(min(1, (t - c3 - 2 * c4) // 3) + 1):
                if _odd_floor(c3, c4, c6, g7) < 4 * ne_floor:
                    continue
                surplus = t - (c3 + 2 * c4 + 3 * c6)
                g3, g4, g6 = c3, c4, c6 + surplus // 3
                rem = surplus % 3
                if rem == 2:
                    g4 += 1
                elif rem == 1:
                    g3 += 1
                key = (g3 + g4 + g6, (g3, g4, g6))
                if best is None or key < best:
                    best = key
    if best is None:
        return None
    return best[1]


def solve(hz: int, ne_floor: int = 72) -> BalanceSolution:
    """Optimal group repeat sums for a total hit budget of hz.

    Minimizes |H_y - H_x| subject to uniform pages and the per-page
    effective-size floors; ties broken by fewer total repeats, then by the
    lexicographically smallest group-sum tuple.
    """
    if hz % 8:
        raise Infeasible(f"H_z = {hz} violates H_z mod 8 = 0")
    if hz < 8 * ne_floor:
        raise Infeasible(f"H_z = {hz} below the multiplexing floor 8*{ne_floor}")
    if ne_floor > 72:
        raise Infeasible("even pages hold at most 72 distinct points")
    hp = hz // 8
    if hp % 8:
        raise Infeasible(
            f"H_page = {hp} is not a multiple of 8; even pages advance in steps of 8"
        )
    g5 = hp // 8
    if 8 * min(g5, 9) < ne_floor:
        raise Infeasible("even pages cannot reach the effective-size floor")
    s_odd = hp // 2   # g3 + 2 g4 + 3 (g6 + g7)

    # The odd-page completion depends only on g7; precompute it once.
    completions = {
        g7: _best_odd_completion(s_odd - 3 * g7, g7, ne_floor)
        for g7 in range(s_odd // 3 + 1)
    }
    if all(c is None for c in completions.values()):
        raise Infeasible("odd pages cannot reach the effective-size floor")

    for delta_abs in range(0, hz + 1):
        signs = (0,) if delta_abs == 0 else (delta_abs, -delta_abs)
        for delta in signs:
            if (hz + 2 * delta) % 5:
                continue
            h_y = (hz + 2 * delta) // 5
            h_x = h_y - delta
            if h_y < 0 or h_x < 0:
                continue
            candidates = []
            for g7, completion in completions.items():
                if completion is None:
                    continue
                g2 = h_y + 4 * g7 - 3 * hp // 2
                if g2 < 0:
                    continue
                rest = hp - 3 * g2
                if rest < 0 or rest % 2:
                    continue
                g1 = rest // 2
                if 2 * min(g1, 8) + 3 * min(g2, 27) < ne_floor:
                    continue
                g3, g4, g6 = completion
                sums = {"s2": g1, "s3": g2, "s8": g3, "s16": g4,
                        "s24_even": g5, "s24_ten": g6, "s24_odd": g7}
                total = sum(sums.values())
                candidates.append((total, tuple(sums[n] for n in GROUPS), sums))
            if candidates:
                _, _, sums = min(candidates)
                return _finish_solution(hz, ne_floor, sums)
    raise Infeasible(f"no feasible assignment for H_z = {hz}")


def _finish_solution(hz: int, ne_floor: int, sums: dict[str, int]) -> BalanceSolution:
    h_y, h_x, pages = hit_totals(sums)
    assert len(set(pages)) == 1 and 3 * h_y + 2 * h_x == hz
    p0_eff, even_eff, odd_eff = _page_effectives(sums)
    split = {name: _round_robin(sums[name], GROUP_MEMBERS[name]) for name in GROUPS}
    return BalanceSolution(
        hz=hz, ne_floor=ne_floor, group_sums=sums,
        h_y=h_y, h_x=h_x, h_page=pages[0],
        unbalance=abs(h_y - h_x), signed_delta=h_y - h_x,
        member_split=split,
        effective_p0=p0_eff, effective_even_page=even_eff, effective_odd_page=odd_eff,
    )


def solution_from_sums(hz: int, sums: dict[str, int], ne_floor: int = 72) -> BalanceSolution:
    """Wrap explicit group sums (not necessarily optimal) for verification."""
    h_y, h_x, pages = hit_totals(sums)
    p0_eff, even_eff, odd_eff = _page_effectives(sums)
    split = {name: _round_robin(sums[name], GROUP_MEMBERS[name]) for name in GROUPS}
    return BalanceSolution(
        hz=hz, ne_floor=ne_floor, group_sums=dict(sums),
        h_y=h_y, h_x=h_x, h_page=pages[0] if len(set(pages)) == 1 else -1,
        unbalance=abs(h_y - h_x), signed_delta=h_y - h_x,
        member_split=split,
        effective_p0=p0_eff, effective_even_page=even_eff, effective_odd_page=odd_eff,
    )


class BalanceReport(NamedTuple):
    identity_ok: bool
    pages_uniform: bool
    floors_ok: bool
    unbalance: int
    p_y: Fraction
    p_x: Fraction
    violations: tuple[str, ...]


def verify(solution: BalanceSolution) -> BalanceReport:
    """Re-derive every identity of a solution and list violations."""
    sums = solution.group_sums
    h_y, h_x, pages = hit_totals(sums)
    violations = []
    identity = 3 * h_y + 2 * h_x == solution.hz
    if not identity:
        violations.append(f"3*H_y + 2*H_x = {3 * h_y + 2 * h_x} != H_z = {solution.hz}")
    uniform = len(set(pages)) == 1
    if not uniform:
        violations.append(f"pages not uniform: {pages}")
    elif 8 * pages[0] != solution.hz:
        violations.append(f"8*H_page = {8 * pages[0]} != H_z")
    if any(v < 0 for v in sums.values()):
        violations.append("negative repeat sums")
    p0_eff, even_eff, odd_eff = _page_effectives(sums)
    floors = (p0_eff >= solution.ne_floor
              and even_eff >= solution.ne_floor
              and odd_eff >= solution.ne_floor)
    if not floors:
        violations.append(
            f"effective sizes (P0={p0_eff}, even={even_eff}, odd={odd_eff}) "
            f"below floor N_E={solution.ne_floor}"
        )
    return BalanceReport(
        identity_ok=identity,
        pages_uniform=uniform,
        floors_ok=floors,
        unbalance=abs(h_y - h_x),
        p_y=Fraction(h_y, solution.hz) if solution.hz else Fraction(0),
        p_x=Fraction(h_x, solution.hz) if solution.hz else Fraction(0),
        violations=tuple(violations),
    )


# ---------------------------------------------------------------------------
# Sub-scrambler base-conversion error
# ---------------------------------------------------------------------------


def subscrambler_error(input_bits: int, base: int, kind: str = "mapping") -> Fraction:
    """Worst relative digit-probability deviation of a 2**k -> base mapping.

    With 2**k equiprobable inputs reduced mod `base`, each digit receives
    floor(2**k / base) or ceil(2**k / base) inputs; the returned value is
    max over digits of |p_digit - 1/base| * base.  Anchor-based generators
    are exact by construction.
    """
    if base < 2:
        raise ValueError("base must be >= 2")
    if input_bits < (base - 1).bit_length():
        raise ValueError(f"{input_bits} bits cannot index base {base}")
    if kind == "anchor":
        return Fraction(0)
    if kind != "mapping":
        raise ValueError(f"unknown generator kind {kind!r}")
    r = (1 << input_bits) % base
    if r == 0:
        return Fraction(0)
    return Fraction(max(r, base - r), 1 << input_bits)
