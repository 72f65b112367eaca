"""Geometry engine: metric gains, two-orbit constellations, sphere limits.

Covers four related tool sets:

* the metric coding-gain measure G = 20*log10(D / (D - d_min)) and its
  application to the 2D-PAM5 grid (geometric, angular and radial variants);
* idealized two-orbit ("stellarial") constellations, their equal-distance
  orbit ratio, and arrangement of ideal rooms onto the PAM17 grid;
* angular jump restrictions (dead zones), their gains and effective sizes,
  including the coupled-jump gain matrix;
* lattice estimates of hypersphere surface/volume that bound the usable
  dimensionality of an n-wire PAM-M interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import NamedTuple, Optional, Sequence

TWO_PI = 2.0 * math.pi

PHI4 = math.atan(0.5)   # angle of the (2, 1) grid point, ~0.1476*pi


def gain(diameter: float, d_min: float) -> float:
    """Coding-gain contribution in dB of a measure with least distance d_min."""
    if d_min <= 0 or d_min >= diameter:
        raise ValueError(
            f"measure does not exist: need 0 < d_min < D, got d_min={d_min}, D={diameter}"
        )
    return 20.0 * math.log10(diameter / (diameter - d_min))


def gain_or_none(diameter: float, d_min: Optional[float]) -> Optional[float]:
    if d_min is None or d_min <= 0:
        return None
    return gain(diameter, d_min)


# ---------------------------------------------------------------------------
# 2D-PAM5 partitioning analysis
# ---------------------------------------------------------------------------

Point2D = tuple[int, int]

ORBIT_SQUARED_RADII = (0, 1, 2, 4, 5, 8)


def orbit_of(point: Point2D) -> int:
    """Orbit index r0..r5 of a 2D-PAM5 grid point."""
    sq = point[0] ** 2 + point[1] ** 2
    try:
        return ORBIT_SQUARED_RADII.index(sq)
    except ValueError:
        raise ValueError(f"{point} is not a 2D-PAM5 point") from None


def orbit_radii() -> tuple[float, ...]:
    return tuple(math.sqrt(sq) for sq in ORBIT_SQUARED_RADII)


def _grid2d() -> list[Point2D]:
    return [(x, y) for x in (-2, -1, 0, 1, 2) for y in (-2, -1, 0, 1, 2)]


def _selection(name: str) -> list[Point2D]:
    yy = [p for p in _grid2d() if p[0] in (-2, 0, 2) and p[1] in (-2, 0, 2)]
    xx = [p for p in _grid2d() if p[0] in (-1, 1) and p[1] in (-1, 1)]
    yx = [p for p in _grid2d() if p[0] in (-2, 0, 2) and p[1] in (-1, 1)]
    xy = [p for p in _grid2d() if p[0] in (-1, 1) and p[1] in (-2, 0, 2)]
    table = {
        "YY-0": [p for p in yy if p != (0, 0)],
        "XX": xx,
        "YX": yx,
        "XY": xy,
        "P0": xx + [p for p in yy if p != (0, 0)],
        "P1": yx + xy,
    }
    table["D"] = table["P0"] + table["P1"]
    return table[name]


def _min_euclid(points: Sequence[Point2D]) -> float:
    best = math.inf
    for i, a in enumerate(points):
        for b in points[i + 1:]:
            d = math.dist(a, b)
            if d < best:
                best = d
    return best


def _angles(points: Sequence[Point2D]) -> list[float]:
    return sorted(math.atan2(y, x) % TWO_PI for x, y in points)


def _min_angle_gap(points: Sequence[Point2D]) -> Optional[float]:
    angles = _angles(points)
    gaps = []
    for i, a in enumerate(angles):
        b = angles[(i + 1) % len(angles)]
        gaps.append((b - a) % TWO_PI)
    smallest = min(gaps)
    if smallest < 1e-12:       # shared angle: the measure does not exist
        return None
    return smallest


def _min_radial_gap(points: Sequence[Point2D]) -> Optional[float]:
    radii = sorted({math.hypot(*p) for p in points})
    if len(radii) < 2:
        return None
    return min(b - a for a, b in zip(radii, radii[1:]))


class GainEntry(NamedTuple):
    selection: str
    kind: str            # "geometric" | "angular" | "radial"
    diameter: float
    d_min: Optional[float]
    db: Optional[float]


@dataclass(frozen=True)
class Pam5PlaneAnalysis:
    entries: tuple[GainEntry, ...]
    scheme_sums: dict[str, float]

    def entry(self, selection: str, kind: str) -> GainEntry:
        for e in self.entries:
            if e.selection == selection and e.kind == kind:
                return e
        raise KeyError((selection, kind))


def analyze_2d_pam5() -> Pam5PlaneAnalysis:
    """Geometric, angular and radial gain entries for the 2D-PAM5 selections."""
    d_geo = 4.0                       # full per-axis swing
    d_rad = 2.0 * math.sqrt(8)        # two times the outermost orbit radius
    selections = ("YY-0", "XX", "YX", "XY", "P0", "P1", "D")
    entries: list[GainEntry] = []
    for name in selections:
        pts = _selection(name)
        dmin = _min_euclid(pts)
        entries.append(GainEntry(name, "geometric", d_geo, dmin, gain(d_geo, dmin)))
        agap = _min_angle_gap(pts)
        entries.append(GainEntry(name, "angular", TWO_PI, agap, gain_or_none(TWO_PI, agap)))
        rgap = _min_radial_gap(pts)
        entries.append(GainEntry(name, "radial", d_rad, rgap, gain_or_none(d_rad, rgap)))

    analysis = Pam5PlaneAnalysis(tuple(entries), {})
    page1 = analysis.entry("P1", "geometric").db
    page1_ang = analysis.entry("P1", "angular").db
    page1_rad = analysis.entry("P1", "radial").db
    assert page1 is not None and page1_ang is not None and page1_rad is not None
    sums = {
        # single-page scheme: P1's twelve points alone
        "12/12+0": page1,
        # both pages as one 24-point dictionary riding P1's partitioning
        "12/24+0": page1 + page1_ang + page1_rad,
    }
    return Pam5PlaneAnalysis(tuple(entries), sums)


# ---------------------------------------------------------------------------
# Idealistic two-orbit constellations
# ---------------------------------------------------------------------------


def stellar_mean_power(rho: float) -> float:
    """Mean coupled power (R**2 + r**2) / (4 R**2) with R at full scale."""
    if not 0 < rho <= 1:
        raise ValueError("orbit ratio must be in (0, 1]")
    return (1.0 + rho * rho) / 4.0


def equal_distance_ratio(points_per_quadrant: float) -> float:
    """Orbit ratio r/R equalizing the two in-page nearest-neighbor distances.

    Within a page, points alternate orbits along angle steps of
    dphi = pi / (2 p); the low-orbit chord over 2*dphi must match the
    cross-orbit chord over dphi.
    """
    if points_per_quadrant < 2:
        raise ValueError("need at least 2 points per quadrant for a defined spacing")
    dphi = math.pi / (2.0 * points_per_quadrant)
    a = 1.0 - 4.0 * math.sin(dphi) ** 2
    if abs(a) < 1e-12:
        return 1.0 / (2.0 * math.cos(dphi))
    return (math.cos(dphi) - math.sqrt(3.0) * math.sin(dphi)) / a


class StellarRow(NamedTuple):
    points_dictionary: int
    points_page: int
    points_per_quadrant: int
    dphi: float
    rho: float
    d_min_page: float        # in units of R
    g_delta_page: float
    g_phi_page: float
    g_rho_page: float
    d_min_dictionary: float
    g_delta_dictionary: float


def ideal_stellar_table(points_per_quadrant: int) -> StellarRow:
    """Equal-distance placement figures for p points per page per quadrant."""
    p = points_per_quadrant
    if p < 2:
        raise ValueError("fewer than 2 angles per quadrant: spacing undefined")
    n_views = 4 * p
    dphi = TWO_PI / n_views
    rho = equal_distance_ratio(p)
    d_page = 2.0 * rho * math.sin(dphi)            # low-orbit chord over 2*dphi
    d_dict = 2.0 * rho * math.sin(dphi / 2.0)      # low-orbit chord over dphi
    return StellarRow(
        points_dictionary=2 * n_views,
        points_page=n_views,
        points_per_quadrant=p,
        dphi=dphi,
        rho=rho,
        d_min_page=d_page,
        g_delta_page=gain(2.0, d_page),
        g_phi_page=gain(TWO_PI, dphi),
        g_rho_page=gain(2.0, 1.0 - rho),
        d_min_dictionary=d_dict,
        g_delta_dictionary=gain(2.0, d_dict),
    )


class Room(NamedTuple):
    orbit: str       # "R" or "r"
    index: int       # angle index, 0 .. n_views-1
    x: float
    y: float


@dataclass(frozen=True)
class StellarSpec:
    """Two-orbit plane constellation: n_views angles, both orbits per angle.

    `page_layout` picks how the two plane pages split the rooms for the
    half-point cases: "alternating" opposes orbits along the angle index
    (page 0 takes R at even indexes), "orbit" gives each page one whole
    orbit.  Both keep pages angle-disjoint within a page and both couple to
    a constant total power.
    """

    points_per_quadrant: float
    rho: float
    radius: float = 1.0
    page_layout: str = "alternating"

    def __post_init__(self) -> None:
        if self.n_views < 8 or self.n_views % 2:
            raise ValueError("views per plane must be an even count >= 8")
        if not 0 < self.rho <= 1:
            raise ValueError("orbit ratio must be in (0, 1]")
        if self.page_layout not in ("alternating", "orbit"):
            raise ValueError("page_layout is 'alternating' or 'orbit'")

    @property
    def n_views(self) -> int:
        return round(4 * self.points_per_quadrant)

    @property
    def dphi(self) -> float:
        return TWO_PI / self.n_views

    @property
    def phi0(self) -> float:
        return self.dphi / 2.0

    def angle(self, index: int) -> float:
        return self.phi0 + self.dphi * (index % self.n_views)

    def rooms(self) -> list[Room]:
        out = []
        for index in range(self.n_views):
            a = self.angle(index)
            for orbit, rad in (("R", self.radius), ("r", self.radius * self.rho)):
                out.append(Room(orbit, index, rad * math.cos(a), rad * math.sin(a)))
        return out

    def page_rooms(self, page: int) -> list[Room]:
        if page not in (0, 1):
            raise ValueError("plane pages are 0 and 1")
        picked = []
        for room in self.rooms():
            high = room.orbit == "R"
            if self.page_layout == "orbit":
                keep = high if page == 0 else not high
            else:
                keep = (room.index % 2 == 0) == (high if page == 0 else not high)
            if keep:
                picked.append(room)
        return picked


# ---------------------------------------------------------------------------
# Grid arrangement (ideal rooms onto the PAM17 square)
# ---------------------------------------------------------------------------


class ArrangedRoom(NamedTuple):
    room: Room
    vertices: tuple[tuple[int, int], ...]   # one or two grid vertices, half-step units
    x: float                                # realized position, half-step units
    y: float
    radial_error: float                     # |realized radius - ideal radius|, half-steps


@dataclass(frozen=True)
class ArrangedOutline:
    levels: int
    rooms: tuple[ArrangedRoom, ...]
    max_radial_error: float     # in half-steps

    @property
    def max_radial_error_steps(self) -> float:
        return self.max_radial_error / 2.0


def grid_arrange(rooms: Sequence[Room], levels: int = 17,
                 scale: Optional[float] = None) -> ArrangedOutline:
    """Map ideal rooms to the PAM-M grid, allowing two-vertex midpoints.

    Rooms are given in the spec's unit circle (R = full scale).  Candidate
    positions are the grid vertices plus midpoints of adjacent vertices,
    i.e. the half-step lattice.  Each room takes the nearest candidate; a
    collision between two rooms is an ambiguous outline.
    """
    if levels < 3:
        raise ValueError("need at least 3 levels per dimension")
    half_max = levels - 1                     # full scale in half-step units
    if scale is None:
        scale = float(half_max)
    taken: dict[tuple[int, int], Room] = {}
    arranged = []
    worst = 0.0
    for room in rooms:
        ix, iy = room.x * scale, room.y * scale
        if abs(ix) > half_max + 0.5 or abs(iy) > half_max + 0.5:
            raise ValueError(f"room {room} falls outside the grid")
        cx = max(-half_max, min(half_max, round(ix)))
        cy = max(-half_max, min(half_max, round(iy)))
        key = (cx, cy)
        if key in taken:
            raise ValueError(
                f"ambiguous outline: rooms {taken[key]} and {room} share vertex {key}"
            )
        taken[key] = room
        verts = _vertex_pair(cx, cy)
        err = abs(math.hypot(cx, cy) - math.hypot(ix, iy))
        worst = max(worst, err)
        arranged.append(ArrangedRoom(room, verts, float(cx), float(cy), err))
    _check_angular_order(arranged)
    return ArrangedOutline(levels, tuple(arranged), worst)


def _vertex_pair(hx: int, hy: int) -> tuple[tuple[int, int], ...]:
    """Grid vertices (half-step units; even coordinates) realizing a point.

    Even-even points are vertices themselves; any other half-lattice point
    is the midpoint of two adjacent vertices.
    """
    if hx % 2 == 0 and hy % 2 == 0:
        return ((hx, hy),)
    ax = (hx - 1, hx + 1) if hx % 2 else (hx, hx)
    ay = (hy - 1, hy + 1) if hy % 2 else (hy, hy)
    return ((ax[0], ay[0]), (ax[1], ay[1]))


def _check_angular_order(arranged: Sequence[ArrangedRoom]) -> None:
    """The realized outline must visit each orbit's rooms in ideal order."""
    by_orbit: dict[str, list[ArrangedRoom]] = {}
    for a in arranged:
        by_orbit.setdefault(a.room.orbit, []).append(a)
    for group in by_orbit.values():
        if len(group) <= 2:
            continue
        ideal = [math.atan2(a.room.y, a.room.x) % TWO_PI for a in group]
        real = [math.atan2(a.y, a.x) % TWO_PI for a in group]
        order_ideal = sorted(range(len(ideal)), key=ideal.__getitem__)
        order_real = sorted(range(len(real)), key=real.__getitem__)
        k = order_real.index(order_ideal[0])
        rotated = order_real[k:] + order_real[:k]
        if rotated != order_ideal:
            raise ValueError("arranged outline broke the rooms' angular order")


# ---------------------------------------------------------------------------
# Jump restrictions
# ---------------------------------------------------------------------------


def dead_zone_min_jump(n_views: int, excluded: int) -> float:
    """Minimal angular jump with a dead zone of `excluded` views per plane."""
    if excluded < 0 or excluded > n_views:
        raise ValueError("excluded view count out of range")
    if excluded == 0:
        return 0.0
    return (math.pi / n_views) * min(excluded, n_views - excluded)


def jump_gain_limits() -> tuple[float, float]:
    """Large-N gain limits of single- and double-plane jump restrictions."""
    single = gain(TWO_PI, math.pi / 2.0)
    double = gain(TWO_PI, (math.pi / 2.0) * math.sqrt(2.0))
    return single, double


def jump_gain_limit_convergence(n_views: int) -> tuple[float, float]:
    """Finite-N gains with the dead zone at half the views per plane."""
    d = dead_zone_min_jump(n_views, n_views // 2)
    return gain(TWO_PI, d), gain(TWO_PI, d * math.sqrt(2.0))


def jump_gain(n_views: int, class_ab: float, class_cd: float) -> Optional[float]:
    """Gain of a coupled jump with per-plane minimal moves (in dphi units)."""
    dphi = TWO_PI / n_views
    combined = math.hypot(class_ab * dphi, class_cd * dphi)
    if combined <= 0:
        return None
    return gain(TWO_PI, combined)


# CiC jump classes for a 4-points-per-quadrant plane: each class is the set
# of per-plane moves sharing a minimal absolute step count.
CIC_CLASSES_16 = (
    ("pi or 0", 0),
    ("+-1 or +-7", 1),
    ("+-2 or +-6", 2),
    ("+-3 or +-5", 3),
    ("+-4", 4),
)


def cic_gain_matrix(n_views: int = 16) -> list[list[Optional[float]]]:
    """Coupled-jump gain matrix over the five move classes of each plane."""
    matrix = []
    for _, a in CIC_CLASSES_16:
        row = []
        for _, b in CIC_CLASSES_16:
            row.append(jump_gain(n_views, a, b))
        matrix.append(row)
    return matrix


def invariance_order(move_ab: int, move_cd: int) -> tuple[int, str]:
    """Number of inverted planes for a jump given in dphi multiples.

    A plane keeping an even multiple of dphi is directed; an odd multiple
    inverts it.
    """
    flags = ["D" if move % 2 == 0 else "I" for move in (move_ab, move_cd)]
    return sum(f == "I" for f in flags), "-".join(flags)


JUMP_OPTIONS = ("static", "gj", "gj+", "g2j", "g2j+", "g3j", "g3j+", "g4j", "g4j+")


def effective_sizes(n_views: int, option: str, diagonal_excluded: bool = False,
                    floor: int = 64) -> dict[str, int | bool]:
    """Usable successor counts per plane pair for a jump option.

    n_views here counts the views available per plane within one
    repartitioned page.  The dictionary holds eight such pages.
    """
    if option not in JUMP_OPTIONS:
        raise ValueError(f"unknown option {option!r}")
    level = 0 if option == "static" else int(option[1]) if option[1].isdigit() else 1
    plus = option.endswith("+")
    n = n_views - (1 if diagonal_excluded else 0)
    if option == "static":
        per_rp = n * n
    elif plus:
        per_rp = (n - level) ** 2
    else:
        per_rp = (n - level) * (n - level + 1)
    return {
        "per_rp": per_rp,
        "dictionary": 8 * per_rp,
        "below_floor": per_rp < floor,
    }


def size_ladder(n_views: int, max_level: int = 4) -> list[int]:
    """The static, G_J, G_J+, G_2J, G_2J+ ... successor-count ladder."""
    ladder = [n_views * n_views]
    for level in range(1, max_level + 1):
        ladder.append((n_views - level) * (n_views - level + 1))
        ladder.append((n_views - level) ** 2)
    return ladder


# ---------------------------------------------------------------------------
# Hypersphere estimators
# ---------------------------------------------------------------------------


def unit_ball_surface(n: int) -> float:
    """Surface area of the unit n-ball: 2 pi^(n/2) / Gamma(n/2)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def unit_ball_volume(n: int) -> float:
    """Volume of the unit n-ball: pi^(n/2) / Gamma(n/2 + 1)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


class SphereEstimate(NamedTuple):
    n: int
    levels: int
    r_test_sq: int       # in squared half-step units
    n_surface: int
    n_interior: int
    value: float         # volume or surface estimate


def _level_squares(levels: int) -> list[int]:
    """Squared level values in half-step units.

    h = M - 1 is the full scale; levels sit at -h, -h+2, ..., h, which makes
    them even integers for odd M (zero included) and odd for even M.
    """
    h = levels - 1
    return [v * v for v in range(-h, h + 1, 2)]


@lru_cache(maxsize=None)
def _shell_counts(n: int, levels: int) -> tuple[int, int, int]:
    """(r_test_sq, on-sphere count, interior count) by per-dimension DP."""
    h = levels - 1
    u_min_sq = 4 if levels % 2 else 1     # smallest nonzero |level|, squared
    r_sq = h * h + (n - 1) * u_min_sq
    counts = {0: 1}
    squares = _level_squares(levels)
    for _ in range(n):
        nxt: dict[int, int] = {}
        for norm, mult in counts.items():
            for sq in squares:
                total = norm + sq
                if total <= r_sq:
                    nxt[total] = nxt.get(total, 0) + mult
        counts = nxt
    n_surface = counts.get(r_sq, 0)
    n_interior = sum(mult for norm, mult in counts.items() if norm < r_sq)
    return r_sq, n_surface, n_interior


def grid_volume(n: int, levels: int) -> SphereEstimate:
    """Lattice estimate of the unit-ball volume spanned by an n-wire PAM-M grid."""
    if n < 1 or levels < 2:
        raise ValueError("need n >= 1 and at least 2 levels")
    r_sq, n_s, n_o = _shell_counts(n, levels)
    # level pitch is 2 half-steps; scale to the unit test radius
    value = (n_o + 0.5 * n_s) * (2.0 / math.sqrt(r_sq)) ** n
    return SphereEstimate(n, levels, r_sq, n_s, n_o, value)


def grid_volume_bruteforce(n: int, levels: int) -> SphereEstimate:
    """Direct enumeration oracle for small n and M."""
    h = levels - 1
    vals = range(-h, h + 1, 2)
    u_min_sq = 4 if levels % 2 else 1
    r_sq = h * h + (n - 1) * u_min_sq
    n_s = n_o = 0
    for point in product(vals, repeat=n):
        norm = sum(v * v for v in point)
        if norm == r_sq:
            n_s += 1
        elif norm < r_sq:
            n_o += 1
    value = (n_o + 0.5 * n_s) * (2.0 / math.sqrt(r_sq)) ** n
    return SphereEstimate(n, levels, r_sq, n_s, n_o, value)


def grid_surface(n: int, levels: int) -> SphereEstimate:
    """Surface estimate S = s(n)/v(n-1) * V(n-1, M)."""
    if n < 2:
        raise ValueError("surface estimate needs n >= 2")
    sub = grid_volume(n - 1, levels)
    value = unit_ball_surface(n) / unit_ball_volume(n - 1) * sub.value
    return SphereEstimate(n, levels, sub.r_test_sq, sub.n_surface, sub.n_interior, value)


class LimitScan(NamedTuple):
    levels: int
    n_tx: int                       # argmax of the surface estimate
    n_rx: int                       # argmax of the volume estimate
    surfaces: dict[int, float]
    volumes: dict[int, float]
    surface_percent: dict[int, float]
    volume_percent: dict[int, float]


def limit_scan(levels: int, max_dim: int = 10) -> LimitScan:
    """Locate the transmit (surface) and receive (volume) optima over n."""
    if levels < 2:
        raise ValueError("need at least 2 levels")
    volumes = {n: grid_volume(n, levels).value for n in range(1, max_dim + 1)}
    surfaces = {n: grid_surface(n, levels).value for n in range(2, max_dim + 1)}
    surfaces[1] = 2.0     # two end points of the 1-ball
    n_tx = max(surfaces, key=surfaces.__getitem__)
    n_rx = max(volumes, key=volumes.__getitem__)
    return LimitScan(
        levels, n_tx, n_rx, surfaces, volumes,
        {n: 100.0 * s / surfaces[n_tx] for n, s in surfaces.items()},
        {n: 100.0 * v / volumes[n_rx] for n, v in volumes.items()},
    )


def coupled_power(room_ab: Room, room_cd: Room) -> float:
    """Total squared radius of a coupled room pair (must be orbit-opposed)."""
    if room_ab.orbit == room_cd.orbit:
        raise ValueError("coupling prohibits same-orbit pairs")
    return (room_ab.x ** 2 + room_ab.y ** 2) + (room_cd.x ** 2 + room_cd.y ** 2)
