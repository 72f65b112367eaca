"""4D-PAM5 constellation model: levels, subsets, pages, slices, power accounting.

The transport alphabet is the 5**4 = 625-point constellation seen at the
1000BASE-T PMA service interface.  Each wire carries one of five levels; a
level is an X level ({-1, +1}) or a Y level ({-2, 0, +2}).  The X/Y pattern
of a 4D symbol is its *subset*; subsets pair up (pattern and its X<->Y
complement) into eight *pages* P0..P7.  The (X count, Y count) composition
is the symbol's *slice* and fixes its average-power class.

All power arithmetic is exact (`fractions.Fraction`).  Floats appear only
when rendering.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, NamedTuple, Optional

LEVELS = (-2, -1, 0, 1, 2)
X_LEVELS = frozenset({-1, 1})
Y_LEVELS = frozenset({-2, 0, 2})

U_REF = 2          # full-scale level, +-U_REF on the wire
P_REF = U_REF * U_REF

# Per-class average powers of the basic line codes.  P_Y is the exact mean
# of the normalized Y-level powers (1 + 0 + 1)/3.
P_X = Fraction(1, 4)
P_Y = Fraction(2, 3)

# Page -> (pattern, complement pattern).  Even pages hold even-parity
# subsets (parity = X count mod 2).
SUBSET_PAIRS: dict[int, tuple[str, str]] = {
    0: ("XXXX", "YYYY"),
    1: ("XXXY", "YYYX"),
    2: ("XXYY", "YYXX"),
    3: ("XXYX", "YYXY"),
    4: ("XYYX", "YXXY"),
    5: ("XYYY", "YXXX"),
    6: ("XYXY", "YXYX"),
    7: ("XYXX", "YXYY"),
}

SUBSET_TO_PAGE: dict[str, int] = {
    pattern: page for page, pair in SUBSET_PAIRS.items() for pattern in pair
}

PAGE_SIZES = {0: 97, 1: 78, 2: 72, 3: 78, 4: 72, 5: 78, 6: 72, 7: 78}

Symbol4D = tuple[int, int, int, int]


def level_class(value: int) -> str:
    """'X' for {-1,+1}, 'Y' for {-2,0,+2}."""
    if value in X_LEVELS:
        return "X"
    if value in Y_LEVELS:
        return "Y"
    raise ValueError(f"not a PAM5 level: {value!r}")


def level_power(value: int) -> Fraction:
    """Normalized single-level power (value/2)**2, in {0, 1/4, 1}."""
    if value not in LEVELS:
        raise ValueError(f"not a PAM5 level: {value!r}")
    return Fraction(value * value, P_REF)


class Slice(NamedTuple):
    """(X count, Y count) composition of a 4D symbol; nx + ny = 4."""

    nx: int
    ny: int


SLICES = (Slice(4, 0), Slice(3, 1), Slice(2, 2), Slice(1, 3), Slice(0, 4))


def slice_power(sl: Slice) -> Fraction:
    """Mean normalized power of a symbol drawn uniformly from a slice."""
    nx, ny = sl
    if nx < 0 or ny < 0 or nx + ny != 4:
        raise ValueError(f"invalid slice {sl!r}")
    return (nx * P_X + ny * P_Y) / 4


def subset_of(symbol: Symbol4D) -> str:
    return "".join(level_class(v) for v in symbol)


class Classification(NamedTuple):
    subset: str
    page: int
    slice: Slice
    parity: int
    power: Fraction


def classify(symbol: Symbol4D) -> Classification:
    """Subset, page, slice, parity and normalized mean power of a symbol."""
    subset = subset_of(symbol)
    nx = subset.count("X")
    total = sum(level_power(v) for v in symbol)
    return Classification(
        subset=subset,
        page=SUBSET_TO_PAGE[subset],
        slice=Slice(nx, 4 - nx),
        parity=nx % 2,
        power=total / 4,
    )


def _pattern_symbols(pattern: str) -> Iterator[Symbol4D]:
    choices = [sorted(X_LEVELS) if c == "X" else sorted(Y_LEVELS) for c in pattern]
    for combo in product(*choices):
        yield tuple(combo)  # type: ignore[misc]


def pattern_size(pattern: str) -> int:
    nx = pattern.count("X")
    return 2**nx * 3 ** (4 - nx)


def enumerate_page(page: int) -> list[Symbol4D]:
    """All symbols of a page, first subset pattern first."""
    if page not in SUBSET_PAIRS:
        raise ValueError(f"page must be 0..7, got {page!r}")
    out: list[Symbol4D] = []
    for pattern in SUBSET_PAIRS[page]:
        out.extend(_pattern_symbols(pattern))
    return out


def enumerate_constellation() -> Iterator[Symbol4D]:
    for combo in product(LEVELS, repeat=4):
        yield combo  # type: ignore[misc]


def native_distribution() -> dict[int, Fraction]:
    """Per-page probability under a uniform draw over all 625 points."""
    return {page: Fraction(PAGE_SIZES[page], 625) for page in range(8)}


# ---------------------------------------------------------------------------
# Transport dictionary word sets (per page).  The control/free counts of P0
# are left open in the source material ("under consideration"), so they are
# nullable here rather than invented.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PageDescriptor:
    page: int
    subsets: tuple[str, str]
    point_count: int
    data: int = 64
    data_noted: int = 8          # Data* images
    data_all: int = 72           # Data** = Data + Data*
    ctrl: Optional[int] = None
    ctrl_noted: Optional[int] = None
    free: Optional[int] = None

    def __post_init__(self) -> None:
        if self.data + self.data_noted != self.data_all:
            raise ValueError("Data + Data* must equal Data**")


def transport_dictionary() -> dict[int, PageDescriptor]:
    pages = {}
    for page in range(8):
        if page == 0:
            ctrl = ctrl_noted = free = None   # open cells, not invented
        elif page % 2 == 0:
            ctrl, ctrl_noted, free = 0, 0, 0
        else:
            ctrl, ctrl_noted, free = 0, 0, 6
        pages[page] = PageDescriptor(
            page=page,
            subsets=SUBSET_PAIRS[page],
            point_count=PAGE_SIZES[page],
            ctrl=ctrl,
            ctrl_noted=ctrl_noted,
            free=free,
        )
    return pages


# ---------------------------------------------------------------------------
# Design profiles: which points of each page a coding design exercises, and
# with what per-word occurrence probability.
# ---------------------------------------------------------------------------


class SliceOccupancy(NamedTuple):
    slice: Slice
    points: int
    probability: Fraction


@dataclass(frozen=True)
class DesignProfile:
    name: str
    pages: dict[int, tuple[SliceOccupancy, ...]]

    def __post_init__(self) -> None:
        for page, occ in self.pages.items():
            total = sum(o.probability for o in occ)
            if total != 1:
                raise ValueError(f"{self.name}: page {page} probabilities sum to {total}")


def _profile(name, p0_pts, p0_probs, odd_pts, odd_probs) -> DesignProfile:
    pages: dict[int, tuple[SliceOccupancy, ...]] = {}
    pages[0] = (
        SliceOccupancy(Slice(4, 0), p0_pts[0], p0_probs[0]),
        SliceOccupancy(Slice(0, 4), p0_pts[1], p0_probs[1]),
    )
    for page in (2, 4, 6):
        pages[page] = (SliceOccupancy(Slice(2, 2), 72, Fraction(1)),)
    for page in (1, 3, 5, 7):
        pages[page] = (
            SliceOccupancy(Slice(3, 1), odd_pts[0], odd_probs[0]),
            SliceOccupancy(Slice(1, 3), odd_pts[1], odd_probs[1]),
        )
    return DesignProfile(name, pages)


def builtin_profiles() -> dict[str, DesignProfile]:
    """The four compared designs (original line code, then three multiplexed)."""
    profiles = {}

    # Original 1000BASE-T: 64 points per page, uniform within the page.
    pages: dict[int, tuple[SliceOccupancy, ...]] = {
        0: (
            SliceOccupancy(Slice(4, 0), 16, Fraction(16, 64)),
            SliceOccupancy(Slice(0, 4), 48, Fraction(48, 64)),
        )
    }
    for page in (2, 4, 6):
        pages[page] = (SliceOccupancy(Slice(2, 2), 64, Fraction(1)),)
    for page in (1, 3, 5, 7):
        pages[page] = (
            SliceOccupancy(Slice(3, 1), 24, Fraction(24, 64)),
            SliceOccupancy(Slice(1, 3), 40, Fraction(40, 64)),
        )
    profiles["original-1000BASE-T"] = DesignProfile("original-1000BASE-T", pages)

    profiles["draft"] = _profile(
        "draft",
        (16, 56), (Fraction(16, 72), Fraction(56, 72)),
        (24, 48), (Fraction(24, 72), Fraction(48, 72)),
    )
    profiles["extensive"] = _profile(
        "extensive",
        (16, 80), (Fraction(16, 96), Fraction(80, 96)),
        (24, 54), (Fraction(24, 78), Fraction(54, 78)),
    )
    # The proposed design pins the P0 and odd-page slice probabilities by
    # construction (1/8 + 7/8 and 1/4 + 3/4) rather than by point count.
    profiles["proposed"] = _profile(
        "proposed",
        (16, 81), (Fraction(1, 8), Fraction(7, 8)),
        (24, 54), (Fraction(1, 4), Fraction(3, 4)),
    )
    return profiles


PROFILES = builtin_profiles()


def page_nap(profile: DesignProfile, page: int) -> Fraction:
    """Normalized average power of one page under a design profile."""
    if page not in profile.pages:
        raise KeyError(f"profile {profile.name!r} does not define page {page}")
    return sum(
        (occ.probability * slice_power(occ.slice) for occ in profile.pages[page]),
        start=Fraction(0),
    )


class NapStats(NamedTuple):
    per_page: dict[int, Fraction]
    mu0: Fraction
    variance: Fraction
    sigma: float
    ratio: float       # sigma / mu0


def nap_statistics(profile: DesignProfile) -> NapStats:
    """Mean and population deviation of per-page NAP, pages equiprobable."""
    missing = set(range(8)) - set(profile.pages)
    if missing:
        raise KeyError(f"profile {profile.name!r} missing pages {sorted(missing)}")
    per_page = {page: page_nap(profile, page) for page in range(8)}
    mu0 = sum(per_page.values(), start=Fraction(0)) / 8
    variance = sum(((v - mu0) ** 2 for v in per_page.values()), start=Fraction(0)) / 8
    sigma = float(variance) ** 0.5
    return NapStats(per_page, mu0, variance, sigma, sigma / float(mu0))


# ---------------------------------------------------------------------------
# Inventory emission
# ---------------------------------------------------------------------------


def inventory_rows() -> list[dict]:
    """One row per (page, subset): page, subset, slice, count, power."""
    rows = []
    for page in range(8):
        for pattern in SUBSET_PAIRS[page]:
            nx = pattern.count("X")
            sl = Slice(nx, 4 - nx)
            rows.append(
                {
                    "page": page,
                    "subset": pattern,
                    "slice": f"{sl.nx}X+{sl.ny}Y",
                    "count": pattern_size(pattern),
                    "power": str(slice_power(sl)),
                }
            )
    return rows


def inventory_csv() -> str:
    rows = inventory_rows()
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["page", "subset", "slice", "count", "power"])
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def inventory_json() -> str:
    return json.dumps(inventory_rows(), indent=2)
