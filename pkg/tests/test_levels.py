import json
from fractions import Fraction

import pytest

from pam5kit import levels
from pam5kit.levels import Slice, classify, slice_power


def test_level_classes():
    assert levels.level_class(-1) == "X"
    assert levels.level_class(1) == "X"
    for v in (-2, 0, 2):
        assert levels.level_class(v) == "Y"
    with pytest.raises(ValueError):
        levels.level_class(3)


def test_level_powers():
    assert levels.level_power(0) == 0
    assert levels.level_power(1) == Fraction(1, 4)
    assert levels.level_power(-2) == 1
    assert {levels.level_power(v) for v in levels.LEVELS} == {0, Fraction(1, 4), 1}


@pytest.mark.parametrize("symbol,subset,page,slc,parity,power", [
    ((2, 2, 2, 2), "YYYY", 0, Slice(0, 4), 0, Fraction(1)),
    ((0, 0, 0, 0), "YYYY", 0, Slice(0, 4), 0, Fraction(0)),
    ((-1, 1, -2, 0), "XXYY", 2, Slice(2, 2), 0, Fraction(3, 8)),
    ((1, 1, 1, -2), "XXXY", 1, Slice(3, 1), 1, Fraction(7, 16)),
])
def test_classify_examples(symbol, subset, page, slc, parity, power):
    got = classify(symbol)
    assert got == (subset, page, slc, parity, power)


def test_page_sizes_and_partition():
    seen = {}
    for page in range(8):
        symbols = levels.enumerate_page(page)
        assert len(symbols) == levels.PAGE_SIZES[page]
        assert len(set(symbols)) == len(symbols)
        for s in symbols:
            assert s not in seen
            seen[s] = page
            assert classify(s).page == page
    assert len(seen) == 625


def test_page_parity_rule():
    for page in range(8):
        for pattern in levels.SUBSET_PAIRS[page]:
            assert pattern.count("X") % 2 == page % 2


def test_slice_powers():
    assert slice_power(Slice(4, 0)) == Fraction(1, 4)
    assert slice_power(Slice(2, 2)) == Fraction(11, 24)
    assert slice_power(Slice(1, 3)) == Fraction(9, 16)
    assert slice_power(Slice(3, 1)) == Fraction(17, 48)
    assert slice_power(Slice(0, 4)) == Fraction(2, 3)
    with pytest.raises(ValueError):
        slice_power(Slice(5, -1))


def test_per_slice_mean_power_by_enumeration():
    # mean symbol power over each slice equals the slice power exactly
    sums: dict[Slice, list[Fraction]] = {}
    for symbol in levels.enumerate_constellation():
        c = classify(symbol)
        sums.setdefault(c.slice, []).append(c.power)
    assert set(sums) == set(levels.SLICES)
    for slc, powers in sums.items():
        assert sum(powers) / len(powers) == slice_power(slc)
        assert all(p <= 1 for p in powers)


def test_page_nap_examples():
    profiles = levels.PROFILES
    assert levels.page_nap(profiles["original-1000BASE-T"], 0) == Fraction(9, 16)
    assert levels.page_nap(profiles["proposed"], 0) == Fraction(59, 96)
    for name in profiles:
        assert levels.page_nap(profiles[name], 2) == Fraction(11, 24)
    with pytest.raises(KeyError):
        levels.page_nap(levels.DesignProfile("partial", {0: profiles["draft"].pages[0]}), 3)


def test_nap_statistics_reference_values():
    stats = levels.nap_statistics(levels.PROFILES["original-1000BASE-T"])
    assert stats.mu0 == Fraction(31, 64)
    assert abs(stats.sigma - 0.0319) < 5e-4
    assert abs(stats.ratio - 0.0658) < 5e-4


def test_nap_statistics_uniform_profile_has_zero_sigma():
    pages = {p: (levels.SliceOccupancy(Slice(2, 2), 72, Fraction(1)),) for p in range(8)}
    flat = levels.DesignProfile("flat", pages)
    stats = levels.nap_statistics(flat)
    assert stats.sigma == 0.0
    assert stats.mu0 == Fraction(11, 24)


def test_native_distribution():
    dist = levels.native_distribution()
    assert dist[0] == Fraction(97, 625)
    assert dist[2] == Fraction(72, 625)
    assert dist[1] == Fraction(78, 625)
    assert sum(dist.values()) == 1


def test_transport_dictionary():
    pages = levels.transport_dictionary()
    assert all(p.data == 64 and p.data_noted == 8 and p.data_all == 72
               for p in pages.values())
    assert pages[0].ctrl is None and pages[0].free is None
    assert pages[1].free == 6 and pages[2].free == 0
    assert sum(p.point_count for p in pages.values()) == 625


def test_inventory_emission():
    rows = levels.inventory_rows()
    assert len(rows) == 16
    assert sum(r["count"] for r in rows) == 625
    csv_text = levels.inventory_csv()
    assert csv_text.splitlines()[0] == "page,subset,slice,count,power"
    parsed = json.loads(levels.inventory_json())
    assert parsed[0]["subset"] == "XXXX"
