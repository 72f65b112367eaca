from fractions import Fraction

import pytest

from pam5kit import balance as bal
from pam5kit.levels import PAGE_SIZES, classify


@pytest.fixture(scope="module")
def catalog():
    return bal.build_catalog()


def test_catalog_counts(catalog):
    assert len(catalog.symmetries) == 64
    for group, members in bal.GROUP_MEMBERS.items():
        group_syms = catalog.group(group)
        assert len(group_syms) == members
        assert all(s.size == bal.GROUP_SIZES[group] for s in group_syms)


def test_catalog_partition(catalog):
    seen = set()
    for sym in catalog.symmetries:
        pts = set(sym.points)
        assert len(pts) == sym.size
        assert not (seen & pts)
        seen |= pts
    assert len(seen) == 625


def test_catalog_reproduces_page_sizes(catalog):
    # all repeat counts at 1 recreate the original per-page totals
    sums = {g: bal.GROUP_MEMBERS[g] for g in bal.GROUPS}
    h_y, h_x, pages = bal.hit_totals(sums)
    assert (h_y, h_x) == (125, 125)
    assert pages == [PAGE_SIZES[p] for p in range(8)]


def test_first_sign_pair(catalog):
    assert catalog.group("s2")[0].points == ((-1, -1, -1, -1), (1, 1, 1, 1))


def test_s3_covers_yyyy(catalog):
    pts = set()
    for sym in catalog.group("s3"):
        pts |= set(sym.points)
    assert len(pts) == 81
    assert all(classify(p).subset == "YYYY" for p in pts)


def test_page_uniformity_classes(catalog):
    for sym in catalog.symmetries:
        pages = [0] * 8
        for p in sym.points:
            pages[classify(p).page] += 1
        if sym.group in ("s2", "s3"):
            assert pages[0] == sym.size and sum(pages) == sym.size
        elif sym.group == "s24_even":
            assert pages[2] == pages[4] == pages[6] == 8
            assert pages[0] == pages[1] == 0
        else:
            odd = [pages[p] for p in (1, 3, 5, 7)]
            assert len(set(odd)) == 1 and sum(odd) == sym.size


def test_effect_rows_exact(catalog):
    for sym in catalog.symmetries:
        assert bal.effect_of(sym) == bal.EXPECTED_EFFECTS[sym.group]


def test_per_bin_uniformity(catalog):
    # effect_of itself raises on non-uniform bins; double-check one group
    sym = catalog.group("s24_odd")[0]
    per_pair: dict[tuple[int, int], int] = {}
    for point in sym.points:
        for pair, level in enumerate(point):
            per_pair[pair, level] = per_pair.get((pair, level), 0) + 1
    for pair in range(4):
        ys = [per_pair.get((pair, v), 0) for v in (-2, 0, 2)]
        xs = [per_pair.get((pair, v), 0) for v in (-1, 1)]
        assert len(set(ys)) == 1 and len(set(xs)) == 1


def test_solve_576():
    sol = bal.solve(576)
    assert sol.h_page == 72
    assert sol.unbalance <= 2
    assert (sol.h_y, sol.h_x) == (116, 114)
    assert 3 * sol.h_y + 2 * sol.h_x == 576
    assert float(sol.p_y) == pytest.approx(0.2014, abs=5e-5)
    assert float(sol.p_x) == pytest.approx(0.1979, abs=5e-5)
    assert not bal.verify(sol).violations


def test_solve_640_exact_balance():
    sol = bal.solve(640)
    assert (sol.h_y, sol.h_x) == (128, 128)
    assert sol.p_y == sol.p_x == Fraction(1, 5)
    assert not bal.verify(sol).violations


@pytest.mark.parametrize("hz,expected", [
    (1152, (230, 231)), (2304, (460, 462)), (4608, (922, 921)),
    (1024, (204, 206)), (2048, (410, 409)), (4096, (820, 818)),
    (8192, (1638, 1639)),
])
def test_solve_table_rows(hz, expected):
    sol = bal.solve(hz)
    assert (sol.h_y, sol.h_x) == expected
    assert sol.unbalance <= abs(expected[0] - expected[1])
    assert not bal.verify(sol).violations


def _brute_force_best_unbalance(hz: int, ne: int = 72):
    """Independent exhaustive search over all seven group sums."""
    hp = hz // 8
    assert hp % 8 == 0 and hp % 2 == 0
    g5 = hp // 8
    s_odd = hp // 2
    best = None
    for g1 in range(hp // 2 + 1):
        rest = hp - 2 * g1
        if rest < 0 or rest % 3:
            continue
        g2 = rest // 3
        if 2 * min(g1, 8) + 3 * min(g2, 27) < ne:
            continue
        for g7 in range(s_odd // 3 + 1):
            t = s_odd - 3 * g7
            for g6 in range(t // 3 + 1):
                for g4 in range((t - 3 * g6) // 2 + 1):
                    g3 = t - 2 * g4 - 3 * g6
                    floor = (8 * min(g3, 6) + 16 * min(g4, 9)
                             + 24 * min(g6, 1) + 24 * min(g7, 4))
                    if floor < 4 * ne:
                        continue
                    sums = {"s2": g1, "s3": g2, "s8": g3, "s16": g4,
                            "s24_even": g5, "s24_ten": g6, "s24_odd": g7}
                    h_y, h_x, pages = bal.hit_totals(sums)
                    assert len(set(pages)) == 1
                    unb = abs(h_y - h_x)
                    if best is None or unb < best:
                        best = unb
    return best


@pytest.mark.parametrize("hz", [576, 640])
def test_solver_optimality_against_bruteforce(hz):
    sol = bal.solve(hz)
    assert sol.unbalance == _brute_force_best_unbalance(hz)


def test_solve_floors_respected():
    sol = bal.solve(576)
    assert sol.effective_p0 >= 72
    assert sol.effective_even_page >= 72
    assert sol.effective_odd_page >= 72


def test_member_split_round_robin():
    sol = bal.solve(576)
    for group, split in sol.member_split.items():
        assert sum(split) == sol.group_sums[group]
        assert max(split) - min(split) <= 1


@pytest.mark.parametrize("hz,message", [
    (625, "mod 8"),
    (104, "multiplexing floor"),
    (584, "multiple of 8"),
])
def test_solve_infeasible(hz, message):
    with pytest.raises(bal.Infeasible, match=message):
        bal.solve(hz)


def test_verify_flags_original_constellation():
    sums = {g: bal.GROUP_MEMBERS[g] for g in bal.GROUPS}
    sol = bal.solution_from_sums(625, sums)
    report = bal.verify(sol)
    assert not report.pages_uniform
    assert any("not uniform" in v for v in report.violations)


def test_verify_zero_solution_below_floor():
    sums = {g: 0 for g in bal.GROUPS}
    sol = bal.solution_from_sums(0, sums)
    report = bal.verify(sol)
    assert report.pages_uniform
    assert not report.floors_ok


@pytest.mark.parametrize("k,base,expected", [
    (3, 5, Fraction(3, 8)),
    (4, 5, Fraction(4, 16)),
    (5, 5, Fraction(3, 32)),
    (6, 5, Fraction(4, 64)),
    (4, 9, Fraction(7, 16)),
    (5, 9, Fraction(5, 32)),
    (6, 9, Fraction(8, 64)),
    (7, 9, Fraction(7, 128)),
])
def test_subscrambler_errors(k, base, expected):
    assert bal.subscrambler_error(k, base) == expected


def test_subscrambler_bounds_rows():
    bounds = {(3, 5): 0.40, (4, 5): 0.30, (5, 5): 0.10, (6, 5): 0.07,
              (4, 9): 0.50, (5, 9): 0.20, (6, 9): 0.15, (7, 9): 0.06}
    for (k, base), bound in bounds.items():
        assert float(bal.subscrambler_error(k, base)) < bound


def test_subscrambler_power_of_two_exact():
    for k in range(2, 10):
        for j in range(1, k + 1):
            assert bal.subscrambler_error(k, 1 << j) == 0


def test_subscrambler_anchor_exact():
    assert bal.subscrambler_error(4, 9, kind="anchor") == 0


def test_subscrambler_monotone_in_bits():
    for base in (3, 5, 9):
        errs = [bal.subscrambler_error(k, base) for k in range(4, 16)]
        assert all(a >= b for a, b in zip(errs, errs[1:]))


def test_subscrambler_too_few_bits():
    with pytest.raises(ValueError):
        bal.subscrambler_error(2, 9)
