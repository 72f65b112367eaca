import math
import random

import pytest

from pam5kit import stellar as st


def test_gain_examples():
    assert st.gain(4, 2) == pytest.approx(6.0206, abs=1e-4)
    assert st.gain(4, math.sqrt(2)) == pytest.approx(3.7893, abs=1e-4)
    assert st.gain(2 * math.pi, math.pi / 4) == pytest.approx(1.1598, abs=1e-4)


def test_gain_monotone_in_distance():
    rng = random.Random(1)
    for _ in range(200):
        d = rng.uniform(1.0, 10.0)
        a = rng.uniform(1e-6, d * 0.999)
        b = rng.uniform(1e-6, d * 0.999)
        lo, hi = sorted((a, b))
        if lo != hi:
            assert st.gain(d, lo) < st.gain(d, hi)


def test_gain_domain_errors():
    with pytest.raises(ValueError):
        st.gain(4, 4)
    with pytest.raises(ValueError):
        st.gain(4, 0)


def test_orbit_closure():
    counts = {}
    for x in (-2, -1, 0, 1, 2):
        for y in (-2, -1, 0, 1, 2):
            counts[st.orbit_of((x, y))] = counts.get(st.orbit_of((x, y)), 0) + 1
    assert sorted(counts) == [0, 1, 2, 3, 4, 5]
    assert sum(counts.values()) == 25
    radii = st.orbit_radii()
    assert radii[0] == 0 and radii[5] == pytest.approx(2 * math.sqrt(2))


def test_plane_analysis_values():
    a = st.analyze_2d_pam5()
    assert a.entry("D", "geometric").db == pytest.approx(2.4988, abs=0.0005)
    assert a.entry("P0", "geometric").db == pytest.approx(3.7893, abs=0.0005)
    assert a.entry("YY-0", "geometric").db == pytest.approx(6.0206, abs=0.0005)
    assert a.entry("YX", "radial").db == pytest.approx(2.141, abs=0.001)
    assert a.entry("P1", "angular").db == pytest.approx(0.665, abs=0.001)
    assert a.entry("YY-0", "angular").db == pytest.approx(1.1598, abs=0.0005)
    assert a.entry("P0", "angular").db is None      # shared angles
    assert a.entry("XX", "radial").db is None       # single orbit
    assert a.scheme_sums["12/24+0"] == pytest.approx(6.596, abs=0.05)


def test_phi4():
    assert st.PHI4 == pytest.approx(0.1476 * math.pi, abs=2e-4)


@pytest.mark.parametrize("p,rho,g_page", [
    (3, 0.577, 2.958),
    (4, 0.630, 2.397),
    (8, 0.758, 1.390),
])
def test_ideal_stellar_rows(p, rho, g_page):
    row = st.ideal_stellar_table(p)
    assert row.rho == pytest.approx(rho, abs=0.01)
    assert row.g_delta_page == pytest.approx(g_page, abs=0.05)


def test_ideal_stellar_equalizes_distances():
    for p in range(2, 9):
        row = st.ideal_stellar_table(p)
        dphi = row.dphi
        cross = math.sqrt(1 + row.rho**2 - 2 * row.rho * math.cos(dphi))
        low = 2 * row.rho * math.sin(dphi)
        assert cross == pytest.approx(low, abs=1e-12)


def test_ideal_stellar_rejects_degenerate():
    with pytest.raises(ValueError):
        st.ideal_stellar_table(1)


def test_stellar_mean_power():
    assert st.stellar_mean_power(0.630) == pytest.approx(0.349, abs=0.001)
    assert st.stellar_mean_power(1.0) == 0.5
    assert st.stellar_mean_power(1e-9) == pytest.approx(0.25, abs=1e-6)


def test_spec_rooms_and_pages():
    spec = st.StellarSpec(5, 0.6986)
    rooms = spec.rooms()
    assert len(rooms) == 40
    assert spec.n_views == 20
    p0, p1 = spec.page_rooms(0), spec.page_rooms(1)
    assert len(p0) == len(p1) == 20
    angles0 = sorted(r.index for r in p0)
    assert angles0 == list(range(20))          # one room per angle per page
    for room_a, room_b in zip(sorted(p0, key=lambda r: r.index),
                              sorted(p1, key=lambda r: r.index)):
        assert room_a.orbit != room_b.orbit    # pages oppose orbits per view


def test_half_point_layout_switch():
    # both page layouts keep pages angle-disjoint and orbit-opposable
    for layout in ("alternating", "orbit"):
        spec = st.StellarSpec(4.5, 0.654, page_layout=layout)
        assert spec.n_views == 18
        for page in (0, 1):
            rooms = spec.page_rooms(page)
            assert len(rooms) == 18
            assert len({r.index for r in rooms}) == len(rooms)
    orbit_spec = st.StellarSpec(4.5, 0.654, page_layout="orbit")
    assert {r.orbit for r in orbit_spec.page_rooms(0)} == {"R"}
    with pytest.raises(ValueError):
        st.StellarSpec(4.5, 0.654, page_layout="diagonal")


def test_coupled_power_constancy():
    spec = st.StellarSpec(4, 0.630)
    rooms = {(r.orbit, r.index): r for r in spec.rooms()}
    total = 1 + 0.630**2
    for i in range(16):
        for j in range(16):
            p = st.coupled_power(rooms["R", i], rooms["r", j])
            assert p == pytest.approx(total, abs=1e-12)
    with pytest.raises(ValueError):
        st.coupled_power(rooms["R", 0], rooms["R", 1])


def test_grid_arrange_bounds_and_order():
    for p, rho in ((4, 0.630), (5, 0.6986), (6, 0.7071)):
        spec = st.StellarSpec(p, rho)
        outline = st.grid_arrange(spec.rooms(), 17)
        assert outline.max_radial_error_steps < 0.4
        assert len(outline.rooms) == len(spec.rooms())


def test_grid_arrange_exact_vertex():
    rooms = [st.Room("R", 0, 0.5, 0.25)]        # lands exactly on (8, 4)
    outline = st.grid_arrange(rooms, 17)
    assert outline.max_radial_error == 0
    assert outline.rooms[0].vertices == ((8, 4),)


def test_grid_arrange_two_vertex_midpoint():
    rooms = [st.Room("R", 0, 9 / 16, 0.25)]     # half-lattice point (9, 4)
    outline = st.grid_arrange(rooms, 17)
    assert len(outline.rooms[0].vertices) == 2


def test_grid_arrange_collision():
    rooms = [st.Room("R", 0, 0.5, 0.25), st.Room("R", 1, 0.5 + 1e-4, 0.25)]
    with pytest.raises(ValueError, match="ambiguous outline"):
        st.grid_arrange(rooms, 17)


def test_jump_gain_limits():
    single, double = st.jump_gain_limits()
    assert single == pytest.approx(2.498775, abs=1e-4)
    assert double == pytest.approx(3.789347, abs=1e-4)
    assert double - single == pytest.approx(1.29, abs=0.01)
    conv_s, conv_d = st.jump_gain_limit_convergence(1 << 14)
    assert conv_s == pytest.approx(single, abs=1e-4)
    assert conv_d == pytest.approx(double, abs=1e-4)


def test_dead_zone_no_restriction():
    assert st.dead_zone_min_jump(20, 0) == 0.0


def test_cic_matrix_16():
    printed = [
        [None, 0.6, 1.2, 1.8, 2.5],
        [0.6, 0.8, 1.3, 1.9, 2.6],
        [1.2, 1.3, 1.7, 2.2, 2.8],
        [1.8, 1.9, 2.2, 2.7, 3.3],
        [2.5, 2.6, 2.8, 3.3, 3.8],
    ]
    matrix = st.cic_gain_matrix(16)
    for row, ref_row in zip(matrix, printed):
        for got, ref in zip(row, ref_row):
            if ref is None:
                assert got is None
            else:
                assert got == pytest.approx(ref, abs=0.05)


@pytest.mark.parametrize("moves,order,alias", [
    ((0, 0), 0, "D-D"),
    ((1, 2), 1, "I-D"),
    ((2, 1), 1, "D-I"),
    ((3, 5), 2, "I-I"),
])
def test_invariance_order(moves, order, alias):
    assert st.invariance_order(*moves) == (order, alias)


def test_effective_size_ladders():
    assert st.size_ladder(10, 2) == [100, 90, 81, 72, 64]
    assert st.size_ladder(9, 1) == [81, 72, 64]
    assert st.size_ladder(12, 4) == [144, 132, 121, 110, 100, 90, 81, 72, 64]


def test_effective_sizes_options():
    got = st.effective_sizes(9, "gj")
    assert got["per_rp"] == 72 and got["dictionary"] == 576
    got = st.effective_sizes(9, "gj+")
    assert got["per_rp"] == 64 and not got["below_floor"]
    got = st.effective_sizes(8, "gj+")
    assert got["per_rp"] == 49 and got["below_floor"]
    static = st.effective_sizes(8, "static")
    assert static["per_rp"] == 64


def test_effective_sizes_diagonal():
    assert st.effective_sizes(10, "static", diagonal_excluded=True)["per_rp"] == 81
    assert st.effective_sizes(10, "gj", diagonal_excluded=True)["per_rp"] == 72
    assert st.effective_sizes(10, "gj+", diagonal_excluded=True)["per_rp"] == 64


def test_unit_ball_forms():
    assert st.unit_ball_surface(4) == pytest.approx(2 * math.pi**2, abs=1e-9)
    assert st.unit_ball_volume(5) == pytest.approx(8 * math.pi**2 / 15, abs=1e-9)
    assert st.unit_ball_volume(1) == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("n,m,value,n_s,n_o,r_sq", [
    (3, 4, 4.39, 24, 8, 11),
    (3, 3, 4.43, 8, 19, 12),
])
def test_grid_volume_small(n, m, value, n_s, n_o, r_sq):
    est = st.grid_volume(n, m)
    assert est.value == pytest.approx(value, abs=0.05)
    assert (est.n_surface, est.n_interior, est.r_test_sq) == (n_s, n_o, r_sq)


def test_grid_volume_dp_equals_bruteforce():
    for n in (1, 2, 3):
        for m in range(2, 10):
            dp = st.grid_volume(n, m)
            bf = st.grid_volume_bruteforce(n, m)
            assert (dp.n_surface, dp.n_interior) == (bf.n_surface, bf.n_interior)


def test_grid_volume_one_dimension_is_two():
    for m in (2, 3, 9, 17, 32):
        assert st.grid_volume(1, m).value == pytest.approx(2.0, abs=1e-12)


def test_grid_surface_values():
    assert st.grid_surface(4, 17).value == pytest.approx(19.80, abs=0.05)
    assert st.grid_surface(7, 17).value == pytest.approx(33.00, abs=0.05)
    assert st.grid_volume(3, 17).value == pytest.approx(4.20, abs=0.05)
    assert st.grid_volume(5, 17).value == pytest.approx(5.28, abs=0.05)


def test_grid_volume_converges_to_unit_ball():
    for n in range(1, 7):
        approx = st.grid_volume(n, 64).value
        exact = st.unit_ball_volume(n)
        assert abs(approx - exact) / exact < 0.02


def test_limit_scan_peaks():
    scan = st.limit_scan(17)
    assert (scan.n_tx, scan.n_rx) == (7, 5)
    assert scan.surface_percent[scan.n_tx] == 100.0
    assert scan.volume_percent[scan.n_rx] == 100.0
    assert st.limit_scan(3, 9).n_rx == 4
