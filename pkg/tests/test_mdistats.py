import math
from fractions import Fraction

import pytest

from pam5kit import mdistats as md
from pam5kit.stellar import ArrangedOutline, ArrangedRoom, Room, StellarSpec, grid_arrange

RHO5 = math.sqrt(4 * 0.372 - 1)


def test_filter_distribution():
    dist = md.filter_distribution()
    probs = {out: p for out, p, _ in dist}
    assert probs[8] == Fraction(1, 25)
    assert probs[5] == Fraction(2, 25)
    assert probs[0] == Fraction(1, 25)
    assert sum(probs.values()) == 1
    assert all(probs[o] == probs[-o] for o in range(9))
    powers = {out: pw for out, _, pw in dist}
    assert powers[8] == 1 and powers[4] == Fraction(1, 4)


def test_transit_matrix():
    matrix = md.transit_matrix()
    assert not matrix[-8, 8].possible
    assert matrix[0, 1].hop_power == Fraction(1, 256)
    row_counts = {}
    for (o1, _), t in matrix.items():
        row_counts[o1] = row_counts.get(o1, 0) + (1 if t.possible else 0)
    assert set(row_counts.values()) == {5, 10}
    assert sum(t.hits for t in matrix.values()) == 125
    max_hop = max(abs(t.target - t.source) for t in matrix.values() if t.possible)
    assert max_hop == 12
    assert Fraction(12 * 12, 256) == Fraction(9, 16)   # 0.5625 peak change


def test_reference_power_exact():
    ref = md.power_stats(md.reference_process())
    assert ref.power.mean == pytest.approx(0.3125, abs=1e-12)
    assert 0.1505 <= ref.power.deviation <= 0.1515
    assert ref.power.pk_minus == 0.0
    assert ref.power.pk_plus == 1.0
    assert ref.change.mean == pytest.approx(0.109375, abs=1e-12)
    assert ref.change.pk_plus == pytest.approx(0.5625, abs=1e-12)
    assert ref.change.pk_minus == 0.0
    assert ref.change.deviation == pytest.approx(0.0636, abs=5e-4)
    assert ref.wobble is None


def test_reference_variance_factorizes():
    # four independent wires: total variance is the per-wire variance / 4
    per_wire_p: dict[Fraction, Fraction] = {}
    for prev in md.PAM5:
        for cur in md.PAM5:
            v = Fraction(md.filter_output(cur, prev) ** 2, 64)
            per_wire_p[v] = per_wire_p.get(v, 0) + Fraction(1, 25)
    mean = sum(v * p for v, p in per_wire_p.items())
    var = sum((v - mean) ** 2 * p for v, p in per_wire_p.items())
    ref = md.power_stats(md.reference_process())
    assert ref.power.deviation**2 == pytest.approx(float(var) / 4, abs=1e-12)


def test_ideal_stellar_static():
    spec = StellarSpec(4, 0.630)
    r = md.dynamic_stats(spec, md.builtin_rule("static", 16))
    assert r.power.mean == pytest.approx(0.349, abs=0.001)
    assert r.power.deviation == pytest.approx(0.0, abs=1e-12)
    assert r.wobble is not None and r.wobble.pk_plus == pytest.approx(0.0, abs=1e-12)
    assert r.change.mean == pytest.approx(r.power.mean / 2, abs=1e-9)
    assert r.change.pk_plus == pytest.approx(0.349, abs=0.001)
    assert r.change.pk_minus == 0.0
    assert r.jump_gain_db == 0.0


def test_change_mean_is_half_power_for_all_static_ideals():
    for p, mu in ((4, 0.349), (4.5, 0.357), (5, 0.372), (5.5, 0.369), (6, 0.375)):
        spec = StellarSpec(p, math.sqrt(4 * mu - 1))
        r = md.dynamic_stats(spec, md.builtin_rule("static", spec.n_views))
        assert r.power.mean == pytest.approx(mu, abs=1e-9)
        assert r.change.mean == pytest.approx(mu / 2, abs=1e-9)


def test_five_point_rule_ladder():
    spec = StellarSpec(5, RHO5)
    static = md.dynamic_stats(spec, md.builtin_rule("static", 20))
    assert static.change.mean == pytest.approx(0.186, abs=0.001)
    assert static.change.pk_minus == 0.0
    assert static.change.pk_plus == pytest.approx(0.372, abs=0.001)

    gj = md.dynamic_stats(spec, md.builtin_rule("gj", 20))
    assert gj.change.mean == pytest.approx(0.191, abs=0.001)
    assert gj.change.pk_minus == pytest.approx(0.003, abs=0.001)
    assert gj.jump_gain_db == pytest.approx(0.446, abs=0.001)

    gjp = md.dynamic_stats(spec, md.builtin_rule("gj+", 20))
    assert gjp.change.mean == pytest.approx(0.196, abs=0.001)
    assert gjp.change.pk_minus == pytest.approx(0.009, abs=0.001)
    assert gjp.change.pk_minus > 0
    assert gjp.jump_gain_db == pytest.approx(0.637, abs=0.001)

    g2jp = md.dynamic_stats(spec, md.builtin_rule("g2j+", 20))
    assert g2jp.change.pk_minus == pytest.approx(0.036, abs=0.001)
    assert g2jp.jump_gain_db == pytest.approx(1.324, abs=0.001)


def test_excluded_transits_raise_floor():
    spec = StellarSpec(5, RHO5)
    for rule in ("gj+", "g2j", "g2j+"):
        r = md.dynamic_stats(spec, md.builtin_rule(rule, 20))
        assert r.change.pk_minus > 0


def test_stationarity_and_ergodicity():
    spec = StellarSpec(5, RHO5)
    for rule in ("static", "gj", "gj+", "g2j", "g2j+"):
        assert md.stationary_check(spec, md.builtin_rule(rule, 20)) < 1e-12


def test_disconnected_rule():
    spec = StellarSpec(5, RHO5)
    dead = md.JumpRule("none", tuple(range(20)), ())
    with pytest.raises(ValueError, match="disconnected"):
        md.dynamic_stats(spec, dead)


def test_grid_outline_wobble():
    spec = StellarSpec(5, RHO5)
    outline = grid_arrange(spec.rooms(), 17)
    r = md.dynamic_stats(spec, md.builtin_rule("static", 20), outline)
    assert r.wobble is not None
    assert r.wobble.pk_plus > 0
    assert r.power.deviation > 0
    block = md.wobble_stats(outline, spec)
    assert block.pk_plus == r.wobble.pk_plus


def test_wobble_single_displaced_room():
    spec = StellarSpec(5, RHO5)
    eps = 0.01
    scale = 16.0
    arranged = []
    for room in spec.rooms():
        f = 1 + eps if (room.orbit == "R" and room.index == 0) else 1.0
        arranged.append(ArrangedRoom(room, (), room.x * f * scale,
                                     room.y * f * scale, 0.0))
    outline = ArrangedOutline(17, tuple(arranged), 0.0)
    r = md.dynamic_stats(spec, md.builtin_rule("static", 20), outline)
    expected = (2 * eps + eps * eps) / 4.0
    assert r.wobble.pk_plus == pytest.approx(expected, abs=1e-12)


def test_symmetric_displacement_keeps_mean_power():
    spec = StellarSpec(5, RHO5)
    eps = 0.01
    scale = 16.0
    arranged = []
    for room in spec.rooms():
        f = 1.0
        if room.orbit == "R" and room.index == 0:
            f = 1 + eps
        elif room.orbit == "R" and room.index == 1:
            f = 1 - eps
        arranged.append(ArrangedRoom(room, (), room.x * f * scale,
                                     room.y * f * scale, 0.0))
    outline = ArrangedOutline(17, tuple(arranged), 0.0)
    r = md.dynamic_stats(spec, md.builtin_rule("static", 20), outline)
    ideal = md.dynamic_stats(spec, md.builtin_rule("static", 20))
    assert r.wobble.mean > 0
    # mean power unchanged to first order in eps
    assert abs(r.power.mean - ideal.power.mean) < eps**2


def test_fixed_sequence_constant_point():
    seq = [(2, -2, 2, -2)] * 50
    r = md.power_stats(md.ProcessSpec(kind="fixed", sequence=seq))
    assert r.change.mean == 0.0 and r.change.pk_plus == 0.0
    assert r.power.deviation == pytest.approx(0.0, abs=1e-9)


def test_monte_carlo_agrees_with_exact():
    spec = StellarSpec(5, RHO5)
    rule = md.builtin_rule("gj+", 20)
    mc = md.monte_carlo_power_stats(spec, rule, samples=200_000, seed=7)
    exact = md.dynamic_stats(spec, rule)
    assert mc.power.mean == pytest.approx(exact.power.mean, abs=1e-9)
    assert mc.change.mean == pytest.approx(exact.change.mean, abs=2e-3)
    again = md.monte_carlo_power_stats(spec, rule, samples=200_000, seed=7)
    assert again.change.mean == mc.change.mean      # counter-based, reproducible
    assert mc.mc_seed == 7
    assert mc.mc_std_error is not None and mc.mc_std_error >= 0


def test_monte_carlo_requires_seed():
    spec = StellarSpec(5, RHO5)
    with pytest.raises(ValueError, match="seed"):
        md.monte_carlo_power_stats(spec, md.builtin_rule("static", 20),
                                   samples=10, seed=None)


def test_process_spec_validation():
    with pytest.raises(ValueError):
        md.power_stats(md.ProcessSpec(kind="constellation"))
    with pytest.raises(ValueError):
        md.power_stats(md.ProcessSpec(kind="fixed", sequence=[]))
    with pytest.raises(ValueError):
        md.power_stats(md.ProcessSpec(kind="imaginary"))
