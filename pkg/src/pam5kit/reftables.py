"""Embedded reference values and reproduction reports.

Each report table recomputes a reference figure set through the library
and compares cell by cell against the values embedded here.  Cells carry a
legibility flag (badly rendered reference cells are reported but excluded
from strict comparisons) and known discrepancies are marked `flagged`
rather than silently corrected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from . import balance, levels, mdistats, muxplan, stellar

Value = Union[int, float, str, Fraction]


@dataclass(frozen=True)
class ReportRow:
    table: str
    cell: str
    computed: Value
    reference: Optional[Value]
    tolerance: float
    status: str          # match | mismatch | flagged | illegible | derived
    note: str = ""


def _compare(table: str, cell: str, computed: Value, reference: Optional[Value],
             tol: float = 0.0, mode: str = "eq", legible: bool = True,
             flagged: bool = False, note: str = "") -> ReportRow:
    if reference is None:
        status = "derived"
    elif not legible:
        status = "illegible"
    else:
        if mode == "eq":
            ok = (
                abs(float(computed) - float(reference)) <= tol
                if isinstance(reference, (int, float, Fraction))
                else computed == reference
            )
        elif mode == "str":
            ok = str(computed) == str(reference)
        elif mode == "lt":
            ok = float(computed) < float(reference)
        else:
            raise ValueError(mode)
        if ok:
            status = "match"
        elif flagged:
            status = "flagged"
        else:
            status = "mismatch"
    return ReportRow(table, cell, computed, reference, tol, status, note)


# ---------------------------------------------------------------------------
# Table generators
# ---------------------------------------------------------------------------


def table_mux_variants() -> list[ReportRow]:
    """Multiplexing variants: GCD, E_max, minimum echo durations."""
    reference = {
        # n_noted: (gcd, e_max, {E: n_e})
        1: (1, 64, {2: 45, 4: 90, 8: 135, 16: 179, 32: 224, 64: 267}),
        2: (2, 32, {2: 23, 4: 46, 8: 68, 16: 91, 32: 113}),
        4: (4, 16, {2: 12, 4: 23, 8: 35, 16: 46}),
        6: (2, 16, {2: 8, 4: 16, 8: 24, 16: 31}),
        8: (8, 8, {2: 6, 4: 12, 8: 18}),
        10: (2, 8, {2: 5, 4: 10, 8: 15}),
        12: (4, 8, {2: 5, 4: 9, 8: 13}),
        14: (2, 8, {2: 4, 4: 8, 8: 11}),
    }
    rows = []
    for n_noted, (gcd_ref, emax_ref, table_ref) in reference.items():
        v = muxplan.variant(64, n_noted)
        prefix = f"64+{n_noted}"
        rows.append(_compare("mux-variants", f"{prefix}.gcd", v.gcd, gcd_ref))
        rows.append(_compare("mux-variants", f"{prefix}.emax", v.e_max, emax_ref))
        for e, n_ref in table_ref.items():
            computed = v.echo_table[e]
            flagged = n_noted == 1 and e == 64
            rows.append(_compare(
                "mux-variants", f"{prefix}.ne[E={e}]", computed, n_ref,
                flagged=flagged,
                note="integer boundary test disagrees with the reference value"
                if flagged else "",
            ))
    return rows


def table_redundancy() -> list[ReportRow]:
    """Big-integer feasibility checks, byte-exact."""
    cases = [
        ("2*8^6", (2, 6), "524288", True),
        ("9^6", None, "531441", None),
        ("8*8^6", (8, 6), "2097152", False),
        ("4*8^6", (4, 6), "1048576", False),
        ("8*8^18", (8, 18), "144115188075855872", True),
        ("9^18", None, "150094635296999121", None),
        ("8*8^4", (8, 4), "32768", False),
        ("2*8^5", (2, 5), "65536", False),
        ("4*8^11", (4, 12), "274877906944", True),
    ]
    rows = []
    for cell, args, digits, feasible in cases:
        if args is None:
            exponent = int(cell.split("^")[1])
            computed = str(9**exponent)
            rows.append(_compare("redundancy", cell, computed, digits, mode="str"))
            continue
        factor, n = args
        check = muxplan.capacity_check(factor, n, 8, 9)
        rows.append(_compare("redundancy", cell, str(check.lhs), digits, mode="str"))
        rows.append(_compare("redundancy", cell + ".feasible", check.feasible, feasible))
    return rows


def table_nap_designs() -> list[ReportRow]:
    """Per-page NAP and the mean/deviation summary of the four designs."""
    reference_set = {
        "original-1000BASE-T": (0.56, 0.46, 0.48, 0.48, 0.03, 6.56),
        "draft": (0.57, 0.46, 0.49, 0.49, 0.04, 7.25),
        "extensive": (0.60, 0.46, 0.50, 0.50, 0.04, 8.60),
        "proposed": (0.61, 0.46, 0.51, 0.50, 0.05, 9.58),
    }
    rows = []
    for name, (p0, even, odd, mu, sigma, ratio_pct) in reference_set.items():
        stats = levels.nap_statistics(levels.PROFILES[name])
        rows.extend([
            _compare("nap-designs", f"{name}.P0", float(stats.per_page[0]), p0, tol=0.005),
            _compare("nap-designs", f"{name}.P246", float(stats.per_page[2]), even, tol=0.005),
            _compare("nap-designs", f"{name}.P1357", float(stats.per_page[1]), odd, tol=0.005),
            _compare("nap-designs", f"{name}.mu0", float(stats.mu0), mu, tol=0.005),
            _compare("nap-designs", f"{name}.sigma", stats.sigma, sigma, tol=0.005),
            _compare("nap-designs", f"{name}.ratio%", 100 * stats.ratio, ratio_pct, tol=0.1),
        ])
    return rows


def table_native_distribution() -> list[ReportRow]:
    dist = levels.native_distribution()
    rows = [
        _compare("native-distribution", "P0", float(dist[0]), 0.1552, tol=5e-5),
        _compare("native-distribution", "P2", float(dist[2]), 0.1152, tol=5e-5),
        _compare("native-distribution", "P1", float(dist[1]), 0.1248, tol=5e-5),
        _compare("native-distribution", "sum", float(sum(dist.values())), 1.0, tol=0.0),
    ]
    # disproportion of the per-design 1/8 page probability vs the native draw
    for cell, page, ref in (("P0", 0, -19.0), ("P246", 2, 8.5), ("P1357", 1, 0.2)):
        given_over_native = 100 * (0.125 / float(dist[page]) - 1)
        rows.append(_compare("native-distribution", f"disproportion.{cell}%",
                             given_over_native, ref, tol=0.5))
    return rows


def table_repeat_effects() -> list[ReportRow]:
    """Recomputed per-repeat effect rows against the embedded reference."""
    catalog = balance.build_catalog()
    rows = []
    for group in balance.GROUPS:
        expected = balance.EXPECTED_EFFECTS[group]
        members = catalog.group(group)
        recomputed = {balance.effect_of(s) for s in members}
        ok = recomputed == {expected}
        rows.append(_compare(
            "repeat-effects", f"{group}.row",
            "uniform" if ok else "divergent", "uniform",
        ))
        rows.append(_compare("repeat-effects", f"{group}.dh_y",
                             expected.dh_y, next(iter(recomputed)).dh_y))
        rows.append(_compare("repeat-effects", f"{group}.members",
                             len(members), balance.GROUP_MEMBERS[group]))
    return rows


def table_balance_variants() -> list[ReportRow]:
    reference_set = {
        576: (116, 114, 72),
        1152: (230, 231, 144),
        2304: (460, 462, 288),
        4608: (922, 921, 576),
        1024: (204, 206, 128),
        2048: (410, 409, 256),
        4096: (820, 818, 512),
        8192: (1638, 1639, 1024),
        640: (128, 128, 80),
    }
    rows = []
    for hz, (hy, hx, hp) in reference_set.items():
        sol = balance.solve(hz)
        rows.append(_compare("balance-variants", f"hz={hz}.hy", sol.h_y, hy))
        rows.append(_compare("balance-variants", f"hz={hz}.hx", sol.h_x, hx))
        rows.append(_compare("balance-variants", f"hz={hz}.hpage", sol.h_page, hp))
    return rows


def table_subscrambler_bounds() -> list[ReportRow]:
    bounds = {
        (3, 5): 40.0, (4, 5): 30.0, (5, 5): 10.0, (6, 5): 7.0,
        (4, 9): 50.0, (5, 9): 20.0, (6, 9): 15.0, (7, 9): 6.0,
    }
    rows = []
    for (k, base), bound in bounds.items():
        err = 100 * float(balance.subscrambler_error(k, base))
        rows.append(_compare(
            "subscrambler-bounds", f"base{base}.2^{k}", err, bound, mode="lt",
            note=f"error {err:.4g}% must stay under {bound}%",
        ))
    rows.append(_compare("subscrambler-bounds", "anchor.base9",
                         float(balance.subscrambler_error(4, 9, kind="anchor")), 0.0))
    return rows


def table_plane_gains() -> list[ReportRow]:
    analysis = stellar.analyze_2d_pam5()
    reference_set = [
        ("YY-0", "geometric", 6.0206), ("XX", "geometric", 6.0206),
        ("YX", "geometric", 6.0206), ("XY", "geometric", 6.0206),
        ("P0", "geometric", 3.789), ("P1", "geometric", 3.789),
        ("D", "geometric", 2.4988),
        ("YY-0", "angular", 1.1598), ("XX", "angular", 2.4988),
        ("YX", "angular", 1.387), ("P1", "angular", 0.665),
        ("YY-0", "radial", 1.374), ("YX", "radial", 2.141),
        ("P0", "radial", 0.948), ("P1", "radial", 2.141),
        ("D", "radial", 0.370),
    ]
    rows = [
        _compare("plane-gains", f"{sel}.{kind}",
                 analysis.entry(sel, kind).db, ref, tol=0.05)
        for sel, kind, ref in reference_set
    ]
    rows.append(_compare("plane-gains", "scheme.12/24+0",
                         analysis.scheme_sums["12/24+0"], 6.596, tol=0.05))
    for sel in ("P0", "D"):
        entry = analysis.entry(sel, "angular")
        rows.append(_compare("plane-gains", f"{sel}.angular",
                             "absent" if entry.db is None else entry.db, "absent"))
    return rows


def table_stellar_ideal() -> list[ReportRow]:
    reference_set = {
        2: (0.518, 0.732, 3.958, 1.159, 2.397, 0.396, 1.917),
        3: (0.577, 0.577, 2.958, 0.755, 2.062, 0.299, 1.405),
        4: (0.630, 0.482, 2.397, 0.560, 1.775, 0.246, 1.139),
        5: (0.673, 0.416, 2.024, 0.445, 1.551, 0.211, 0.965),
        6: (0.707, 0.366, 1.755, 0.369, 1.375, 0.185, 0.841),
        7: (0.735, 0.327, 1.551, 0.315, 1.234, 0.165, 0.746),
        8: (0.758, 0.296, 1.390, 0.275, 1.118, 0.149, 0.670),
    }
    rows = []
    for p, (rho, dp, gd, gphi, grho, dd, gdd) in reference_set.items():
        r = stellar.ideal_stellar_table(p)
        cell = f"p={p}"
        rows.extend([
            _compare("stellar-ideal", f"{cell}.rho", r.rho, rho, tol=0.01),
            _compare("stellar-ideal", f"{cell}.dmin_page", r.d_min_page, dp, tol=0.01),
            _compare("stellar-ideal", f"{cell}.g_delta", r.g_delta_page, gd, tol=0.05),
            _compare("stellar-ideal", f"{cell}.g_phi", r.g_phi_page, gphi, tol=0.05),
            _compare("stellar-ideal", f"{cell}.g_rho", r.g_rho_page, grho, tol=0.05),
            _compare("stellar-ideal", f"{cell}.dmin_dict", r.d_min_dictionary, dd, tol=0.01),
            _compare("stellar-ideal", f"{cell}.g_dict", r.g_delta_dictionary, gdd, tol=0.05),
        ])
    return rows


def table_cic_gains() -> list[ReportRow]:
    reference_set = [
        [None, 0.6, 1.2, 1.8, 2.5],
        [0.6, 0.8, 1.3, 1.9, 2.6],
        [1.2, 1.3, 1.7, 2.2, 2.8],
        [1.8, 1.9, 2.2, 2.7, 3.3],
        [2.5, 2.6, 2.8, 3.3, 3.8],
    ]
    matrix = stellar.cic_gain_matrix(16)
    rows = []
    for i, (name_i, _) in enumerate(stellar.CIC_CLASSES_16):
        for j, (name_j, _) in enumerate(stellar.CIC_CLASSES_16):
            ref, got = reference_set[i][j], matrix[i][j]
            cell = f"[{name_i}][{name_j}]"
            if ref is None:
                rows.append(_compare("cic-gains", cell,
                                     "absent" if got is None else got, "absent"))
            else:
                rows.append(_compare("cic-gains", cell, got, ref, tol=0.05))
    return rows


def table_jump_limits() -> list[ReportRow]:
    single, double = stellar.jump_gain_limits()
    conv_s, conv_d = stellar.jump_gain_limit_convergence(4096)
    return [
        _compare("jump-limits", "single", single, 2.498775, tol=1e-4),
        _compare("jump-limits", "double", double, 3.789347, tol=1e-4),
        _compare("jump-limits", "single.converged", conv_s, single, tol=1e-4),
        _compare("jump-limits", "double.converged", conv_d, double, tol=1e-4),
    ]


def table_effective_ladders() -> list[ReportRow]:
    reference_set = {
        8: [64],
        9: [81, 72, 64],
        10: [100, 90, 81, 72, 64],
        11: [121, 110, 100, 90, 81, 72, 64],
        12: [144, 132, 121, 110, 100, 90, 81, 72, 64],
    }
    rows = []
    for n, ladder_ref in reference_set.items():
        ladder = stellar.size_ladder(n, max_level=(len(ladder_ref) - 1) // 2)
        rows.append(_compare("effective-ladders", f"n={n}",
                             ",".join(map(str, ladder)),
                             ",".join(map(str, ladder_ref)), mode="str"))
    return rows


# Volume reference rows per level count, n = 1..9.
VOLUME_ROWS = {
    3: (2, 3.50, 4.43, 4.56, 4.06, 3.23, 2.34, 1.57, 0.99),
    4: (2, 3.20, 4.39, 5.33, 5.88, 5.97, 5.64, 5.00, 4.19),
    5: (2, 3.40, 4.69, 5.41, 5.49, 5.15, 4.60, 3.94, 3.21),
    6: (2, 3.08, 4.11, 4.90, 5.31, 5.31, 4.94, 4.31, 3.56),
    7: (2, 3.30, 4.36, 4.95, 5.16, 5.07, 4.70, 4.10, 3.35),
    8: (2, 3.04, 4.04, 4.83, 5.23, 5.20, 4.80, 4.15, 3.39),
    16: (2, 3.12, 4.20, 4.95, 5.27, 5.16, 4.72, 4.06, 3.30),
    17: (2, 3.15, 4.20, 4.96, 5.28, 5.16, 4.70, 4.04, 3.29),
    18: (2, 3.09, 4.13, 4.89, 5.24, 5.17, 4.73, 4.06, 3.30),
    32: (2, 3.11, 4.15, 4.92, 5.26, 5.17, 4.73, 4.06, 3.30),
}


def table_sphere_limits() -> list[ReportRow]:
    surface_pam17 = [2, 6.28, 12.62, 19.80, 26.47, 31.08, 33.00, 32.33, 29.57, 25.45]
    analytic_surface = [2, 6.28, 12.57, 19.74, 26.32, 31.01, 33.07, 32.47, 26.69, 25.50]
    analytic_volume = [2, 3.14, 4.19, 4.93, 5.26, 5.17, 4.72, 4.06, 3.30]
    rows = []
    scan = stellar.limit_scan(17)
    for n, ref in enumerate(surface_pam17, start=1):
        rows.append(_compare("sphere-limits", f"PAM17.surface.n={n}",
                             scan.surfaces[n], ref, tol=0.05))
    for levels, refs in VOLUME_ROWS.items():
        for n, ref in enumerate(refs, start=1):
            rows.append(_compare("sphere-limits", f"PAM{levels}.volume.n={n}",
                                 stellar.grid_volume(n, levels).value, ref, tol=0.05))
    for n, ref in enumerate(analytic_surface, start=1):
        legible = n != 9    # the rendered 26.69 is inconsistent with 32*pi^4/105
        rows.append(_compare("sphere-limits", f"analytic.surface.n={n}",
                             stellar.unit_ball_surface(n), ref, tol=0.05,
                             legible=legible))
    for n, ref in enumerate(analytic_volume, start=1):
        rows.append(_compare("sphere-limits", f"analytic.volume.n={n}",
                             stellar.unit_ball_volume(n), ref, tol=0.05))
    rows.append(_compare("sphere-limits", "PAM17.n_tx", scan.n_tx, 7))
    rows.append(_compare("sphere-limits", "PAM17.n_rx", scan.n_rx, 5))
    rows.append(_compare("sphere-limits", "PAM3.volume.peak-n",
                         stellar.limit_scan(3, 9).n_rx, 4))
    return rows


def table_filter_pam17() -> list[ReportRow]:
    reference_counts = {0: 1, 1: 2, 2: 2, 3: 1, 4: 2, 5: 2, 6: 1, 7: 1, 8: 1}
    rows = []
    for out, prob, power in mdistats.filter_distribution():
        ref = Fraction(reference_counts[abs(out)], 25)
        rows.append(_compare("filter-pam17", f"p(out={out})", prob, ref))
    total = sum(p for _, p, _ in mdistats.filter_distribution())
    rows.append(_compare("filter-pam17", "sum", total, Fraction(1)))
    matrix = mdistats.transit_matrix()
    rows.append(_compare("filter-pam17", "hop(+1).power",
                         float(matrix[0, 1].hop_power), 0.004, tol=0.0005))
    rows.append(_compare("filter-pam17", "hop(-8,+8).possible",
                         matrix[-8, 8].possible, False))
    max_hop = max(abs(t.target - t.source) for t in matrix.values() if t.possible)
    rows.append(_compare("filter-pam17", "max-occurring-hop", max_hop, 12))
    return rows


def table_mdi_reference() -> list[ReportRow]:
    ref = mdistats.power_stats(mdistats.reference_process())
    return [
        _compare("mdi-reference", "power.mu0", ref.power.mean, 0.313, tol=0.001),
        _compare("mdi-reference", "power.sigma", ref.power.deviation, 0.151, tol=0.001),
        _compare("mdi-reference", "power.pk-", ref.power.pk_minus, 0.0),
        _compare("mdi-reference", "power.pk+", ref.power.pk_plus, 1.0),
        _compare("mdi-reference", "change.mu0", ref.change.mean, 0.109, tol=0.001),
        _compare("mdi-reference", "change.sigma", ref.change.deviation, 0.064, tol=0.001),
        _compare("mdi-reference", "change.pk-", ref.change.pk_minus, 0.0),
        _compare("mdi-reference", "change.pk+", ref.change.pk_plus, 0.563, tol=0.001),
    ]


def table_mdi_ideal() -> list[ReportRow]:
    rows = []
    cases = {
        # points/quadrant: (rho, mu0, cmu0_static)
        4: (0.630, 0.349, 0.174),
        4.5: (math.sqrt(4 * 0.357 - 1), 0.357, 0.178),
        5: (math.sqrt(4 * 0.372 - 1), 0.372, 0.186),
        5.5: (math.sqrt(4 * 0.369 - 1), 0.369, 0.185),
        6: (math.sqrt(4 * 0.375 - 1), 0.375, 0.187),
    }
    for p, (rho, mu_ref, cmu_ref) in cases.items():
        spec = stellar.StellarSpec(p, rho)
        r = mdistats.dynamic_stats(spec, mdistats.builtin_rule("static", spec.n_views))
        cell = f"{p}pts"
        rows.extend([
            _compare("mdi-ideal", f"{cell}.mu0", r.power.mean, mu_ref, tol=0.001),
            _compare("mdi-ideal", f"{cell}.sigma", r.power.deviation, 0.0, tol=1e-12),
            _compare("mdi-ideal", f"{cell}.wobble", r.wobble.pk_plus, 0.0, tol=1e-12),
            _compare("mdi-ideal", f"{cell}.cmu0", r.change.mean, cmu_ref, tol=0.001),
            _compare("mdi-ideal", f"{cell}.cpk+", r.change.pk_plus, mu_ref, tol=0.001),
        ])
    spec5 = stellar.StellarSpec(5, math.sqrt(4 * 0.372 - 1))
    for rule_name, cpk_minus, cmu in (("gj", 0.003, 0.191), ("gj+", 0.009, 0.196)):
        r = mdistats.dynamic_stats(spec5, mdistats.builtin_rule(rule_name, 20))
        rows.append(_compare("mdi-ideal", f"5pts.{rule_name}.cpk-",
                             r.change.pk_minus, cpk_minus, tol=0.001))
        rows.append(_compare("mdi-ideal", f"5pts.{rule_name}.cmu0",
                             r.change.mean, cmu, tol=0.001))
    return rows


def table_mux_profiles() -> list[ReportRow]:
    reference_set = {
        "2-3": (3, 2, 1, 2, 1),
        "4-5": (5, 4, 1, 4, 2),
        "8-9": (9, 8, 1, 6, 3),
        "16-21": (21, 16, 5, 3, 4),
    }
    rows = []
    for root, ref in reference_set.items():
        got = muxplan.profile(root)
        rows.append(_compare("mux-profiles", root,
                             ",".join(map(str, got)), ",".join(map(str, ref)),
                             mode="str"))
        halving = muxplan.min_echo_words(2, got.n_transport, got.n_clear)
        rows.append(_compare("mux-profiles", f"{root}.halving", halving, ref[3]))
    return rows


def table_framing() -> list[ReportRow]:
    from .codec.framing import HEAD_EXTRA_BITS, MIN_IPG_WORDS, FramePattern

    rows = [
        _compare("framing", "min-ipg", MIN_IPG_WORDS, 12),
        _compare("framing", "head-bits.H=1", HEAD_EXTRA_BITS[1], 26),
        _compare("framing", "head-bits.H=2", HEAD_EXTRA_BITS[2], 42),
        _compare("framing", "head-bits.H=0", HEAD_EXTRA_BITS[0], 16),
    ]
    for t in (0, 1, 2):
        rows.append(_compare("framing", f"tail-esc.T={t}",
                             FramePattern(0, t).tail_esc_words, 2 + 2 * t))
    return rows


def table_codec_features() -> list[ReportRow]:
    """Headline transfer figures of the multiplexed stream."""
    from . import codec

    word_rate_mhz = 125.0
    return [
        _compare("codec-features", "data-bits-per-word", 8, 8),
        _compare("codec-features", "data-rate-mbit",
                 word_rate_mhz * 8, 1000.0),
        _compare("codec-features", "encode-delay-words", codec.ENCODE_LATENCY, 6),
        _compare("codec-features", "encode-delay-ns", codec.ENCODE_LATENCY * 8, 48),
        _compare("codec-features", "decode-delay-words", codec.DECODE_LATENCY, 7),
        _compare("codec-features", "decode-delay-ns", codec.DECODE_LATENCY * 8, 56),
        _compare("codec-features", "event-cycle-words", codec.EVENT_SPACING, 20),
        _compare("codec-features", "event-rate-mev",
                 word_rate_mhz / codec.EVENT_SPACING, 6.25),
        _compare("codec-features", "echo-words-max", codec.ECHO_WORDS, 18),
        _compare("codec-features", "event-uncertainty-ns", 4.0, 4.0),
    ]


# Reference-sheet coordinates of each table in the embedded value set.
TABLE_REFS: dict[str, str] = {
    "mux-variants": "R1.T02",
    "redundancy": "R1.T12",
    "nap-designs": "R2.T11",
    "native-distribution": "R2.T03",
    "repeat-effects": "R3.T11",
    "balance-variants": "R3.T15",
    "subscrambler-bounds": "R3.T16-17",
    "plane-gains": "R4.T04-10",
    "stellar-ideal": "R4.T15",
    "cic-gains": "R7.T02",
    "jump-limits": "R6.N05",
    "effective-ladders": "R7.T08",
    "sphere-limits": "R6.T07-08",
    "filter-pam17": "R5.T01-02",
    "mdi-reference": "R5.T12",
    "mdi-ideal": "R7.T09",
    "mux-profiles": "R7.T04",
    "framing": "R2.T12-13",
    "codec-features": "R1.T10",
}

TABLES: dict[str, Callable[[], list[ReportRow]]] = {
    "mux-variants": table_mux_variants,
    "redundancy": table_redundancy,
    "nap-designs": table_nap_designs,
    "native-distribution": table_native_distribution,
    "repeat-effects": table_repeat_effects,
    "balance-variants": table_balance_variants,
    "subscrambler-bounds": table_subscrambler_bounds,
    "plane-gains": table_plane_gains,
    "stellar-ideal": table_stellar_ideal,
    "cic-gains": table_cic_gains,
    "jump-limits": table_jump_limits,
    "effective-ladders": table_effective_ladders,
    "sphere-limits": table_sphere_limits,
    "filter-pam17": table_filter_pam17,
    "mdi-reference": table_mdi_reference,
    "mdi-ideal": table_mdi_ideal,
    "mux-profiles": table_mux_profiles,
    "framing": table_framing,
    "codec-features": table_codec_features,
}


def resolve_table(name: str) -> str:
    """Accept either a table name or its reference-sheet id."""
    if name in TABLES:
        return name
    for table, ref in TABLE_REFS.items():
        if ref == name:
            return table
    raise KeyError(f"unknown table {name!r}; known: {sorted(TABLES)}")


def run_report(names: Optional[list[str]] = None) -> list[ReportRow]:
    names = [resolve_table(n) for n in names] if names else sorted(TABLES)
    rows = []
    for name in names:
        rows.extend(TABLES[name]())
    return rows


def summarize(rows: list[ReportRow]) -> dict[str, int]:
    counts = {"match": 0, "mismatch": 0, "flagged": 0, "illegible": 0, "derived": 0}
    for row in rows:
        counts[row.status] += 1
    return counts
