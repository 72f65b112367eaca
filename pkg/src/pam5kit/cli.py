"""Batch front-end: subcommand dispatch, config handling, table reports.

Exit codes: 0 on success, 1 when `report --strict` finds a mismatch, 2 on
usage errors.  Outputs are deterministic for fixed flags and seeds.  A flat
KEY=VALUE config file can predefine defaults; command-line flags win.  The
only environment variable honored is PAM5KIT_CACHE_DIR, overriding the
default output directory.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import balance, mdistats, reftables, stellar
from .codec import decode_stream, encode_stream, wirefmt


def _load_config(path: Optional[str]) -> dict[str, str]:
    if not path:
        return {}
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SystemExit(f"config {path}:{lineno}: expected KEY=VALUE")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _emit_table(name: str, header: Sequence[str], rows: list[Sequence],
                fmt: str, out_dir: Optional[str], ref: str = "") -> None:
    anchor = f"reference sheet {ref}" if ref else "computed"
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# table: {name} ({anchor})\n")
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
        suffix = ".csv"
    elif fmt == "json":
        payload = {"table": name, "reference": ref,
                   "rows": [dict(zip(header, row)) for row in rows]}
        text = json.dumps(payload, indent=2, default=str) + "\n"
        suffix = ".json"
    elif fmt == "md":
        lines = [f"**{name}** ({anchor})", "", "| " + " | ".join(header) + " |",
                 "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
        text = "\n".join(lines) + "\n"
        suffix = ".md"
    else:
        raise SystemExit(f"unknown format {fmt!r}")
    if out_dir:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        Path(out_dir, name.replace("/", "-") + suffix).write_text(text)
    else:
        sys.stdout.write(text)


def _report_rows_table(rows: list[reftables.ReportRow]) -> list[Sequence]:
    return [
        (r.table, r.cell, str(r.computed), "" if r.reference is None else str(r.reference),
         r.tolerance, r.status, r.note)
        for r in rows
    ]


REPORT_HEADER = ("table", "cell", "computed", "reference", "tolerance", "status", "note")


def _apply_tolerance(rows: list[reftables.ReportRow],
                     slack: float) -> list[reftables.ReportRow]:
    if not slack:
        return rows
    out = []
    for r in rows:
        if r.status == "mismatch" and isinstance(r.reference, (int, float)):
            try:
                if abs(float(r.computed) - float(r.reference)) <= r.tolerance + slack:
                    r = reftables.ReportRow(r.table, r.cell, r.computed, r.reference,
                                              r.tolerance + slack, "match", r.note)
            except (TypeError, ValueError):
                pass
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_variants(args) -> int:
    rows = reftables.table_mux_variants()
    _emit_table("mux-variants", REPORT_HEADER, _report_rows_table(rows),
                args.format, args.out, reftables.TABLE_REFS["mux-variants"])
    return 0


def cmd_redundancy(args) -> int:
    rows = reftables.table_redundancy()
    _emit_table("redundancy", REPORT_HEADER, _report_rows_table(rows),
                args.format, args.out, reftables.TABLE_REFS["redundancy"])
    return 0


def cmd_codec(args) -> int:
    if args.action == "encode":
        octets = Path(args.infile).read_bytes()
        events = wirefmt.read_event_times(args.events) if args.events else []
        result = encode_stream(
            octets, events=events,
            head_stretch=args.stretch_head, tail_stretch=args.stretch_tail,
            scramble=not args.no_scramble, seed=args.seed,
        )
        wirefmt.write_words(args.outfile, result.words)
        if args.events_out:
            from .codec.events import EventRecord
            wirefmt.write_events(
                args.events_out,
                [EventRecord.at_word(i) for i in result.accepted_events],
            )
        print(f"encoded {len(octets)} octets -> {len(result.words)} words; "
              f"events accepted={len(result.accepted_events)} "
              f"dropped={result.dropped_events}")
        return 0
    words = wirefmt.read_words(args.infile)
    result = decode_stream(words, seed=args.seed, scramble=not args.no_scramble)
    Path(args.outfile).write_bytes(result.octets)
    if args.events_out:
        wirefmt.write_events(args.events_out, result.events)
    print(f"decoded {len(words)} words -> {len(result.octets)} octets; "
          f"events={len(result.events)}")
    return 0


def cmd_balance(args) -> int:
    if args.action == "solve":
        try:
            sol = balance.solve(args.hz, args.ne)
        except balance.Infeasible as exc:
            print(json.dumps({"hz": args.hz, "infeasible": str(exc)}, indent=2))
            return 0
        report = balance.verify(sol)
        payload = {
            "hz": sol.hz,
            "group_sums": sol.group_sums,
            "member_split": {k: list(v) for k, v in sol.member_split.items()},
            "h_y": sol.h_y, "h_x": sol.h_x, "h_page": sol.h_page,
            "unbalance": sol.unbalance, "signed_delta": sol.signed_delta,
            "p_y": float(sol.p_y), "p_x": float(sol.p_x),
            "effective": {
                "p0": sol.effective_p0,
                "even_page": sol.effective_even_page,
                "odd_page": sol.effective_odd_page,
            },
            "verification": {
                "identity_ok": report.identity_ok,
                "pages_uniform": report.pages_uniform,
                "floors_ok": report.floors_ok,
                "violations": list(report.violations),
            },
        }
        text = json.dumps(payload, indent=2) + "\n"
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            Path(args.out, f"balance-hz{args.hz}.json").write_text(text)
        else:
            sys.stdout.write(text)
        return 0
    rows = reftables.table_balance_variants()
    _emit_table("balance-variants", REPORT_HEADER, _report_rows_table(rows),
                args.format, args.out, reftables.TABLE_REFS["balance-variants"])
    return 0


def cmd_symmetries(args) -> int:
    catalog = balance.build_catalog()
    rows = []
    for sym in catalog.symmetries:
        effect = balance.effect_of(sym)
        rows.append((
            sym.group, sym.ordinal, sym.size, effect.dh_y, effect.dh_x,
            "/".join(map(str, effect.dh_pages)), effect.dh_z,
        ))
    _emit_table("symmetries", ("group", "ordinal", "size", "dh_y", "dh_x",
                               "dh_pages", "dh_z"),
                rows, args.format, args.out, reftables.TABLE_REFS["repeat-effects"])
    return 0


def cmd_gains(args) -> int:
    rows = reftables.table_plane_gains() + reftables.table_stellar_ideal() \
        + reftables.table_jump_limits()
    _emit_table("gains", REPORT_HEADER, _report_rows_table(rows),
                args.format, args.out, reftables.TABLE_REFS["plane-gains"])
    return 0


def cmd_sphere(args) -> int:
    scan = stellar.limit_scan(args.levels, args.max_dim)
    rows = []
    for n in range(1, args.max_dim + 1):
        rows.append((
            n,
            f"{scan.surfaces[n]:.4f}", f"{scan.surface_percent[n]:.1f}",
            f"{scan.volumes[n]:.4f}" if n in scan.volumes else "",
            f"{scan.volume_percent[n]:.1f}" if n in scan.volumes else "",
        ))
    rows.append(("peak", f"n_tx={scan.n_tx}", "", f"n_rx={scan.n_rx}", ""))
    _emit_table(f"sphere-M{args.levels}",
                ("n", "surface", "surface%", "volume", "volume%"),
                rows, args.format, args.out, reftables.TABLE_REFS["sphere-limits"])
    return 0


def cmd_cic(args) -> int:
    matrix = stellar.cic_gain_matrix(args.views)
    names = [name for name, _ in stellar.CIC_CLASSES_16]
    rows = []
    for name, row in zip(names, matrix):
        rows.append((name, *["" if v is None else f"{v:.2f}" for v in row]))
    _emit_table(f"cic-views{args.views}", ("class", *names), rows,
                args.format, args.out, reftables.TABLE_REFS["cic-gains"])
    return 0


def cmd_stats(args) -> int:
    if args.action == "reference":
        report = mdistats.power_stats(mdistats.reference_process())
    else:
        rho = args.ratio
        if rho is None:
            rho = stellar.equal_distance_ratio(args.pts)
        spec = stellar.StellarSpec(args.pts, rho)
        rule = mdistats.builtin_rule(args.rule, spec.n_views)
        outline = None
        if args.grid:
            outline = stellar.grid_arrange(spec.rooms(), levels=17)
        if args.mc_samples:
            report = mdistats.monte_carlo_power_stats(
                spec, rule, args.mc_samples, args.seed, outline)
        else:
            report = mdistats.dynamic_stats(spec, rule, outline)
    rows = [
        ("power", f"{report.power.mean:.4f}", f"{report.power.deviation:.4f}",
         f"{report.power.pk_minus:.4f}", f"{report.power.pk_plus:.4f}",
         f"{report.power.span:.4f}"),
        ("change", f"{report.change.mean:.4f}", f"{report.change.deviation:.4f}",
         f"{report.change.pk_minus:.4f}", f"{report.change.pk_plus:.4f}",
         f"{report.change.span:.4f}"),
    ]
    if report.wobble is not None:
        rows.append(("wobble", f"{report.wobble.mean:.4f}",
                     f"{report.wobble.deviation:.4f}",
                     f"{report.wobble.pk_minus:.4f}",
                     f"{report.wobble.pk_plus:.4f}", ""))
    else:
        rows.append(("wobble", "n/a", "n/a", "n/a", "n/a", ""))
    if report.jump_gain_db is not None:
        rows.append(("jump-gain-db", f"{report.jump_gain_db:.3f}", "", "", "", ""))
    _emit_table("stats", ("block", "mean", "deviation", "pk-", "pk+", "span"),
                rows, args.format, args.out, reftables.TABLE_REFS["mdi-reference"])
    return 0


def cmd_report(args) -> int:
    names = None if args.all or not args.table else list(args.table)
    rows = reftables.run_report(names)
    rows = _apply_tolerance(rows, args.tolerance)
    summary = reftables.summarize(rows)
    for name in sorted({r.table for r in rows}):
        subset = [r for r in rows if r.table == name]
        _emit_table(name, REPORT_HEADER, _report_rows_table(subset),
                    args.format, args.out, reftables.TABLE_REFS.get(name, ""))
    line = ("summary: " + " ".join(f"{k}={v}" for k, v in sorted(summary.items())))
    print(line, file=sys.stderr)
    if args.strict and summary["mismatch"]:
        return 1
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat KEY=VALUE defaults file")
    common.add_argument("--format", choices=("csv", "json", "md"), default=None)
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--seed", type=int, default=None)

    parser = argparse.ArgumentParser(
        prog="pam5kit",
        description="4D-PAM5 coding workbench: tables, codec, balancing, stats",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("variants", help="multiplexing variant table", parents=[common])
    sub.add_parser("redundancy", help="big-integer feasibility table", parents=[common])

    p = sub.add_parser("codec", help="encode/decode a word stream", parents=[common])
    p.add_argument("action", choices=("encode", "decode"))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-file", dest="outfile", required=True)
    p.add_argument("--events", default=None, help="event sidecar (encode input)")
    p.add_argument("--events-out", default=None)
    p.add_argument("--no-scramble", action="store_true")
    p.add_argument("--stretch-head", type=int, default=0, choices=(0, 1, 2))
    p.add_argument("--stretch-tail", type=int, default=0, choices=(0, 1, 2))

    p = sub.add_parser("balance", parents=[common],
                       help="solve a balancing target or emit the table")
    p.add_argument("action", choices=("solve", "table"))
    p.add_argument("--hz", type=int, default=576)
    p.add_argument("--ne", type=int, default=72)

    sub.add_parser("symmetries", help="symmetry catalog with effect rows",
                   parents=[common])
    sub.add_parser("gains", help="plane and two-orbit gain tables",
                   parents=[common])

    p = sub.add_parser("sphere", help="hypersphere surface/volume scan",
                       parents=[common])
    p.add_argument("--levels", type=int, default=17)
    p.add_argument("--max-dim", type=int, default=10)

    p = sub.add_parser("cic", help="coupled-jump gain matrix", parents=[common])
    p.add_argument("--views", type=int, default=16)

    p = sub.add_parser("stats", help="MDI output statistics", parents=[common])
    p.add_argument("action", choices=("reference", "stellar"))
    p.add_argument("--pts", type=float, default=5.0)
    p.add_argument("--rule", default="static",
                   choices=("static", "gj", "gj+", "g2j", "g2j+"))
    p.add_argument("--ratio", type=float, default=None)
    p.add_argument("--grid", action="store_true")
    p.add_argument("--mc-samples", type=int, default=0)

    p = sub.add_parser("report", help="reproduce embedded reference tables",
                       parents=[common])
    p.add_argument("--all", action="store_true")
    p.add_argument("--table", action="append", default=None,
                   help="table name (repeatable)")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--tolerance", type=float, default=0.0,
                   help="extra absolute slack added to every cell tolerance")

    return parser


COMMANDS = {
    "variants": cmd_variants,
    "redundancy": cmd_redundancy,
    "codec": cmd_codec,
    "balance": cmd_balance,
    "symmetries": cmd_symmetries,
    "gains": cmd_gains,
    "sphere": cmd_sphere,
    "cic": cmd_cic,
    "stats": cmd_stats,
    "report": cmd_report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _load_config(args.config)
    if args.format is None:
        args.format = config.get("format", "csv")
    if args.out is None:
        args.out = config.get("out") or os.environ.get("PAM5KIT_CACHE_DIR")
    if args.seed is None:
        args.seed = int(config.get("seed", 1))
    try:
        return COMMANDS[args.command](args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
