"""Command line interface: ``colored-partitions <subcommand> ...``.

Exit status: 0 on success or PASS, 1 when a verification fails, 2 on usage
or input errors. See FORMATS.md for the input and output formats.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .bijection import STRATEGIES, PositionTrace, predict_p, predict_q, run_phi, run_psi
from .dilation import M3_ALIASES, generate_diff_table
from .enumeration import CapExceeded, enumerate_c, enumerate_d, expand_product
from .formats import GRAMMAR, ParseError, format_partition, parse_partition, part_to_json
from .parts import ColoredPartition, InvalidPartition, Mode, color_name, validate
from .verify import SUITES, run_suite


def _read_chain(text: str, m: int | None, mode: Mode) -> tuple[ColoredPartition, int]:
    raw = parse_partition(text, m)
    used = 1 + max((c for part in raw for c in part.colors), default=0)
    if m is None:
        m = used
    return ColoredPartition(raw.parts, mode), m


def _emit_partition(parts, m: int, fmt: str, out) -> None:
    if fmt == "json":
        json.dump([part_to_json(p, m) for p in parts], out)
        out.write("\n")
    else:
        out.write(format_partition(parts, m) + "\n")


def cmd_map(args, out) -> int:
    if args.command == "phi":
        chain, m = _read_chain(args.partition, args.m, Mode.C)
        run = run_phi(chain, args.strategy, args.seed)
    else:
        chain, m = _read_chain(args.partition, args.m, Mode.D)
        run = run_psi(chain, args.strategy, args.seed)
    if args.log:
        for step in run.steps:
            out.write(f"{step}\n")
    _emit_partition(run.result, m, args.format, out)
    return 0


def _gauge_table(trace: PositionTrace) -> list[str]:
    if not trace.upper:
        return []
    width = max(4, *(len(str(v)) + 1 for v in trace.gauge.values()))
    name = "phi" if trace.kind == "phi" else "psi"
    lines = [f"{name}(j,i)  j\\i".ljust(12) + "".join(str(i).rjust(width) for i in trace.upper)]
    for j in trace.free:
        lines.append(str(j).ljust(12) + "".join(str(trace.gauge[j, i]).rjust(width) for i in trace.upper))
    return lines


def cmd_explain(args, out) -> int:
    raw = parse_partition(args.partition, args.m)
    side = args.side
    if side is None:
        side = "C" if not validate(raw.parts, Mode.C) else "D"
    chain, m = _read_chain(args.partition, args.m, Mode.C if side == "C" else Mode.D)
    if side == "C":
        trace, run, letter = predict_p(chain), run_phi(chain, args.strategy, args.seed), "P"
    else:
        trace, run, letter = predict_q(chain), run_psi(chain, args.strategy, args.seed), "Q"
    lines = [
        f"input ({'C' if side == 'C' else 'D'}-chain): {format_partition(chain, m)}",
        "halves: " + " ".join(
            f"{k}:{trace.l(k)}{color_name(trace.c(k), m)}" for k in range(1, trace.size + 1)
        ),
        f"I = {{{', '.join(map(str, trace.upper))}}}",
        f"J = {{{', '.join(map(str, trace.free))}}}",
    ]
    if not trace.upper:
        lines.append("no crossings required")
    else:
        lines += _gauge_table(trace)
    lines.append(f"k  predicted {letter}(k)  simulated  agree")
    for k in range(1, trace.size + 1):
        predicted, simulated = trace.position(k), run.positions[k - 1]
        lines.append(f"{k:<3}{predicted:>14}{simulated:>11}  {'yes' if predicted == simulated else 'NO'}")
    lines += [str(step) for step in run.steps]
    lines.append(f"result: {format_partition(run.result, m)}")
    problems = trace.all_violations()
    if trace.positions != run.positions:
        problems.append("predicted and simulated positions differ")
    lines.append("self-check: " + ("ok" if not problems else "; ".join(problems)))
    out.write("\n".join(lines) + "\n")
    return 0 if not problems else 1


def cmd_enumerate(args, out) -> int:
    sides = ["C", "D"] if args.side == "both" else [args.side]
    tables = {}
    for side in sides:
        fn = enumerate_c if side == "C" else enumerate_d
        tables[side] = fn(args.m, args.max_n, keep_partitions=args.list, cap=args.cap, jobs=args.jobs)
    if args.format == "json":
        payload = {
            side: [
                {"n": n, "u": list(u), "count": c,
                 **({"partitions": [format_partition(p, args.m) for p in table.partitions[n, u]]} if args.list else {})}
                for (n, u), c in sorted(table.counts.items())
            ]
            for side, table in tables.items()
        }
        json.dump(payload, out, indent=1)
        out.write("\n")
        return 0
    for side, table in tables.items():
        if len(sides) > 1:
            out.write(f"# side {side}\n")
        for (n, u), c in sorted(table.counts.items()):
            out.write(f"{n}\t{','.join(map(str, u))}\t{c}\n")
            if args.list:
                for chain in table.partitions[n, u]:
                    out.write(f"\t{format_partition(chain, args.m) or '(empty)'}\n")
    return 0


def cmd_series(args, out) -> int:
    series = expand_product(args.m, args.max_n)
    rows = sorted(series.coeffs.items())
    if args.format == "json":
        json.dump([{"n": n, "u": list(u), "coefficient": c} for (n, u), c in rows], out)
        out.write("\n")
    else:
        for (n, u), c in rows:
            out.write(f"{n}\t{','.join(map(str, u))}\t{c}\n")
    return 0


def cmd_table(args, out) -> int:
    table = generate_diff_table(args.m, args.granularity)
    aliases = M3_ALIASES if args.m == 3 else None
    if args.format == "json":
        json.dump({"labels": table.labels, "rows": [[table[r, c] for c in table.labels] for r in table.labels]}, out)
        out.write("\n")
        return 0
    if aliases:
        out.write("colors a, b, c shown as a, b, d\n")
    out.write(table.format(aliases) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for name in names:
        report = run_suite(name, args.m, args.max_n, orders=args.orders, seed=args.seed, jobs=args.jobs)
        reports.append(report)
        if args.format == "json":
            continue
        if not args.quiet:
            for line in report.details:
                out.write(f"  {line}\n")
        for failure in report.failures[:20]:
            out.write(f"  {failure}\n")
        out.write(report.summary() + "\n")
    ok = all(r.passed for r in reports)
    if args.format == "json":
        json.dump({
            "passed": ok,
            "suites": [
                {"name": r.name, "passed": r.passed, "checked": r.checked, "failures": r.failures}
                for r in reports
            ],
        }, out, indent=1)
        out.write("\n")
    else:
        out.write("PASS\n" if ok else "FAIL\n")
    return 0 if ok else 1


EPILOG = f"""\
partition text: {GRAMMAR}
  colors a..z, or (i) with 1-based i past 26; "" is the empty partition.
json parts: {{"kind": "primary"|"secondary", "k": K, "colors": [...], "length": L}}
enumerate/series tsv: n <TAB> u1,...,um <TAB> count
exit status: 0 success or PASS, 1 verification FAIL, 2 usage or parse error.
See FORMATS.md for details.
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colored-partitions",
        description="Colored partitions with primary and secondary colors: the maps phi/psi, "
        "enumeration, series and verification.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, max_n_default=None, formats=("text", "json")):
        p.add_argument("--m", type=int, default=None, help="number of primary colors")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--seed", type=int, default=0, help="seed for random strategies")
        p.add_argument("--strategy", choices=STRATEGIES, default="smallest")
        if max_n_default is not None:
            p.add_argument("--max-n", type=int, default=max_n_default)
            p.add_argument("--jobs", type=int, default=1)

    for name, help_text in (("phi", "map a C-chain to a D-chain"), ("psi", "map a D-chain to a C-chain")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("partition", help="e.g. 24:a+17:b+11:b")
        p.add_argument("--log", action="store_true", help="print each crossing step")
        common(p)

    p = sub.add_parser("explain", help="positions, gauge table and crossing log for one chain")
    p.add_argument("partition")
    p.add_argument("--side", choices=("C", "D"), default=None, help="treat input as a C- or D-chain")
    common(p)

    p = sub.add_parser("enumerate", help="count chains by (n, u)")
    p.add_argument("--side", choices=("C", "D", "both"), default="both")
    p.add_argument("--list", action="store_true", help="also list the partitions")
    p.add_argument("--cap", type=int, default=None, help="override the max-n safety cap")
    common(p, 10, ("tsv", "json"))

    p = sub.add_parser("series", help="expand prod (1 + a_i q^k)")
    common(p, 10, ("tsv", "json"))

    p = sub.add_parser("table", help="minimal difference table")
    p.add_argument("--granularity", choices=("reduced", "parity-split"), default="reduced")
    common(p)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--orders", type=int, default=100, help="random crossing orders per chain")
    p.add_argument("--quiet", action="store_true", help="omit per-n detail lines")
    common(p, 20)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.m is not None and args.m < 1:
        parser.error("--m must be at least 1")
    if getattr(args, "max_n", 0) < 0:
        parser.error("--max-n must be non-negative")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    if getattr(args, "orders", 0) < 0:
        parser.error("--orders must be non-negative")
    if args.command in ("enumerate", "series", "table", "verify") and args.m is None:
        args.m = 2
    handlers = {
        "phi": cmd_map, "psi": cmd_map, "explain": cmd_explain, "enumerate": cmd_enumerate,
        "series": cmd_series, "table": cmd_table, "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args, out)
    except (ParseError, InvalidPartition, CapExceeded, ValueError) as exc:
        sys.stderr.write(f"colored-partitions {args.command}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
