"""Command-line interface.

Exit status is 0 on success, 1 when a verification fails and 2 on usage errors.
Every subcommand is a thin wrapper over library calls.
"""

import argparse
import csv
import io
import sys

from .decomposer import decompose, export, load, verify_decomposition
from .errors import ModulusError, TorusError
from .kempe import color_signs, parity_barrier_report
from .odd import odd_closed_form, return_map_F
from .route_e import (
    VARIANTS,
    closed_form_branches,
    closed_form_R,
    counting_check,
    cross_check_R,
    defect_table,
    first_return,
    route_e_assignment,
    splice_blocks,
)
from .torus import DirectionAssignment
from .witness_m4 import m4_assignment

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _color(text):
    c = int(text)
    if c not in (0, 1, 2):
        raise argparse.ArgumentTypeError("color must be 0, 1 or 2")
    return c


def _cmd_decompose(args, out):
    dec = decompose(args.m, with_cycles=not args.no_cycles or args.format != "json")
    text = export(dec, args.format, include_cycles=not args.no_cycles)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _sniff_format(text):
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return "json"
    first = stripped.splitlines()[0] if stripped else ""
    return "arcs" if len(first.split()) == 3 and first.split()[1].isdigit() else "cycles"


def _cmd_verify(args, out):
    with open(args.input, encoding="ascii") as fh:
        text = fh.read()
    fmt = args.format or _sniff_format(text)
    try:
        dec = load(text, fmt)
    except (ValueError, KeyError) as exc:
        out.write(f"could not load {args.input}: {exc}\nverdict: not verified\n")
        return EXIT_FAILED
    report = verify_decomposition(dec)
    out.write("\n".join(report.lines()) + "\n")
    return EXIT_OK if report.ok else EXIT_FAILED


def _coloring(name, m):
    if name == "canonical":
        return DirectionAssignment.canonical(m)
    if name == "odd":
        return odd_closed_form(m)
    if name == "route-e":
        return route_e_assignment(m)
    if m != 4:
        raise UsageError("the m4 coloring exists only for m = 4")
    return m4_assignment()


def _cmd_sign(args, out):
    assign = _coloring(args.coloring, args.m)
    signs = color_signs(assign)
    for c, s in enumerate(signs):
        out.write(f"sign of color {c}: {s:+d}\n")
    out.write(f"sign product: {signs[0] * signs[1] * signs[2]:+d}\n")
    if args.coloring == "canonical" and args.m % 2 == 0:
        out.write("\n".join(parity_barrier_report(args.m).lines()) + "\n")
    return EXIT_OK


def _cmd_return_map(args, out):
    m, c = args.m, args.color
    construction = args.construction or ("odd" if m % 2 else "route-e")
    if construction == "odd":
        fmap = return_map_F(c, m)
        branches = None
    else:
        fmap = closed_form_R(c, m)
        branches = closed_form_branches(c, m)
    out.write("i,k,image_i,image_k" + (",branch" if branches is not None else "") + "\n")
    for i in range(m):
        for k in range(m):
            x, y = fmap(i, k)
            row = f"{i},{k},{x},{y}"
            if branches is not None:
                row += f",{branches[i * m + k]}"
            out.write(row + "\n")
    return EXIT_OK


def _cmd_first_return(args, out):
    variant = args.variant.replace("-", "_")
    lane = first_return(args.color, args.m, variant)
    out.write(f"color {args.color}, m = {args.m}, variant {args.variant}\n")
    out.write(f"transversal: {lane.transversal}\n")
    out.write("T: " + " ".join(str(x) for x in lane.targets) + "\n")
    out.write("rho: " + " ".join(str(x) for x in lane.times) + "\n")
    out.write(f"sum of rho: {lane.total_time} (m^2 = {args.m ** 2})\n")
    cycles = lane.lane_cycles()
    if cycles is None:
        out.write("lane map: not injective\n")
    else:
        out.write("lane cycles: " + " ".join("(" + ",".join(map(str, cyc)) + ")" for cyc in cycles) + "\n")
    if variant == "actual":
        sp = splice_blocks(args.color, args.m, lane)
        for n, block in enumerate(sp.blocks, 1):
            out.write(f"block {n}: ({','.join(map(str, block))})\n")
        cyc = " ".join("(" + " ".join(map(str, c)) + ")" for c in sp.permutation_cycles())
        out.write(f"splice permutation: {cyc}\n")
    single = lane.is_single_cycle()
    out.write("verdict: " + ("single cycle" if single else "not single cycle") + "\n")
    if variant == "actual" and not counting_check(lane):
        return EXIT_FAILED
    return EXIT_OK


def _cmd_defects(args, out):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["u", "t", "branch", "delta_u", "delta_t"])
    for b in defect_table(args.color, args.m):
        writer.writerow([b.u, b.t, b.label, b.delta[0], b.delta[1]])
    out.write(buf.getvalue())
    return EXIT_OK


def _cmd_cross_check(args, out):
    lo, hi = args.m_min, args.m_max
    if hi < lo:
        raise UsageError("--m-max must be at least --m-min")
    evens = [m for m in range(max(lo, 6), hi + 1) if m % 2 == 0]
    if not evens:
        raise UsageError("the range contains no even m >= 6")
    failed = False
    for m in evens:
        problems = []
        report = cross_check_R(m)
        problems += [f"color {c} at {pt}: {what}" for c, pt, what in report.mismatches]
        for c in (0, 1, 2):
            try:
                lane = first_return(c, m)
                if not counting_check(lane):
                    problems.append(f"color {c}: counting check failed")
                if not splice_blocks(c, m, lane).single_cycle:
                    problems.append(f"color {c}: splice is not a single cycle")
            except (TorusError, RuntimeError) as exc:
                problems.append(f"color {c}: {exc}")
        out.write(f"m = {m}: " + ("ok" if not problems else "; ".join(problems)) + "\n")
        failed |= bool(problems)
    return EXIT_FAILED if failed else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="d3torus",
                                     description="Hamilton decompositions of the directed 3-torus.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="build and export a decomposition")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=["json", "cycles", "arcs"], default="json")
    p.add_argument("--out")
    p.add_argument("--no-cycles", action="store_true", help="omit explicit cycles from JSON")
    p.set_defaults(run=_cmd_decompose)

    p = sub.add_parser("verify", help="re-verify an exported decomposition")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=["json", "cycles", "arcs"])
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("sign", help="per-color signs and their product")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--coloring", choices=["canonical", "odd", "route-e", "m4"], default="canonical")
    p.set_defaults(run=_cmd_sign)

    p = sub.add_parser("return-map", help="closed-form return map on S = 0")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--color", type=_color, required=True)
    p.add_argument("--construction", choices=["odd", "route-e"])
    p.set_defaults(run=_cmd_return_map)

    p = sub.add_parser("first-return", help="lane map, return times and splice data")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--color", type=_color, required=True)
    p.add_argument("--variant", choices=[v.replace("_", "-") for v in VARIANTS], default="actual")
    p.set_defaults(run=_cmd_first_return)

    p = sub.add_parser("defects", help="bulk-frame defect points as CSV")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--color", type=_color, required=True)
    p.add_argument("--emit", choices=["csv"], default="csv")
    p.set_defaults(run=_cmd_defects)

    p = sub.add_parser("cross-check", help="closed forms against iteration over a range of m")
    p.add_argument("--m-min", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.set_defaults(run=_cmd_cross_check)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.run(args, out)
    except (UsageError, ModulusError) as exc:
        err.write(f"d3torus {args.command}: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"d3torus {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
