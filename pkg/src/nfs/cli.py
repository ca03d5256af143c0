"""Command line entry point: `nfs factor ...` and `nfs smoothlab ...`."""

import argparse
import csv
import itertools
import logging
import sys

from nfs import pipeline, smoothlab


def parse_int(text: str) -> int:
    """Decimal, or hexadecimal with a 0x prefix."""
    return int(text, 0) if text.lower().startswith("0x") else int(text)


def int_list(text: str) -> list[int]:
    return [parse_int(t) for t in text.split(",") if t]


def cmd_factor(args) -> int:
    overrides = {}
    for key, name in [("d", "degree"), ("B", "rational_bound"), ("B2", "algebraic_bound"), ("B3", "char_count"), ("u", "half_width")]:
        value = getattr(args, name)
        if value is not None:
            overrides[key] = value
    try:
        params = pipeline.default_params(args.n, args.mode, args.seed, **overrides)
    except pipeline.InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.mode == "gnfs":
        report = pipeline.gnfs_factor(params, relations_out=args.relations_out, relations_in=args.relations_in)
    else:
        if args.relations_in:
            print("error: --relations-in is only supported in gnfs mode", file=sys.stderr)
            return 1
        _, _, report = pipeline.rnfs_congruence(params, relations_out=args.relations_out)
    if args.json:
        print(report.to_json())
    elif report.factors:
        print(" ".join(str(p) for p in report.factors))
    else:
        print(f"failed: {report.message or report.status}", file=sys.stderr)
    return 0 if report.status == "success" else 2


def _emit(rows, header, as_csv: bool) -> None:
    if as_csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        for row in rows:
            print(" ".join(f"{k}={v}" for k, v in zip(header, row)))


def cmd_psi(args) -> int:
    rows = []
    for x, y in itertools.product(args.x, args.y):
        if args.mod is None:
            rows.append((x, y, "", "", smoothlab.psi_count(x, y)))
        elif args.res is None:
            rows.append((x, y, args.mod, "", smoothlab.psi_coprime(x, y, args.mod)))
        else:
            rows.append((x, y, args.mod, args.res, smoothlab.psi_progression(x, y, args.res, args.mod)))
    _emit(rows, ["x", "y", "mod", "res", "psi"], args.csv)
    return 0


def cmd_rho(args) -> int:
    rows = []
    for x, y in itertools.product(args.x, args.y):
        rho = smoothlab.rho_empirical(x, y)
        rows.append((x, y, f"{rho.numerator}/{rho.denominator}", f"{float(rho):.6f}"))
    _emit(rows, ["x", "y", "rho", "rho_float"], args.csv)
    return 0


def cmd_goodness(args) -> int:
    rows = []
    for r in args.r:
        try:
            good, worst = smoothlab.goodness_test(r, args.F, args.B, args.eps)
            rows.append((r, args.F, args.B, args.eps, "good" if good else "bad", f"{worst:.6f}"))
        except smoothlab.IndeterminateGoodness:
            rows.append((r, args.F, args.B, args.eps, "indeterminate", ""))
    _emit(rows, ["r", "F", "B", "eps", "verdict", "max_epsilon"], args.csv)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nfs", description="Number field sieve factoring at desk scale")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    fp = sub.add_parser("factor", help="factor an odd composite")
    fp.add_argument("--n", type=parse_int, required=True)
    fp.add_argument("--mode", choices=["gnfs", "rnfs"], default="gnfs")
    fp.add_argument("--degree", type=int)
    fp.add_argument("--rational-bound", type=int)
    fp.add_argument("--algebraic-bound", type=int)
    fp.add_argument("--char-count", type=int)
    fp.add_argument("--half-width", type=int)
    fp.add_argument("--seed", type=int, default=0)
    fp.add_argument("--relations-out")
    fp.add_argument("--relations-in")
    fp.add_argument("--json", action="store_true")
    fp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("smoothlab", help="smooth-number experiments")
    lab = sp.add_subparsers(dest="lab", required=True)
    for name, func in [("psi", cmd_psi), ("rho", cmd_rho)]:
        p = lab.add_parser(name)
        p.add_argument("--x", type=int_list, required=True, help="comma-separated list")
        p.add_argument("--y", type=int_list, required=True, help="comma-separated list")
        p.add_argument("--csv", action="store_true")
        p.set_defaults(func=func)
    lab.choices["psi"].add_argument("--mod", type=parse_int)
    lab.choices["psi"].add_argument("--res", type=parse_int)
    gp = lab.add_parser("goodness")
    gp.add_argument("--r", type=int_list, required=True, help="comma-separated list")
    gp.add_argument("--F", type=parse_int, required=True)
    gp.add_argument("--B", type=parse_int, required=True)
    gp.add_argument("--eps", type=float, default=0.15)
    gp.add_argument("--csv", action="store_true")
    gp.set_defaults(func=cmd_goodness)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
