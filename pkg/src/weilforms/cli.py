"""Command-line front end: ``weilforms <command> [options]``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .bounds import (
    closed_form_r,
    closed_form_r_star,
    round_certified,
    s_w_table,
    table1_csv,
    table1_json,
    table1_rows,
    table2_csv,
    table2_json,
)
from .enumeration import DEFAULT_MAX_NODES, FieldSignature, effective_report
from .errors import WeilFormsError
from .odlyzko import parse_lambda
from .qform import (
    WITNESSES,
    gram,
    kernel_from_name,
    log2pi,
    shifted_signature,
    signature_certified,
    tn_exact,
    tn_numeric,
    witness_q,
    witness_value,
)
from .special_functions import DEFAULT_PRECISION, CertifiedInterval, Sign, workprec
from .verify import SUITES, run_suite

ENV_PRECISION = "WEILFORMS_PRECISION_BITS"
MIN_PRECISION = 64
KERNELS = ("grh", "nongrh", "log", "invlinear")


def _precision_default() -> int:
    raw = os.environ.get(ENV_PRECISION)
    if not raw:
        return DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{ENV_PRECISION} must be an integer, got {raw!r}")


def parse_w_range(text: str) -> List[int]:
    """"0..14", "3", "0,1,23" or combinations like "0..14,23,24"."""
    out: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _decimal(x: CertifiedInterval, digits: int = 6) -> str:
    try:
        return round_certified(x, digits)
    except WeilFormsError:
        return f"{float(x.mid):.{digits}f}"


# ---------------------------------------------------------------- commands


def cmd_tables(args) -> int:
    fmt = args.format
    out = []
    if args.kind in ("r", "both"):
        ws = parse_w_range(args.w or "0..14,23,24")
        if args.exact:
            for w in ws:
                out.append(f"r({w}) = {closed_form_r(w)}")
                out.append(f"r*({w}) = {closed_form_r_star(w)}")
        else:
            rows = table1_rows(ws, args.precision_bits)
            if fmt == "json":
                out.append(table1_json(rows))
            elif fmt == "csv":
                out.append(table1_csv(rows).rstrip("\n"))
            else:
                out.append(f"{'w':>3}  {'r(w)':>8}  {'r*(w)':>8}")
                for row in rows:
                    out.append(f"{row.w:>3}  {round_certified(row.r_w, 4):>8}  {round_certified(row.r_star_w, 4):>8}")
    if args.kind in ("s", "both"):
        rows, sp = s_w_table(args.precision_bits)
        if fmt == "json":
            out.append(table2_json(rows, sp))
        elif fmt == "csv":
            out.append(table2_csv(rows, sp).rstrip("\n"))
        else:
            out.append(f"{'w':>3}  {'s(w)':>6}")
            for row in rows:
                out.append(f"{row.w:>3}  {round_certified(row.s, 2):>6}")
            out.append(f"{'0' + chr(39):>3}  {round_certified(sp, 3):>6}")
    print("\n".join(out))
    return 0


def cmd_tn(args) -> int:
    kernel = kernel_from_name(args.kernel)
    p = args.precision_bits
    result = {"kernel": kernel.name, "n": args.n}
    if kernel.exact_qu and not args.numeric:
        result["t_plus_gamma"] = str(tn_exact(kernel, args.n))
        result["u"] = "log(2)"
    if args.numeric or not kernel.exact_qu:
        t = tn_numeric(kernel, args.n, p)
        l2p = log2pi(p)
        with workprec(p + 16):
            diff = CertifiedInterval(l2p.ball - t.ball)
        s = diff.sign()
        rel = "<" if s is Sign.POSITIVE else ">" if s is Sign.NEGATIVE else "?"
        result["t_n"] = _decimal(t)
        result["compare"] = f"t_n {rel} log 2pi = {_decimal(l2p)}"
    if args.format == "json":
        print(json.dumps(result, indent=2))
    else:
        if "t_plus_gamma" in result:
            print(f"t_{args.n} + gamma = {result['t_plus_gamma']}  (u = log 2)")
        if "t_n" in result:
            print(f"t_{args.n} = {result['t_n']}")
            print(result["compare"])
    return 0


def cmd_gram(args) -> int:
    g = gram(kernel_from_name(args.kernel), args.n, args.precision_bits)
    text = [[str(x) for x in row] for row in g.entries]
    if args.format == "json":
        print(json.dumps({"kernel": args.kernel, "n": args.n, "entries": text}, indent=2))
    elif args.format == "csv":
        for row in text:
            print(",".join(row))
    else:
        width = max(len(x) for row in text for x in row)
        for row in text:
            print("  ".join(x.rjust(width) for x in row))
    return 0


def cmd_signature(args) -> int:
    kernel = kernel_from_name(args.kernel)
    if args.t is None:
        sig = signature_certified(gram(kernel, args.n, args.precision_bits), args.precision_bits)
        what = f"q_{args.n}"
    else:
        t = log2pi(args.precision_bits) if args.t == "log2pi" else parse_lambda(args.t)
        sig = shifted_signature(kernel, args.n, t, args.precision_bits)
        what = f"{args.t} phi^2 - q_{args.n}"
    if args.format == "json":
        print(json.dumps({"kernel": args.kernel, "n": args.n, "form": what, "signature": list(sig.as_tuple()),
                          "positive_definite": sig.is_positive_definite()}))
    else:
        print(f"signature of {what} ({kernel.name}): {sig.as_tuple()}")
    return 0


def cmd_witness(args) -> int:
    names = sorted(WITNESSES) if args.case == "all" else [args.case]
    rows = []
    for name in names:
        c = WITNESSES[name]
        rows.append({
            "case": name,
            "kernel": c.kernel.name,
            "n": c.n,
            "description": c.description,
            "q": _decimal(witness_q(name, args.precision_bits)),
            "log2pi_phi2_minus_q": _decimal(witness_value(name, args.precision_bits)),
        })
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            print(f"{r['case']}: q = {r['q']}, log 2pi phi^2 - q = {r['log2pi_phi2_minus_q']}  ({r['description']})")
    return 0


def cmd_enumerate(args) -> int:
    field = FieldSignature(args.r1, args.r2, args.rootdisc, args.normN)
    grid = [parse_lambda(x) for x in args.lambda_grid.split(",")] if args.lambda_grid else None
    report = effective_report(field, args.w, grid, args.precision_bits, grh=args.grh, max_nodes=args.max_nodes)
    print(report.to_json())
    return 0


def cmd_verify(args) -> int:
    checks = run_suite(args.suite, args.precision_bits)
    for c in checks:
        print(c.line())
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=_precision_default(),
                        help=f"working precision in bits (default {DEFAULT_PRECISION}, env {ENV_PRECISION})")
    common.add_argument("--format", choices=("csv", "json", "text"), default="text")

    parser = argparse.ArgumentParser(
        prog="weilforms",
        description="Certified computations with the Weil quadratic forms attached to the explicit formula "
                    "for Rankin-Selberg L-functions: root-discriminant cutoffs r(w), r*(w), s(w), exact "
                    "thresholds t_n, signatures and the effective enumeration of Archimedean parameters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", parents=[common],
                       help="r(w), r*(w) to 1e-4 and s(w) to 1e-2",
                       description="Root-discriminant cutoffs r(w) = exp(log 2pi - t_w) (sech kernel) and "
                                   "r*(w) = 8 pi exp(gamma - h_w) (GRH kernel) rounded to 4 decimals; "
                                   "s(w) = exp(J(eta^w)) for F_{log 2} rounded to 2 decimals, with s'(0).")
    p.add_argument("--kind", choices=("r", "s", "both"), default="r")
    p.add_argument("--w", help='weights, e.g. "0..14,23,24" (default for r)')
    p.add_argument("--exact", action="store_true", help="print closed forms instead of decimals")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("tn", parents=[common], help="threshold t_n^H",
                       description="t_n^H + gamma as an element of Q(log 2) from the Toeplitz Gram matrix "
                                   "(exact rational function of u = log 2), and/or its certified decimal "
                                   "compared with log 2pi.")
    p.add_argument("--kernel", choices=KERNELS, default="nongrh")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--numeric", action="store_true")
    p.set_defaults(func=cmd_tn)

    p = sub.add_parser("gram", parents=[common], help="Gram matrix (psi_H(|i-j|))",
                       description="Toeplitz Gram matrix of q_n^H with exact entries where available.")
    p.add_argument("--kernel", choices=KERNELS, default="nongrh")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("signature", parents=[common], help="certified signature",
                       description="Certified (pos, zero, neg) signature of q_n^H, or of t phi_n^2 - q_n^H with "
                                   "--t (a rational, a multiple of log2, or log2pi).")
    p.add_argument("--kernel", choices=KERNELS, default="nongrh")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("witness", parents=[common], help="values on the obstruction vectors",
                       description="q_n^H and log 2pi phi^2 - q_n^H on the vectors (4,1,...,1,4) and central "
                                   "binomial vectors that witness failure of positivity at weights 24 and 25.")
    p.add_argument("--case", choices=sorted(WITNESSES) + ["all"], default="all")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("enumerate", parents=[common], help="effective enumeration report (JSON)",
                       description="For a field given by (r1, r2, root discriminant, norm of the conductor) with "
                                   "r_E < r(w) (r*(w) with --grh), list the effective parameters V satisfying "
                                   "q_{F_lambda}(V) <= 8 lambda/pi^2 + (dim V - 1/2) log||N|| on every lambda "
                                   "of the grid, with multiplicity bounds floor(8 lambda / (delta pi^2)).")
    p.add_argument("--r1", type=int, default=1)
    p.add_argument("--r2", type=int, default=0)
    p.add_argument("--rootdisc", default="1", help='e.g. "1", "2.7", "sqrt(3)", "23^(1/3)"')
    p.add_argument("--normN", type=int, default=1)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--grh", action="store_true", help="use G_lambda and r*(w)")
    p.add_argument("--lambda-grid", help='comma separated, e.g. "1,2,4,3*log2"')
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES,
                   help=f"traversal budget; exceeding it is an error (default {DEFAULT_MAX_NODES})")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run acceptance checks",
                       description="Run a named block of acceptance checks; exit status 0 iff all pass.")
    p.add_argument("suite", nargs="?", default="all", choices=list(SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision_bits < MIN_PRECISION:
        parser.error(f"--precision-bits must be at least {MIN_PRECISION}")
    try:
        return args.func(args)
    except WeilFormsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
