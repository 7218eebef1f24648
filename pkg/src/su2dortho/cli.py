"""Batch command-line interface.

Exit status: 0 on success, 1 when an invariant fails, 2 on a bad
configuration. Output goes to ``--out`` (``-`` for stdout) or to a default
file name inside ``$SU2DORTHO_OUTPUT_DIR`` (current directory if unset).
"""

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import afamily as fa
from . import bfamily as fb
from . import limits
from .errors import Su2DorthoError
from .exactnum import as_rational
from .verify import FULL_N, QUICK_N, run_verify

ENV_OUTPUT_DIR = "SU2DORTHO_OUTPUT_DIR"
EXACT_N_LIMIT = 64
FLOAT_N_LIMIT = 256


class ConfigError(ValueError):
    pass


def _rational(text):
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="su2dortho", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output file, '-' for stdout")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-a", parents=[common], help="emit the A family")
    p.add_argument("--q", type=int, required=True, choices=(0, 1))
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("gen-b", parents=[common], help="emit the B family")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--f", type=_rational, required=True)
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--N-max", dest="N_max", type=int, default=None)
    p.add_argument("--quick", action="store_true", help=f"cap N at {QUICK_N}")

    p = sub.add_parser("contract-a", parents=[common], help="Meixner contraction report")
    p.add_argument("--q", type=int, required=True, choices=(0, 1))
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--N", type=_int_list, required=True)

    p = sub.add_parser("contract-b", parents=[common], help="d-Charlier contraction report")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=_int_list, required=True)

    p = sub.add_parser("gf-check", parents=[common], help="contracted generating function report")
    p.add_argument("--q", type=int, required=True, choices=(0, 1))
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--eta", type=_complex, required=True)
    p.add_argument("--N", type=_int_list, required=True)
    p.add_argument("--l", dest="ell", type=int, default=1)
    p.add_argument("--a", type=_rational, default=Fraction(2))
    return parser


# --- serialization -------------------------------------------------------


def emit_json(data):
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def family_csv(dump):
    key = "j" if dump["family"] == "A" else "n"
    rows = [(entry[key], power, c) for entry in dump["polys"] for power, c in enumerate(entry["coeffs"])]
    return _csv_text([key, "power", "coeff"], rows)


def report_csv(report):
    d2 = report.get("dev_candidate2") or [None] * len(report["N"])
    rows = [
        (i, N, "" if x is None else repr(x), "" if y is None else repr(y))
        for i, (N, x, y) in enumerate(zip(report["N"], report["dev_candidate1"], d2))
    ]
    return _csv_text(["index", "N", "dev_candidate1", "dev_candidate2"], rows)


def verify_csv(report):
    rows = [(k, int(v["passed"]), v["count"]) for k, v in report["checks"].items()]
    return _csv_text(["check", "passed", "count"], rows)


# --- commands ------------------------------------------------------------


def _require(cond, message):
    if not cond:
        raise ConfigError(message)


def _default_name(args):
    cmd = args.command
    if cmd == "gen-a":
        stem = f"family_A_q{args.q}_c{_tag(args.c)}_N{args.N}"
    elif cmd == "gen-b":
        stem = f"family_B_M{args.M}_f{_tag(args.f)}_N{args.N}"
    elif cmd == "verify":
        stem = "verify_report"
    elif cmd == "contract-a":
        stem = f"contract_A_q{args.q}_c{_tag(args.c)}_j{args.j}"
    elif cmd == "contract-b":
        stem = f"contract_B_M{args.M}_j{args.j}_q{args.q}_k{args.k}"
    else:
        stem = f"gf_check_q{args.q}_c{_tag(args.c)}"
    return f"{stem}.{args.format}"


def _tag(x):
    return str(x).replace("/", "over").replace("-", "m")


def run(args):
    """Execute one command; returns (exit status, output text, stderr message)."""
    cmd = args.command
    if cmd == "gen-a":
        _require(0 <= args.N <= EXACT_N_LIMIT, f"N must be in 0..{EXACT_N_LIMIT}")
        _require(args.N >= args.q, "N must be at least q")
        _require(args.c != 0, "c must be nonzero")
        dump = fa.family_dump(fa.FamilyParamsA(args.q, args.c, args.N))
        return 0, emit_json(dump) if args.format == "json" else family_csv(dump), None
    if cmd == "gen-b":
        _require(0 <= args.N <= EXACT_N_LIMIT, f"N must be in 0..{EXACT_N_LIMIT}")
        _require(args.M >= 1, "M must be at least 1")
        _require(args.f != 0, "f must be nonzero")
        dump = fb.family_dump(fb.FamilyParamsB(args.M, args.f, args.N))
        return 0, emit_json(dump) if args.format == "json" else family_csv(dump), None
    if cmd == "verify":
        n_max = args.N_max if args.N_max is not None else FULL_N
        if args.quick:
            n_max = min(n_max, QUICK_N)
        _require(0 <= n_max <= EXACT_N_LIMIT, f"N-max must be in 0..{EXACT_N_LIMIT}")
        report = run_verify(n_max, args.seed)
        text = emit_json(report) if args.format == "json" else verify_csv(report)
        return (0 if report["passed"] else 1), text, report["first_failure"]

    Ns = args.N
    _require(Ns, "empty N list")
    _require(all(b > a for a, b in zip(Ns, Ns[1:])), "N list must be strictly increasing")
    if cmd == "contract-a":
        _require(Ns[-1] <= EXACT_N_LIMIT * 2 and Ns[0] >= 2 * args.j + args.q, "N list out of range")
        _require(args.c != 0 and args.j >= 0, "need c != 0 and j >= 0")
        report = limits.contract_A(args.q, args.c, args.j, Ns)
    elif cmd == "contract-b":
        _require(Ns[-1] <= FLOAT_N_LIMIT, f"N must not exceed {FLOAT_N_LIMIT}")
        _require(args.M >= 1 and 0 <= args.q < args.M and args.j >= 0, "need M >= 1, 0 <= q < M, j >= 0")
        _require(args.a != 0 and args.b != 0, "a and b must be nonzero")
        _require(Ns[0] >= max(args.M * args.j + args.q, args.k), "N list out of range")
        report = limits.contract_B(args.M, args.a, args.b, args.j, args.q, args.k, Ns)
    else:
        _require(Ns[-1] <= FLOAT_N_LIMIT, f"N must not exceed {FLOAT_N_LIMIT}")
        _require(args.c != 0 and args.a > 0, "need c != 0 and a > 0")
        _require(Ns[0] >= 2 * args.ell + args.q, "N list out of range")
        report = limits.contract_gf_check(args.q, args.c, args.eta, Ns, ell=args.ell, a=args.a)
    data = report.to_json()
    text = emit_json(data) if args.format == "json" else report_csv(data)
    return 0, text, None


def _write(args, text):
    target = args.out
    if target == "-":
        sys.stdout.write(text)
        return None
    if target is None:
        target = os.path.join(os.environ.get(ENV_OUTPUT_DIR, "."), _default_name(args))
    directory = os.path.dirname(target)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return target


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with status 2 on bad flags
    try:
        status, text, message = run(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Su2DorthoError as exc:
        residual = getattr(exc, "residual", None)
        print(f"failure: {exc}" + (f" residual={residual}" if residual is not None else ""), file=sys.stderr)
        return 1
    path = _write(args, text)
    if message:
        print(message, file=sys.stderr)
    if path:
        print(path, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
