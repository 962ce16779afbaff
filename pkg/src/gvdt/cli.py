"""``gvdt`` command-line front end.

Exit status: 0 on success, 1 on a domain error (bad data, window too
narrow, integrality violation), 2 on a usage error.
"""

import argparse
import sys
from dataclasses import dataclass, field

from . import checks
from .datasets import EXAMPLES, load_example
from .errors import GVDTError, ParseError
from .formats import (format_dt, format_gv, format_gw, format_rational,
                      parse_dt, parse_gv, parse_gw)
from .invariants import (DTSeries, ThreefoldData, dt_full, dt_reduce,
                         dt_reduced_to_gv, gv_to_dt_reduced, gv_to_gw, gw_to_gv,
                         z0_partition_function)
from .kkv import KKVInput, euler_hilb_points, kkv_dt_contribution, kkv_invariant
from .partitions import mcmahon_series

DEFAULT_QWINDOW = (-3, 8)
DEFAULT_TMAX = 6


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: list = field(default_factory=list)
    qwindow: tuple = DEFAULT_QWINDOW
    tmax: int = DEFAULT_TMAX
    jmax: int = None
    output: str = None

    def validate(self):
        lo, hi = self.qwindow
        if lo > hi:
            raise UsageError(f"empty q-window [{lo}, {hi}]")
        if self.tmax < 0:
            raise UsageError("--tmax must be non-negative")
        if self.jmax is not None and self.jmax < 0:
            raise UsageError("--jmax must be non-negative")


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_input(p):
    p.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")


def _add_window(p):
    p.add_argument("--qmin", type=int, default=DEFAULT_QWINDOW[0])
    p.add_argument("--qmax", type=int, default=DEFAULT_QWINDOW[1])
    p.add_argument("--tmax", type=int, default=DEFAULT_TMAX)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gvdt", description="Exact GV / GW / DT generating-function calculus.")
    parser.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="subcommand", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("mcmahon", help="coefficients of M(q) or M(-q)")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)

    p = sub.add_parser("z0", help="M(-q)^chern_degree")
    p.add_argument("--euler", type=int, required=True)
    p.add_argument("--chern-degree", type=int)
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("gv2dt", help="GV table -> reduced (or full) DT series")
    _add_input(p)
    _add_window(p)
    p.add_argument("--euler", type=int, help="also multiply by M(-q)^euler (full series)")

    p = sub.add_parser("dt2gv", help="DT series -> GV table")
    _add_input(p)
    p.add_argument("--lenient", action="store_true", help="allow non-integer invariants")
    p.add_argument("--euler", type=int, help="euler of X, to reduce a full series first")

    p = sub.add_parser("gv2gw", help="GV table -> GW table")
    _add_input(p)
    p.add_argument("--jmax", type=int, required=True, help="highest genus to output")
    p.add_argument("--tmax", type=int, help="highest class degree (default: table's)")

    p = sub.add_parser("gw2gv", help="GW table -> GV table")
    _add_input(p)
    p.add_argument("--gmax", type=int)
    p.add_argument("--report", action="store_true",
                   help="list every entry's integrality on stderr")

    p = sub.add_parser("kkv", help="GV invariant from relative Hilbert scheme Euler numbers")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--dim-m", type=int, required=True)
    p.add_argument("--eulers", type=_int_list, required=True)
    p.add_argument("--dims", type=_int_list)

    p = sub.add_parser("hilb-euler", help="e(Hilb^n X) for n <= 3")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--euler", type=int, required=True)

    p = sub.add_parser("check", help="run the reproducibility checks")
    p.add_argument("--only", type=_int_list, help="comma-separated check numbers")

    p = sub.add_parser("example", help="print a bundled GV table")
    p.add_argument("name", choices=EXAMPLES)
    p.add_argument("--K", type=int, help="number of classes for local_elliptic")
    p.add_argument("--notes", action="store_true", help="prefix the notes as comments")
    return parser


def _config(args):
    cfg = RunConfig(args.subcommand, output=args.output)
    if hasattr(args, "input"):
        cfg.inputs = [args.input]
    if hasattr(args, "qmin"):
        cfg.qwindow = (args.qmin, args.qmax)
    if getattr(args, "tmax", None) is not None:
        cfg.tmax = args.tmax
    cfg.jmax = getattr(args, "jmax", None)
    for name in ("order", "K"):
        if getattr(args, name, None) is not None and getattr(args, name) < 1:
            raise UsageError(f"--{name} must be positive")
    cfg.validate()
    return cfg


def _read(path, stdin):
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise GVDTError(f"cannot read {path}: {exc.strerror}") from None


def _coeff_line(s, order):
    return " ".join(format_rational(s[n], always_fraction=False) for n in range(order + 1))


def dispatch(args, cfg, stdin, err):
    """Run one subcommand; returns (text, status)."""
    cmd = cfg.subcommand
    if cmd == "mcmahon":
        return _coeff_line(mcmahon_series(args.order, args.sign), args.order) + "\n", 0
    if cmd == "z0":
        x = ThreefoldData(args.euler, args.chern_degree)
        return _coeff_line(z0_partition_function(x, args.order), args.order) + "\n", 0
    if cmd == "gv2dt":
        gv = parse_gv(_read(cfg.inputs[0], stdin))
        if gv.max_degree > cfg.tmax:
            print(f"gvdt: warning: entries above degree {cfg.tmax} dropped "
                  f"(raise --tmax)", file=err)
        z = gv_to_dt_reduced(gv, cfg.qwindow, cfg.tmax)
        if args.euler is not None:
            z = dt_full(z, ThreefoldData(args.euler))
        return format_dt(z), 0
    if cmd == "dt2gv":
        z = parse_dt(_read(cfg.inputs[0], stdin))
        if not z.reduced:
            if args.euler is None:
                raise GVDTError("input is a full DT series; pass --euler to reduce it")
            z = dt_reduce(z, ThreefoldData(args.euler))
        return format_gv(dt_reduced_to_gv(z, strict=not args.lenient)), 0
    if cmd == "gv2gw":
        gv = parse_gv(_read(cfg.inputs[0], stdin))
        return format_gw(gv_to_gw(gv, cfg.jmax, args.tmax)), 0
    if cmd == "gw2gv":
        gv = gw_to_gv(parse_gw(_read(cfg.inputs[0], stdin)), args.gmax)
        report = gv.integrality_report()
        for beta, g, value, ok in report:
            if args.report or not ok:
                tag = "integer" if ok else "NOT integer"
                print(f"# beta={list(beta)} g={g} n={format_rational(value, False)} {tag}",
                      file=err)
        return format_gv(gv), 0
    if cmd == "kkv":
        inp = KKVInput(args.genus, args.delta, args.dim_m, args.eulers, args.dims)
        text = f"{kkv_invariant(inp)}\n"
        if inp.delta <= 1:
            text += format_dt(DTSeries(kkv_dt_contribution(inp)))
        return text, 0
    if cmd == "hilb-euler":
        return f"{euler_hilb_points(args.n, args.euler)}\n", 0
    if cmd == "check":
        known = {c[0] for c in checks.CHECKS}
        if args.only and not set(args.only) <= known:
            raise UsageError(f"--only takes numbers from {sorted(known)}")
        lines = []
        status = 0
        for number in args.only or sorted(known):
            ok, line = checks.run_check(number)
            lines.append(line)
            status = status or (0 if ok else 1)
        return "\n".join(lines) + "\n", status
    if cmd == "example":
        model = load_example(args.name, args.K)
        head = "".join(f"# {n}\n" for n in model.notes) if args.notes else ""
        return head + format_gv(model.gv), 0
    raise UsageError(f"unknown subcommand {cmd}")


def run(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = _config(args)
        text, status = dispatch(args, cfg, stdin, stderr)
    except UsageError as exc:
        print(f"gvdt: usage error: {exc}", file=stderr)
        return 2
    except ParseError as exc:
        print(f"gvdt: {exc}", file=stderr)
        return 1
    except (GVDTError, ValueError) as exc:
        print(f"gvdt: error: {exc}", file=stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def main():
    sys.exit(run())
