"""Command-line front end: table generation, evaluation and diagnostic scans.

Commands
--------
gen       generate a coefficient table file
eval      evaluate a function from a table file at one argument
errscan   CSV error scan of a table against the high-precision bootstrap
stirling  CSV of optimal truncation index and achievable digits per z
harmonic  harmonic and generalized harmonic sums from psi tables

Exit codes: 0 success, 1 usage, 2 domain/capacity, 3 IO/parse.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import mpmath as mp

from . import gammafam, stirling
from .errors import CapacityError, DomainError, FitError, ScanExhaustedError, TableParseError
from .gammafam import TableKind

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_IO = 3


@dataclass(frozen=True)
class ErrorScanRow:
    z: float
    approx: object      # mpf
    reference: object   # mpf
    rel_error: object   # mpf, floored denominator near zeros of the reference
    abs_error: object   # mpf


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract here is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _function_kind(text):
    try:
        return TableKind.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser():
    parser = _Parser(prog="gammacheb",
                     description="Shifted-Chebyshev tables for the gamma family")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[], help="generate a coefficient table file")
    p.add_argument("function", type=_function_kind,
                   help="gamma | invgamma | lngamma | psi0 | psi<m>")
    p.add_argument("--digits", type=_positive_int, default=30,
                   help="target decimal digits (default 30)")
    p.add_argument("--ncoeffs", type=_positive_int, default=None,
                   help="coefficient count; for psi functions this sizes the "
                        "underlying lngamma fit (default: smallest count whose "
                        "tail sum is below 10^-digits)")
    p.add_argument("--out", default=None,
                   help="output path (default <function>_<digits>d.tbl)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", help="evaluate a table at one argument")
    p.add_argument("function", type=_function_kind)
    p.add_argument("z", help="argument, z > 0 (decimal string)")
    p.add_argument("--table", required=True, help="table file path")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("errscan",
                       help="scan table error against the high-precision bootstrap")
    p.add_argument("function", type=_function_kind)
    p.add_argument("--table", required=True)
    p.add_argument("--zmin", type=float, default=1.0)
    p.add_argument("--zmax", type=float, default=1e4)
    p.add_argument("--points", type=_positive_int, default=120,
                   help="log-spaced points (default 120); 200 linear points on "
                        "[1, 3] are always added when in range")
    p.add_argument("--allow-below-one", action="store_true",
                   help="permit 0 < zmin < 1 via the recurrence extension")
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_errscan)

    p = sub.add_parser("stirling",
                       help="optimal truncation index and achievable digits per z")
    p.add_argument("--zmin", type=float, default=1.0)
    p.add_argument("--zmax", type=float, default=50.0)
    p.add_argument("--points", type=_positive_int, default=50)
    p.add_argument("--nscan", type=_positive_int, default=200,
                   help="term scan limit per row (default 200)")
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("harmonic", help="harmonic sums via psi tables")
    p.add_argument("m", type=_nonneg_int,
                   help="0 for H_n, otherwise the generalized order")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--table", required=True,
                   help="psi<m> table file (psi0 for m = 0)")
    p.set_defaults(func=cmd_harmonic)

    return parser


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args):
    kind = args.function
    if kind.base == "psi":
        table = gammafam.generate_psi_table(kind.order, args.digits,
                                            n_coeffs=args.ncoeffs)
    elif args.ncoeffs is None:
        table = gammafam.generate_auto(kind, args.digits)
    else:
        ctx = gammafam.context_for(args.digits, args.ncoeffs)
        table = gammafam.generate_table(kind, args.ncoeffs, ctx)
    out = args.out or f"{kind.label}_{args.digits}d.tbl"
    gammafam.save_table(table, out)
    bound = table.provenance.get("tail_bound", "n/a")
    print(f"wrote {out}: {len(table.series.coeffs)} coefficients, "
          f"tail-sum bound {bound}")
    return EXIT_OK


def _load_for(kind, path, command):
    try:
        table = gammafam.load_table(path)
    except FileNotFoundError:
        raise TableParseError(
            f"no table file at {path}; generate one with: "
            f"gammacheb gen {kind.label} --digits <d> --out {path}") from None
    if table.kind != kind:
        raise DomainError(
            f"{path} holds a {table.kind.label} table but {command} asked for "
            f"{kind.label}; generate one with: gammacheb gen {kind.label} "
            f"--digits <d> --out <path>")
    return table


def cmd_eval(args):
    table = _load_for(args.function, args.table, "eval")
    value = gammafam.evaluate(table, args.z)
    print(mp.nstr(value, table.target_digits))
    return EXIT_OK


def scan_grid(zmin, zmax, points):
    """Log-spaced grid plus a dense linear band on [1, 3] where error peaks."""
    if points < 2:
        raise ValueError("points must be >= 2")
    if not zmin > 0 or zmax <= zmin:
        raise ValueError("need 0 < zmin < zmax")
    ratio = (zmax / zmin) ** (1.0 / (points - 1))
    zs = {zmin * ratio ** i for i in range(points)}
    lo, hi = max(zmin, 1.0), min(zmax, 3.0)
    if hi > lo:
        zs.update(lo + (hi - lo) * k / 199 for k in range(200))
    zs.add(zmax)
    return sorted(zs)


def run_errscan(table, zmin, zmax, points, references=None):
    """ErrorScanRows over the scan grid, in increasing z.

    The reference is the ln-gamma bootstrap at table digits + 5 (through the
    appropriate transform per function kind); pass ``references`` to reuse
    values from a previous scan on the same grid.
    """
    digits = table.target_digits
    ref_digits = digits + 5
    zs = scan_grid(zmin, zmax, points)
    kind = table.kind
    rows = []
    with mp.workdps(table.series.precision_digits + 10):
        floor = mp.mpf(10) ** (-(digits + 2))
        for i, z in enumerate(zs):
            approx = gammafam.evaluate(table, z)
            if references is not None:
                ref = references[i]
            elif kind.base == "lngamma":
                ref = stirling.lngamma_oracle(z, ref_digits)
            elif kind.base == "gamma":
                ref = mp.exp(stirling.lngamma_oracle(z, ref_digits))
            elif kind.base == "invgamma":
                ref = mp.exp(-stirling.lngamma_oracle(z, ref_digits))
            elif kind.order == 0:
                ref = gammafam.psi_reference(z, ref_digits)
            else:
                ref = gammafam.polygamma_reference(kind.order, z, ref_digits)
            err = abs(approx - ref)
            rel = err / max(abs(ref), floor)
            rows.append(ErrorScanRow(z, approx, ref, rel, err))
    return rows


def _write_csv(path, header, rows):
    fh = open(path, "w", encoding="utf-8", newline="") if path else sys.stdout
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if path:
            fh.close()


def cmd_errscan(args):
    if args.zmin < 1.0 and not args.allow_below_one:
        raise DomainError("zmin < 1 needs --allow-below-one (recurrence extension)")
    table = _load_for(args.function, args.table, "errscan")
    rows = run_errscan(table, args.zmin, args.zmax, args.points)
    digits = table.target_digits
    out_rows = [
        (repr(r.z), mp.nstr(r.approx, digits + 5), mp.nstr(r.reference, digits + 5),
         mp.nstr(r.rel_error, 6), mp.nstr(r.abs_error, 6))
        for r in rows
    ]
    _write_csv(args.out, ("z", "approx", "reference", "rel_error", "abs_error"),
               out_rows)
    worst_rel = max(rows, key=lambda r: r.rel_error)
    worst_abs = max(rows, key=lambda r: r.abs_error)
    print(f"max rel_error {mp.nstr(worst_rel.rel_error, 6)} at z={worst_rel.z!r}",
          file=sys.stderr)
    print(f"max abs_error {mp.nstr(worst_abs.abs_error, 6)} at z={worst_abs.z!r}",
          file=sys.stderr)
    return EXIT_OK


def cmd_stirling(args):
    if args.zmin < 1.0:
        raise DomainError("stirling scan needs zmin >= 1")
    if args.zmax <= args.zmin:
        raise DomainError("need zmin < zmax")
    n = args.points
    zs = [args.zmin + (args.zmax - args.zmin) * i / (n - 1) for i in range(n)] if n > 1 else [args.zmin]
    out_rows = []
    for z in zs:
        try:
            rep = stirling.optimal_truncation(z, n_scan=args.nscan)
            out_rows.append((repr(z), str(rep.n_opt), f"{rep.est_digits:.4f}"))
        except (ScanExhaustedError, CapacityError) as e:
            print(f"z={z!r}: {e}", file=sys.stderr)
            out_rows.append((repr(z), "-1", "nan"))
    _write_csv(args.out, ("z", "n_opt", "est_digits"), out_rows)
    return EXIT_OK


def cmd_harmonic(args):
    kind = TableKind("psi", args.m)
    table = _load_for(kind, args.table, "harmonic")
    if args.m == 0:
        result = gammafam.harmonic(args.n, table)
    else:
        result = gammafam.generalized_harmonic(args.m, args.n, table)
    print(mp.nstr(result.value, table.target_digits))
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, CapacityError) as e:
        print(f"gammacheb: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except TableParseError as e:
        print(f"gammacheb: {e}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"gammacheb: {e}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, FitError, ScanExhaustedError) as e:
        print(f"gammacheb: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
