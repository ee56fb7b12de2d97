"""Command-line interface: ``splitmat {sample,table,verify}``.

Exit codes: 0 success, 1 I/O failure or failed verification, 2 bad usage.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import densities as dens
from .ensembles import (
    DEFAULT_SUBSTREAM_WIDTH,
    GINIBRE,
    GSCE,
    GSQE,
    EnsembleConfig,
    map_chunks,
)
from .errors import SplitmatError
from .matrices import SplitMatrix, Spectrum, classify_roots, spectrum, spectrum_2x2
from .verify import run_suite

SEED_ENV = "SPLITMAT_SEED"
ENSEMBLE_FLAGS = {"gsce": GSCE, "gsqe": GSQE, "ginibre": GINIBRE}
SAMPLE_HEADER = "sample_id,eig_index,re,im,is_real"
FLOAT_FMT = "{:.17g}"


class UsageError(Exception):
    pass


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {value}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def parse_grid(text):
    """``lo:hi:n`` to an evenly spaced array."""
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:n, got {text!r}")
    if not lo < hi or n < 2:
        raise argparse.ArgumentTypeError(f"grid needs lo < hi and n >= 2, got {text!r}")
    return np.linspace(lo, hi, n)


def _default_seed():
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return _seed(env)
    except argparse.ArgumentTypeError:
        return 0


# -- sample -------------------------------------------------------------------


def _spectra_for_chunk(samples, config):
    """Per-matrix eigenvalue arrays and real flags, in CSV order."""
    if config.kind == GINIBRE:
        return [classify_roots(np.linalg.eigvals(a), tol=0.0) for a in samples]
    if config.n == 2:
        mid, disc = spectrum_2x2(samples)
        out = []
        for m, d in zip(mid.tolist(), disc.tolist()):
            if d >= 0:
                r = d**0.5
                out.append(Spectrum((m - r, m + r), ()))
            else:
                out.append(Spectrum((), ((m, (-d) ** 0.5),)))
        return out
    return [spectrum(SplitMatrix(e)) for e in samples]


def _csv_chunk(samples, config, chunk_index):
    first = chunk_index * config.substream_width
    lines = []
    for offset, spec in enumerate(_spectra_for_chunk(samples, config)):
        sid = first + offset
        nreal = len(spec.real_eigs)
        for k, lam in enumerate(spec.eigenvalues()):
            re = FLOAT_FMT.format(lam.real)
            im = FLOAT_FMT.format(lam.imag)
            lines.append(f"{sid},{k},{re},{im},{int(k < nreal)}\n")
    return "".join(lines)


def cmd_sample(args):
    config = EnsembleConfig(ENSEMBLE_FLAGS[args.ensemble], args.size, args.count, args.seed,
                            DEFAULT_SUBSTREAM_WIDTH)
    chunks = map_chunks(_csv_chunk, config, args.workers)
    with open(args.out, "w", newline="") as fh:
        fh.write(SAMPLE_HEADER + "\n")
        fh.writelines(chunks)
    return 0


# -- table --------------------------------------------------------------------


def _fmt_rows(rows):
    return "".join(",".join(FLOAT_FMT.format(v) for v in row) + "\n" for row in rows)


def build_table(what, ensemble, grid, grid2=None):
    """``(header, rows)`` of analytic values on the requested grid."""
    if what == "r1-real":
        return "lambda,density", zip(grid, dens.r1_real(ensemble, grid))
    if what == "spacing":
        if grid[0] < 0:
            raise UsageError("spacing grid must be non-negative")
        return "s,density", zip(grid, dens.spacing_pdf(ensemble, grid))
    grid2 = grid if grid2 is None else grid2
    x, y = np.meshgrid(grid, grid2, indexing="ij")
    x, y = x.ravel(), y.ravel()
    if what == "r1-complex":
        vals = np.zeros_like(x)
        off_axis = y != 0
        # the complex-branch density vanishes on the real axis
        vals[off_axis] = dens.r1_complex(ensemble, x[off_axis] + 1j * y[off_axis])
        return "re,im,density", zip(x, y, vals)
    if what == "jpdf":
        f = dens.jpdf_sc if ensemble == GSCE else dens.jpdf_real_sq
        return "lambda1,lambda2,density", zip(x, y, np.asarray(f(x, y)))
    raise UsageError(f"unknown table {what!r}")


def cmd_table(args):
    header, rows = build_table(args.what, ENSEMBLE_FLAGS[args.ensemble], args.grid, args.grid2)
    body = _fmt_rows(rows)
    with open(args.out, "w", newline="") as fh:
        fh.write(header + "\n")
        fh.write(body)
    return 0


# -- verify -------------------------------------------------------------------


def cmd_verify(args):
    report = run_suite(args.suite, seed=args.seed, mc_samples=args.mc_samples,
                       workers=args.workers, tolerance_scale=args.tolerance_scale)
    for check in report.checks:
        print(check.line())
    print("OVERALL:", "PASS" if report.passed else "FAIL")
    with open(args.out, "w") as fh:
        fh.write(report.to_json() + "\n")
    return 0 if report.passed else 1


# -- entry point --------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="splitmat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    seed_default = _default_seed()

    p = sub.add_parser("sample", help="sample an ensemble and write eigenvalues as CSV")
    p.add_argument("--ensemble", choices=sorted(ENSEMBLE_FLAGS), required=True)
    p.add_argument("--size", type=_positive_int, required=True)
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, default=seed_default)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("table", help="tabulate an analytic 2x2 density")
    p.add_argument("--what", choices=["r1-real", "r1-complex", "spacing", "jpdf"], required=True)
    p.add_argument("--ensemble", choices=["gsce", "gsqe"], required=True)
    p.add_argument("--grid", type=parse_grid, required=True)
    p.add_argument("--grid2", type=parse_grid, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the Monte Carlo verification suite")
    p.add_argument("--suite", choices=["fast", "full"], default="fast")
    p.add_argument("--seed", type=_seed, default=seed_default)
    p.add_argument("--mc-samples", type=_positive_int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    # test hook: multiplies every tolerance
    p.add_argument("--tolerance-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def _attach_negative_values(argv):
    # "--grid -3:3:601" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for arg in it:
        if arg in ("--grid", "--grid2"):
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"splitmat: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"splitmat: I/O error: {exc}", file=sys.stderr)
        return 1
    except SplitmatError as exc:
        print(f"splitmat: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
