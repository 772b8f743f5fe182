"""Command-line front end.

    dacdist solve   --q 0.8 --n 100000 --delta 1e-10
    dacdist approx  poly --q 0.75 --grid 100000
    dacdist sample  --q 0.8 --samples 1000000 --bins 200 --seed 42
    dacdist compare numeric.csv poly.csv --metrics L1,LINF

Exit codes: 0 ok, 2 usage or domain error, 3 solver did not converge.
Outputs default to ``$DACDIST_OUTDIR`` (or the working directory).
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import analytic, empirical, solver
from .codec import OverlapSpec
from .io import RunManifest, manifest_path, read_distribution, write_distribution, write_trace

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGED = 0, 2, 3


class UsageError(Exception):
    pass


def _outdir() -> Path:
    return Path(os.environ.get("DACDIST_OUTDIR", "."))


def _out_path(arg, default_name: str) -> Path:
    return Path(arg) if arg else _outdir() / default_name


def _spec(q: float) -> OverlapSpec:
    if not 0.5 <= q < 1.0:
        raise UsageError(f"q must lie in [0.5, 1), got {q}")
    return OverlapSpec.from_q(q)


def _gnuplot(csv_path: Path) -> Path:
    gp = csv_path.with_suffix(".gp")
    gp.write_text(
        "set datafile separator ','\n"
        "set key off\nset xlabel 'u'\nset ylabel 'f(u)'\n"
        f"plot '{csv_path.name}' every ::1 using 1:2 with lines\n"
    )
    return gp


def _finish(args, out: Path, extra: list, params: dict) -> None:
    outputs = [out, *extra]
    if args.gnuplot:
        outputs.append(_gnuplot(out))
    man = manifest_path(out)
    RunManifest(args.command, params, [str(p) for p in outputs]).write(man)
    print(f"wrote {out} (manifest {man})")


def cmd_solve(args) -> int:
    spec = _spec(args.q)
    delta = args.delta if args.delta is not None else solver.default_delta(spec.q)
    try:
        config = solver.SolverConfig(N=args.n, delta=delta, max_iters=args.max_iters)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    dist, report = solver.solve(spec, config)
    out = _out_path(args.out, f"solve_q{spec.q:.6f}_n{config.N}.csv")
    write_distribution(out, dist.grid, dist.values)
    trace = write_trace(out.with_name(out.stem + "_mse.csv"), report.mse_trace)
    params = {"q": repr(spec.q), "n": config.N, "delta": repr(delta), "max_iters": config.max_iters}
    _finish(args, out, [trace], params)
    print(f"iterations={report.iterations} final_mse={report.final_mse:.6g} converged={report.converged}")
    return EXIT_OK if report.converged else EXIT_NONCONVERGED


def _approx_values(method: str, q: float, u: np.ndarray) -> np.ndarray:
    if method == "closed":
        if abs(q - analytic.Q_SQRT2) > analytic.Q_TOL:
            raise UsageError(f"closed form exists only at q = 1/sqrt(2) = {analytic.Q_SQRT2:.8f}, got q={q}")
        return analytic.closed_form_sqrt2(u)
    if method == "poly":
        if not analytic.Q_SQRT2 - analytic.Q_TOL <= q <= analytic.Q_POLY_MAX:
            raise UsageError(f"poly needs {analytic.Q_SQRT2:.8f} <= q <= {analytic.Q_POLY_MAX}, got q={q}")
        return analytic.PiecewisePolyApprox.build(q).density(u)
    if not 0.5 < q < 1.0:
        raise UsageError(f"gauss needs 0.5 < q < 1, got q={q}")
    return analytic.GaussianApprox.build(q)(u)


def cmd_approx(args) -> int:
    if args.grid < 2:
        raise UsageError("grid must be >= 2")
    u = np.arange(args.grid + 1) / args.grid
    f = _approx_values(args.method, args.q, u)
    out = _out_path(args.out, f"approx_{args.method}_q{args.q:.6f}_g{args.grid}.csv")
    write_distribution(out, u, f)
    _finish(args, out, [], {"method": args.method, "q": repr(args.q), "grid": args.grid})
    return EXIT_OK


def cmd_sample(args) -> int:
    spec = _spec(args.q)
    try:
        config = empirical.SampleConfig(args.samples, args.seq_len, args.seed, args.bins)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    hist = empirical.sample_histogram(spec, config, workers=args.workers)
    out = _out_path(args.out, f"sample_q{spec.q:.6f}_s{config.samples}_b{config.bins}_seed{config.seed}.csv")
    write_distribution(out, hist.centers, hist.density)
    params = {
        "q": repr(spec.q),
        "samples": config.samples,
        "bins": config.bins,
        "seed": config.seed,
        "seq_len": config.seq_len or empirical.auto_seq_len(spec),
    }
    _finish(args, out, [], params)
    return EXIT_OK


def _downsample(u_src, f_src, u_dst) -> np.ndarray:
    """Average source points over the cells around each target point."""
    mids = (u_dst[1:] + u_dst[:-1]) / 2
    lo = u_dst[0] - (u_dst[1] - u_dst[0]) / 2
    hi = u_dst[-1] + (u_dst[-1] - u_dst[-2]) / 2
    keep = (u_src >= lo - 1e-12) & (u_src < hi - 1e-12)
    cell = np.searchsorted(mids, u_src[keep], side="right")
    counts = np.bincount(cell, minlength=u_dst.size)
    if np.any(counts == 0):
        raise UsageError("source grid too coarse to downsample onto the target grid")
    return np.bincount(cell, weights=f_src[keep], minlength=u_dst.size) / counts


def cmd_compare(args) -> int:
    ua, fa = read_distribution(args.path_a)
    ub, fb = read_distribution(args.path_b)
    if ua.size != ub.size or not np.allclose(ua, ub, atol=1e-9):
        if not args.downsample:
            raise UsageError(f"grids differ ({ua.size} vs {ub.size} points); pass --downsample")
        if ua.size > ub.size:
            fa, ua = _downsample(ua, fa, ub), ub
            print(f"downsampled {args.path_a} by bin-averaging onto {ub.size} points")
        else:
            fb, ub = _downsample(ub, fb, ua), ua
            print(f"downsampled {args.path_b} by bin-averaging onto {ua.size} points")
    peak = float(max(fa.max(), fb.max()))
    print(f"points={ua.size} peak={peak:.9g}")
    for m in args.metrics.split(","):
        try:
            d = empirical.distance(fa, fb, m)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        line = f"{m.upper()}={d:.9g}"
        if m.upper() != "MSE":
            line += f" {m.upper()}/peak={d / peak:.9g}"
        print(line)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dacdist", description="DAC codeword distribution toolkit")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="fixed-point numeric solution")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--n", type=int, default=100_000)
    s.add_argument("--delta", type=float, default=None, help="default depends on q")
    s.add_argument("--max-iters", type=int, default=10_000)
    s.set_defaults(func=cmd_solve)

    a = sub.add_parser("approx", help="analytic approximation on a uniform grid")
    a.add_argument("method", choices=("poly", "gauss", "closed"))
    a.add_argument("--q", type=float, required=True)
    a.add_argument("--grid", type=int, default=1000)
    a.set_defaults(func=cmd_approx)

    m = sub.add_parser("sample", help="Monte Carlo histogram of encoded codewords")
    m.add_argument("--q", type=float, required=True)
    m.add_argument("--samples", type=int, default=1_000_000)
    m.add_argument("--bins", type=int, default=200)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--seq-len", type=int, default=None, help="default: auto")
    m.add_argument("--workers", type=int, default=1)
    m.set_defaults(func=cmd_sample)

    for sp in (s, a, m):
        sp.add_argument("--out", default=None, help="CSV path")
        sp.add_argument("--gnuplot", action="store_true", help="also write a gnuplot script")

    c = sub.add_parser("compare", help="distance between two distribution CSVs")
    c.add_argument("path_a")
    c.add_argument("path_b")
    c.add_argument("--metrics", default="L1,MSE,LINF")
    c.add_argument("--downsample", action="store_true")
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dacdist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
