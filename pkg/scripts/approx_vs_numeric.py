"""Overlay data for the analytic approximations against the numeric solution.

For each q writes <method>_q<q>.csv with columns u, numeric, approx and
prints LINF/peak.  Power approximation: q in {1/sqrt(2), 0.725, 0.75,
0.775, 0.8}.  Gaussian: q in {0.85, 0.9, 0.95, 0.99}.
"""
import argparse
import math
from pathlib import Path

import numpy as np

from dacdist import solver
from dacdist.analytic import GaussianApprox, PiecewisePolyApprox

POLY_QS = (1 / math.sqrt(2), 0.725, 0.75, 0.775, 0.8)
GAUSS_QS = (0.85, 0.9, 0.95, 0.99)


def overlay(method, q, n, stride, out):
    d, _ = solver.solve(q, solver.SolverConfig(N=n, delta=solver.default_delta(q)))
    u = d.grid
    approx = PiecewisePolyApprox.build(q).density(u) if method == "poly" else GaussianApprox.build(q)(u)
    err = np.max(np.abs(d.values - approx)) / d.peak
    rows = ["u,numeric,approx"] + [
        f"{u[i]:.9f},{d.values[i]:.12g},{approx[i]:.12g}" for i in range(0, n + 1, stride)
    ]
    (out / f"{method}_q{q:.6f}.csv").write_text("\n".join(rows) + "\n")
    print(f"{method} q={q:.6g} LINF/peak={err:.4f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--stride", type=int, default=100, help="keep every stride-th grid point in the CSV")
    ap.add_argument("--outdir", default="results/approx")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for q in POLY_QS:
        overlay("poly", q, args.n, args.stride, out)
    for q in GAUSS_QS:
        overlay("gauss", q, args.n, args.stride, out)


if __name__ == "__main__":
    main()
