"""Iteration counts and MSE traces of the fixed-point solver.

Writes iterations.csv (q, delta, iterations, final_mse) plus one
mse_q<q>.csv trace and one solution_q<q>.csv per row.
"""
import argparse
import math
from pathlib import Path

from dacdist import solver
from dacdist.io import write_distribution, write_trace

GOLDEN = (math.sqrt(5) - 1) / 2
ROWS = [
    (0.51, 1e-4),
    (0.55, 1e-4),
    (GOLDEN, 1e-4),
    (1 / math.sqrt(2), 1e-10),
    (0.8, 1e-10),
    (0.9, 1e-10),
    (0.99, 1e-9),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--outdir", default="results/iterations")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    lines = ["q,delta,iterations,final_mse"]
    for q, delta in ROWS:
        d, rep = solver.solve(q, solver.SolverConfig(N=args.n, delta=delta))
        tag = f"{q:.6f}"
        write_trace(out / f"mse_q{tag}.csv", rep.mse_trace)
        write_distribution(out / f"solution_q{tag}.csv", d.grid, d.values)
        lines.append(f"{q:.9g},{delta:g},{rep.iterations},{rep.final_mse:.6g}")
        print(lines[-1])
    (out / "iterations.csv").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
