"""Fixed-point iteration for the codeword distribution on a uniform grid.

The density ``f`` on ``[0, 1]`` is sampled at ``u = n / N`` for
``n = 0..N``.  Each sweep rebuilds the left part of the grid from the
previous iterate using the self-similarity of ``f`` (the codeword of the
tail sequence, squeezed by ``q``), mirrors it onto the right part,
renormalizes so the samples sum to ``N`` and stops once the mean squared
change between sweeps drops below ``delta``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .codec import OverlapSpec, SpecLike, as_spec

log = logging.getLogger(__name__)

MIN_CELLS = 100


@dataclass(frozen=True)
class DiscretizedDistribution:
    """Samples ``values[n] ~ f(n / N)``, ``n = 0..N``."""

    N: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.N + 1,):
            raise ValueError(f"expected {self.N + 1} values, got shape {values.shape}")
        if np.any(values < 0):
            raise ValueError("distribution values must be nonnegative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def delta_u(self) -> float:
        return 1.0 / self.N

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.N + 1) / self.N

    @property
    def peak(self) -> float:
        return float(self.values.max())

    def at(self, u: float) -> float:
        """Value at the grid node nearest to ``u``."""
        return float(self.values[clamped_round(u * self.N, 0, self.N)])


@dataclass(frozen=True)
class SolverConfig:
    N: int = 100_000
    delta: float = 1e-10
    max_iters: int = 10_000

    def __post_init__(self):
        if self.N < MIN_CELLS:
            raise ValueError(f"N must be >= {MIN_CELLS}, got {self.N}")
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass
class SolverReport:
    iterations: int
    final_mse: float
    mse_trace: list = field(default_factory=list)
    converged: bool = True


def default_delta(q: float) -> float:
    """Termination thresholds used for the published iteration counts."""
    if q <= (math.sqrt(5) - 1) / 2:
        return 1e-4
    if q < 1 / math.sqrt(2) or q >= 0.99:
        return 1e-9
    return 1e-10


def round_half_away(x):
    """Nearest integer, halves rounded away from zero (scalar or array)."""
    return np.copysign(np.floor(np.abs(x) + 0.5), x)


def clamped_round(x: float, a: int, b: int) -> int:
    """``round(x)`` clamped into ``[a, b]``."""
    if not a < b:
        raise ValueError("need a < b")
    return int(min(max(round_half_away(x), a), b))


def _clamped_round_array(x: np.ndarray, a: int, b: int) -> np.ndarray:
    return np.clip(round_half_away(x), a, b).astype(np.int64)


def init_uniform(N: int) -> DiscretizedDistribution:
    if N < MIN_CELLS:
        raise ValueError(f"N must be >= {MIN_CELLS}, got {N}")
    return DiscretizedDistribution(N, np.ones(N + 1))


def split_points(N: int, q: float) -> tuple[int, int]:
    """``(L, H)``: last node left of the overlap band and first node right of it."""
    x = N * q
    # 10 * 0.7 evaluates to 7.000000000000001; treat near-integers as exact
    H = round(x) if abs(x - round(x)) < 1e-9 else math.ceil(x)
    return N - H, H


class _Stencil:
    """Index maps for one ``(N, q)``; reused across sweeps.

    Nodes ``n <= N // 2`` are computed from ``prev``; every node right of
    the centre is copied from its mirror image.  Mirroring only ``n >= H``
    would leave the right half of the overlap band to independent index
    rounding and break exact symmetry.
    """

    def __init__(self, N: int, q: float):
        self.N, self.q = N, q
        self.L, self.H = split_points(N, q)
        self.half = N // 2
        n = np.arange(self.half + 1)
        self.scaled = _clamped_round_array(n / q, 0, N)
        self.band = slice(self.L + 1, self.half + 1)
        self.shifted = _clamped_round_array((n[self.band] - self.L) / q, 0, N)
        self.mirror = N - np.arange(self.half + 1, N + 1)

    def apply(self, prev: np.ndarray) -> np.ndarray:
        h = self.half + 1
        new = np.empty_like(prev)
        new[:h] = prev[self.scaled]
        new[self.band] += prev[self.shifted]
        new[:h] /= 2 * self.q
        new[h:] = new[self.mirror]
        return new


def iterate_once(prev: DiscretizedDistribution, spec: SpecLike) -> DiscretizedDistribution:
    """One Jacobi sweep: the left half reads only ``prev``, the right half mirrors it."""
    spec = as_spec(spec)
    return DiscretizedDistribution(prev.N, _Stencil(prev.N, spec.q).apply(prev.values))


def normalize(dist: DiscretizedDistribution) -> DiscretizedDistribution:
    """Rescale so the samples sum to ``N``."""
    total = math.fsum(dist.values)
    if not total > 0:
        raise ValueError("degenerate distribution")
    return DiscretizedDistribution(dist.N, dist.values * (dist.N / total))


def mse(a: DiscretizedDistribution, b: DiscretizedDistribution) -> float:
    if a.N != b.N:
        raise ValueError(f"grid size mismatch: {a.N} != {b.N}")
    d = a.values - b.values
    return float(np.dot(d, d)) / (a.N + 1)


def solve(spec: SpecLike, config: SolverConfig = SolverConfig()):
    """Iterate from the uniform density until successive MSE < ``delta``.

    Returns ``(distribution, report)``.  Hitting ``max_iters`` is not an
    error; ``report.converged`` is False and the last iterate is returned.
    """
    spec = as_spec(spec)
    stencil = _Stencil(config.N, spec.q)
    dist = init_uniform(config.N)
    trace = []
    for t in range(1, config.max_iters + 1):
        nxt = normalize(DiscretizedDistribution(config.N, stencil.apply(dist.values)))
        err = mse(nxt, dist)
        trace.append(err)
        dist = nxt
        if err < config.delta:
            log.debug("q=%g converged after %d iterations (mse=%.3g)", spec.q, t, err)
            return dist, SolverReport(t, err, trace, True)
    log.warning("q=%g did not converge in %d iterations (mse=%.3g)", spec.q, config.max_iters, trace[-1])
    return dist, SolverReport(config.max_iters, trace[-1], trace, False)
