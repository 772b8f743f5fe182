"""Monte Carlo estimate of the codeword density.

Random equiprobable sequences are encoded with the codec and the interval
midpoints histogrammed on ``[0, 1)``.  This path shares nothing with the
fixed-point solver or the analytic forms, so it serves as their oracle.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .codec import SpecLike, as_spec, encode_batch

# samples per random stream; fixed so results do not depend on worker count
CHUNK = 1 << 16
MAX_SEQ_LEN = 4096
TRUNCATION = 1e-12


@dataclass(frozen=True)
class SampleConfig:
    samples: int
    seq_len: Optional[int] = None  # None: auto_seq_len
    seed: int = 0
    bins: int = 100

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.bins < 2:
            raise ValueError("bins must be >= 2")
        if self.seq_len is not None and self.seq_len < 1:
            raise ValueError("seq_len must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class Histogram:
    bins: int
    counts: np.ndarray
    density: np.ndarray

    @classmethod
    def from_counts(cls, counts) -> "Histogram":
        counts = np.asarray(counts, dtype=np.int64)
        bins = counts.size
        return cls(bins, counts, counts * (bins / counts.sum()))

    @property
    def samples(self) -> int:
        return int(self.counts.sum())

    @property
    def centers(self) -> np.ndarray:
        return (np.arange(self.bins) + 0.5) / self.bins


def auto_seq_len(spec: SpecLike) -> int:
    """Shortest length whose final interval width ``q**L`` is at most 1e-12."""
    q = as_spec(spec).q
    L = max(1, math.ceil(math.log(TRUNCATION) / math.log(q)))
    # guard against log rounding on either side of the boundary
    while q**L > TRUNCATION:
        L += 1
    while L > 1 and q ** (L - 1) <= TRUNCATION:
        L -= 1
    return min(L, MAX_SEQ_LEN)


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def codeword_samples(spec: SpecLike, n: int, seq_len: int, seed: int, index: int = 0) -> np.ndarray:
    """Midpoint codewords of ``n`` random sequences from stream ``index``."""
    bits = _chunk_rng(seed, index).integers(0, 2, size=(n, seq_len), dtype=np.uint8)
    low, width = encode_batch(bits, spec)
    return low + width / 2.0


def sample_histogram(spec: SpecLike, config: SampleConfig, workers: int = 1) -> Histogram:
    spec = as_spec(spec)
    L = config.seq_len or auto_seq_len(spec)
    n_chunks = -(-config.samples // CHUNK)

    def run(index: int) -> np.ndarray:
        n = min(CHUNK, config.samples - index * CHUNK)
        u = codeword_samples(spec, n, L, config.seed, index)
        cells = np.minimum((u * config.bins).astype(np.int64), config.bins - 1)
        return np.bincount(cells, minlength=config.bins)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(n_chunks)))
    else:
        parts = [run(i) for i in range(n_chunks)]
    return Histogram.from_counts(np.sum(parts, axis=0))


def bin_average(values, bins: int) -> np.ndarray:
    """Average node samples ``values[n] ~ f(n/N)`` over ``bins`` half-open cells of ``[0, 1)``.

    The node at ``u = 1`` lies outside every cell and is dropped.
    """
    values = np.asarray(values, dtype=float)
    N = values.size - 1
    if N < bins:
        raise ValueError(f"cannot average {N + 1} nodes into {bins} bins")
    cell = (np.arange(N) * bins) // N
    sums = np.bincount(cell, weights=values[:N], minlength=bins)
    return sums / np.bincount(cell, minlength=bins)


METRICS = ("L1", "MSE", "LINF")


def distance(a, b, metric: str = "L1") -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"size mismatch: {a.shape} != {b.shape}")
    d = np.abs(a - b)
    metric = metric.upper()
    if metric == "L1":
        return float(d.mean())
    if metric == "MSE":
        return float(np.mean(d * d))
    if metric == "LINF":
        return float(d.max())
    raise ValueError(f"unknown metric {metric!r}; choose from {METRICS}")
