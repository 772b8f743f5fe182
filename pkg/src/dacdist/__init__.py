"""Codeword distribution of distributed arithmetic coding for equiprobable binary sources."""

__version__ = "0.1.0"

from .codec import OverlapSpec, classify, codeword_value, decode, encode, hamming
from .solver import SolverConfig, solve
from .analytic import GaussianApprox, PiecewisePolyApprox, closed_form_sqrt2
from .empirical import SampleConfig, sample_histogram

__all__ = [
    "OverlapSpec",
    "classify",
    "codeword_value",
    "decode",
    "encode",
    "hamming",
    "SolverConfig",
    "solve",
    "GaussianApprox",
    "PiecewisePolyApprox",
    "closed_form_sqrt2",
    "SampleConfig",
    "sample_histogram",
]
