"""Analytic forms of the codeword density.

Three families live here:

* the exact density at ``q = 1/sqrt(2)``, a trapezoid;
* the piecewise power approximation for ``1/sqrt(2) <= q <= 0.85``, built
  from the base solution ``c * u**lam`` of ``f(u) = 2q f(qu)`` on
  ``[0, v1]`` and carried to ``[v1, 0.5]`` by ``f(u) = 2q f(qu) - f(u - v1)``;
* a normal curve centred at 0.5 whose variance is fixed by requiring
  ``q f(0.5) == f(0.5 / q)``.

Power approximations are evaluated on the left half ``[0, 0.5]``;
:meth:`PiecewisePolyApprox.density` mirrors them onto ``[0, 1]``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .codec import SpecLike, as_spec

SQRT2 = math.sqrt(2.0)
GOLDEN_Q = (math.sqrt(5.0) - 1.0) / 2.0
Q_SQRT2 = 1.0 / SQRT2
Q_CASE_B_MAX = math.sqrt(2.0 / 3.0)
Q_POLY_MAX = 0.85

# q given on the command line as 0.70710678 should still count as 1/sqrt(2)
Q_TOL = 1e-8

# recursion depth cap for the general evaluator
MAX_DEPTH = 64


def closed_form_sqrt2(u):
    """Exact density at ``q = 1/sqrt(2)``."""
    u_arr = np.asarray(u, dtype=float)
    if np.any((u_arr < 0) | (u_arr > 1)):
        raise ValueError("u must lie in [0, 1]")
    x = np.minimum(u_arr, 1.0 - u_arr)
    out = np.where(x <= SQRT2 - 1.0, x / (3.0 * SQRT2 - 4.0), 1.0 / (2.0 - SQRT2))
    return float(out) if np.ndim(u) == 0 else out


def lambda_of(spec: SpecLike) -> float:
    """Exponent of the base power law, ``(1 - gamma) / gamma``."""
    spec = as_spec(spec)
    return (1.0 - spec.gamma) / spec.gamma


def breakpoints(q: float, upto: float = 0.5) -> tuple:
    """``v_n = (1 - q) / q**n`` for every ``n >= 1`` with ``v_n < upto``."""
    out = []
    v = (1.0 - q) / q
    while v < upto:
        out.append(v)
        v /= q
    return tuple(out)


class CaseId(enum.Enum):
    """Which closed expression applies.

    ``A1``..``A4`` subtract one power term per breakpoint below 0.5 and
    cover ``1/sqrt(2) <= q <= 0.8``.  ``B`` adds the ``u - 2 v1``
    correction for ``0.8 < q <= sqrt(2/3)``.  ``RECURSIVE`` evaluates the
    functional recursion directly.
    """

    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    B = "B"
    RECURSIVE = "RECURSIVE"


_A_CASES = {1: CaseId.A1, 2: CaseId.A2, 3: CaseId.A3, 4: CaseId.A4}


def _check_poly_range(q: float):
    if not Q_SQRT2 - Q_TOL <= q <= Q_POLY_MAX:
        raise ValueError(
            f"power approximation supports {Q_SQRT2:.8f} <= q <= {Q_POLY_MAX}, got q={q}; "
            "use the numeric solver or the Gaussian approximation instead"
        )


def _shift_fits(v: tuple) -> bool:
    # u - v1 stays inside [0, v1] on the whole half; 1e-12 absorbs rounding at q = 0.8
    return 2 * v[0] >= 0.5 - 1e-12


def select_case(spec: SpecLike) -> CaseId:
    """Pick the explicit expression by comparing breakpoints against 0.5."""
    q = as_spec(spec).q
    _check_poly_range(q)
    v = breakpoints(q)
    if _shift_fits(v):
        return _A_CASES.get(len(v), CaseId.RECURSIVE)
    if 0.5 - v[0] <= v[0] / q:
        return CaseId.B
    return CaseId.RECURSIVE


def _explicit_terms(q: float, case_id: CaseId):
    """Signed shifts ``[(sign, s), ...]`` with ``f(u) = c * sum sign*(u - s)_+**lam``."""
    v = breakpoints(q)
    if case_id in _A_CASES.values():
        k = int(case_id.value[1])
        if len(v) != k or not _shift_fits(v):
            raise ValueError(f"case {case_id.value} does not apply at q={q}")
        return [(1.0, 0.0)] + [(-1.0, s) for s in v]
    if case_id is CaseId.B:
        if _shift_fits(v) or 0.5 - v[0] > v[0] / q:
            raise ValueError(f"case B does not apply at q={q}")
        return [(1.0, 0.0)] + [(-1.0, s) for s in v] + [(1.0, 2 * v[0])]
    raise ValueError(f"no explicit expression for {case_id}")


def poly_c(spec: SpecLike, case_id: CaseId | None = None) -> float:
    """Normalisation constant making the left half integrate to 0.5."""
    spec = as_spec(spec)
    _check_poly_range(spec.q)
    if case_id is None:
        case_id = select_case(spec)
    if case_id is CaseId.RECURSIVE:
        return 0.5 / _recursive_integral(np.array([0.5]), spec.q, lambda_of(spec))[0]
    inv_gamma = 1.0 / spec.gamma
    total = math.fsum(sign * (0.5 - s) ** inv_gamma for sign, s in _explicit_terms(spec.q, case_id))
    return 1.0 / (2.0 * spec.gamma * total)


def _recursive_base(u: np.ndarray, q: float, lam: float, factor: float, power: float, depth: int):
    """Shared recursion: ``g(u) = factor * g(q u) - g(u - v1)`` above ``v1``."""
    if depth > MAX_DEPTH:
        raise RecursionError("recursive evaluator exceeded its depth cap")
    v1 = (1.0 - q) / q
    out = np.zeros_like(u)
    low = (u > 0) & (u <= v1)
    out[low] = u[low] ** power
    high = u > v1
    if np.any(high):
        uh = u[high]
        out[high] = factor * _recursive_base(q * uh, q, lam, factor, power, depth + 1) - _recursive_base(
            uh - v1, q, lam, factor, power, depth + 1
        )
    return out


def _recursive_density(u: np.ndarray, q: float, lam: float) -> np.ndarray:
    return _recursive_base(u, q, lam, 2.0 * q, lam, 0)


def _recursive_integral(u: np.ndarray, q: float, lam: float) -> np.ndarray:
    """Antiderivative of the unit-``c`` recursive density; obeys ``G(u) = 2G(qu) - G(u - v1)``."""
    return _recursive_base(u, q, lam, 2.0, lam + 1.0, 0) / (lam + 1.0)


@dataclass(frozen=True)
class PiecewisePolyApprox:
    q: float
    gamma: float
    lam: float
    c: float
    breakpoints: tuple
    case_id: CaseId

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("normalisation constant must be positive")

    @classmethod
    def build(cls, spec: SpecLike, case_id: CaseId | None = None) -> "PiecewisePolyApprox":
        spec = as_spec(spec)
        if case_id is None:
            case_id = select_case(spec)
        return cls(
            q=spec.q,
            gamma=spec.gamma,
            lam=lambda_of(spec),
            c=poly_c(spec, case_id),
            breakpoints=breakpoints(spec.q),
            case_id=case_id,
        )

    def __call__(self, u):
        return poly_eval(self, u)

    def density(self, u):
        """Evaluate on ``[0, 1]`` using ``f(u) = f(1 - u)``."""
        u_arr = np.asarray(u, dtype=float)
        if np.any((u_arr < 0) | (u_arr > 1)):
            raise ValueError("u must lie in [0, 1]")
        return poly_eval(self, np.minimum(u_arr, 1.0 - u_arr))


def poly_eval(approx: PiecewisePolyApprox, u):
    """Evaluate the power approximation on the left half ``[0, 0.5]``."""
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(u_arr > 0.5) or np.any(u_arr < 0):
        raise ValueError("u must lie in [0, 0.5]; mirror the right half with f(u) = f(1 - u)")
    if approx.case_id is CaseId.RECURSIVE:
        out = approx.c * _recursive_density(u_arr, approx.q, approx.lam)
    else:
        out = np.zeros_like(u_arr)
        for sign, s in _explicit_terms(approx.q, approx.case_id):
            out += sign * np.clip(u_arr - s, 0.0, None) ** approx.lam
        out *= approx.c
    return float(out[0]) if np.ndim(u) == 0 else out


@dataclass(frozen=True)
class GaussianApprox:
    sigma2: float

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ValueError("sigma2 must be positive")

    @classmethod
    def build(cls, spec: SpecLike) -> "GaussianApprox":
        return cls(gaussian_sigma2(spec))

    @property
    def peak(self) -> float:
        return 1.0 / math.sqrt(2.0 * math.pi * self.sigma2)

    def __call__(self, u):
        return gaussian_eval(self, u)


def gaussian_sigma2(spec: SpecLike) -> float:
    """Variance matching ``q f(0.5) = f(0.5 / q)`` for a bell curve at 0.5."""
    q = as_spec(spec).q
    if not 0.5 < q < 1.0:
        raise ValueError(f"Gaussian variance needs 0.5 < q < 1, got {q}")
    return -((1.0 - q) ** 2) / (8.0 * q * q * math.log(q))


def gaussian_eval(approx: GaussianApprox, u):
    val = approx.peak * np.exp(-((np.asarray(u, dtype=float) - 0.5) ** 2) / (2.0 * approx.sigma2))
    return float(val) if np.ndim(val) == 0 else val


def high_rate_zeros(spec: SpecLike, n_max: int) -> np.ndarray:
    """Left-half zeros ``q**n / (q + 1)``, ``n = 1..n_max``, of the high-rate density.

    Their mirrors ``1 - q**n / (q + 1)`` are zeros as well.
    """
    q = as_spec(spec).q
    if not 0.5 < q <= GOLDEN_Q + 1e-12:
        raise ValueError("zeros only proved for high rates: need 0.5 < q <= (sqrt(5)-1)/2")
    n = np.arange(1, n_max + 1)
    return q**n / (q + 1.0)
