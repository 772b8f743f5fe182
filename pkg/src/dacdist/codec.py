"""Binary distributed arithmetic coding for equiprobable sources.

Symbol 0 maps onto the low fraction ``[0, q)`` of the current interval and
symbol 1 onto the high fraction ``[1 - q, 1)``.  With ``q > 0.5`` the two
sub-intervals overlap, so the decoder has to branch whenever the codeword
falls inside the overlap band and resolve the ambiguity with side
information.  The source bias ``p`` is fixed at 0.5 throughout.
"""
from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

# relative slack when checking q == 2**-gamma
_SPEC_RTOL = 1e-12


@dataclass(frozen=True)
class OverlapSpec:
    """Coding parameters ``(q, gamma)`` with ``q = 2**-gamma``.

    ``gamma`` is the overlap coefficient and equals the coding rate for an
    equiprobable binary source.  ``gamma == 1`` is classic arithmetic coding.
    """

    q: float
    gamma: float

    def __post_init__(self):
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in (0, 1], got {self.gamma}")
        if not 0.5 <= self.q < 1.0:
            raise ValueError(f"q must lie in [0.5, 1), got {self.q}")
        if not math.isclose(self.q, 2.0 ** -self.gamma, rel_tol=_SPEC_RTOL):
            raise ValueError(f"q={self.q} inconsistent with gamma={self.gamma}")

    @classmethod
    def from_q(cls, q: float) -> "OverlapSpec":
        if not 0.5 <= q < 1.0:
            raise ValueError(f"q must lie in [0.5, 1), got {q}")
        return cls(q=float(q), gamma=-math.log2(q))

    @classmethod
    def from_gamma(cls, gamma: float) -> "OverlapSpec":
        if not 0.0 < gamma <= 1.0:
            raise ValueError(f"gamma must lie in (0, 1], got {gamma}")
        return cls(q=2.0 ** -gamma, gamma=float(gamma))

    @property
    def rate(self) -> float:
        return self.gamma

    @property
    def is_classic(self) -> bool:
        return self.q == 0.5


SpecLike = Union[OverlapSpec, float]


def as_spec(spec: SpecLike) -> OverlapSpec:
    """Accept either an :class:`OverlapSpec` or a bare ``q``."""
    if isinstance(spec, OverlapSpec):
        return spec
    return OverlapSpec.from_q(float(spec))


@dataclass(frozen=True)
class IntervalState:
    """Coding interval ``[low, low + width)``."""

    low: float
    width: float

    def __post_init__(self):
        # an all-ones prefix can end a few ulps past 1.0
        if self.low < 0.0 or self.width <= 0.0 or self.low + self.width > 1.0 + 1e-12:
            raise ValueError(f"invalid interval [{self.low}, {self.low + self.width})")

    @property
    def high(self) -> float:
        return self.low + self.width


class Ternary(enum.Enum):
    """Decoder outcome for one symbol; ``AMBIGUOUS`` forces a branch."""

    ZERO = "0"
    AMBIGUOUS = "A"
    ONE = "1"


@dataclass(frozen=True)
class DecoderPath:
    symbols: tuple
    interval: IntervalState
    metric: int

    def __post_init__(self):
        if not 0 <= self.metric <= len(self.symbols):
            raise ValueError("metric must lie in [0, len(symbols)]")


def _step(low: float, width: float, bit: int, q: float):
    if bit:
        low += (1.0 - q) * width
    return low, width * q


def encode(bits: Sequence[int], spec: SpecLike) -> IntervalState:
    """Map ``bits`` onto their final coding interval."""
    spec = as_spec(spec)
    if len(bits) == 0:
        raise ValueError("empty sequence")
    low, width = 0.0, 1.0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        low, width = _step(low, width, b, spec.q)
    return IntervalState(low, width)


def encode_batch(bits: np.ndarray, spec: SpecLike) -> tuple[np.ndarray, float]:
    """Vectorised :func:`encode` over the rows of a 2-D 0/1 array.

    Performs the same floating-point operations, in the same order, as
    :func:`encode`, so each row's ``low`` is bit-identical to the scalar path.
    Returns ``(lows, width)``; the width depends only on the length.
    """
    spec = as_spec(spec)
    bits = np.asarray(bits)
    if bits.ndim != 2 or bits.shape[1] == 0:
        raise ValueError("expected a non-empty 2-D bit array")
    q = spec.q
    low = np.zeros(bits.shape[0])
    width = 1.0
    for k in range(bits.shape[1]):
        col = bits[:, k].astype(bool)
        low[col] += (1.0 - q) * width
        width *= q
    return low, width


def codeword_value(interval: IntervalState) -> float:
    """Representative codeword of an interval: its midpoint.

    The distance to any other point of the interval is at most ``width``.
    """
    return interval.low + interval.width / 2.0


def classify(u: float, spec: SpecLike) -> Ternary:
    """Decode one symbol from a codeword value ``u`` in ``[0, 1)``."""
    spec = as_spec(spec)
    if not 0.0 <= u < 1.0:
        raise ValueError(f"codeword value must lie in [0, 1), got {u}")
    if u < 1.0 - spec.q:
        return Ternary.ZERO
    if u < spec.q:
        return Ternary.AMBIGUOUS
    return Ternary.ONE


def hamming(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")
    return sum(x != y for x, y in zip(a, b))


_BELOW_ONE = math.nextafter(1.0, 0.0)


def _children(u: float, low: float, width: float, q: float):
    """Yield ``(bit, low, width)`` for each branch consistent with ``u``."""
    r = (u - low) / width
    # every live path contains u; clip away rounding at the edges
    r = min(max(r, 0.0), _BELOW_ONE)
    if r < 1.0 - q:
        bits = (0,)
    elif r < q:
        bits = (0, 1)
    else:
        bits = (1,)
    for b in bits:
        yield (b, *_step(low, width, b, q))


def decode(
    u: float,
    spec: SpecLike,
    side_info: Sequence[int],
    length: Optional[int] = None,
    M: Optional[int] = None,
) -> DecoderPath:
    """Recover the sequence closest to ``side_info`` that encodes to ``u``.

    With an integer ``M`` this is the M-algorithm: after each decoded symbol
    only the ``M`` paths with the smallest Hamming metric survive, ties
    broken by the lexicographic order of their symbols.  ``M=None`` keeps
    every path; it is run as a best-first search on ``(metric, symbols)``,
    which returns the same path as an unpruned breadth-first search without
    enumerating the whole tree.
    """
    spec = as_spec(spec)
    side = tuple(int(b) for b in side_info)
    if length is None:
        length = len(side)
    if length != len(side):
        raise ValueError(f"length {length} does not match side information ({len(side)})")
    if length < 1:
        raise ValueError("empty sequence")
    if M is not None and M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    if not 0.0 <= u < 1.0:
        raise ValueError(f"codeword value must lie in [0, 1), got {u}")

    if M is None:
        metric, symbols, low, width = _best_first(u, spec.q, side)
    else:
        metric, symbols, low, width = _m_algorithm(u, spec.q, side, M)
    return DecoderPath(symbols, IntervalState(low, width), metric)


def _m_algorithm(u, q, side, M):
    paths = [(0, (), 0.0, 1.0)]
    for i, y in enumerate(side):
        grown = []
        for metric, symbols, low, width in paths:
            for b, lo, w in _children(u, low, width, q):
                grown.append((metric + (b != y), symbols + (b,), lo, w))
        grown.sort(key=lambda p: (p[0], p[1]))
        paths = grown[:M]
    return paths[0]


def _best_first(u, q, side):
    n = len(side)
    heap = [(0, (), 0.0, 1.0)]
    while heap:
        metric, symbols, low, width = heapq.heappop(heap)
        i = len(symbols)
        if i == n:
            return metric, symbols, low, width
        y = side[i]
        for b, lo, w in _children(u, low, width, q):
            heapq.heappush(heap, (metric + (b != y), symbols + (b,), lo, w))
    raise RuntimeError("no decoding path contains the codeword")  # pragma: no cover
