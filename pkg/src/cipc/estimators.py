"""Cardinality estimates from the rightmost-zero index of a register."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .errors import Saturated
from .hashing import MAX_REGISTER_BITS, MIN_REGISTER_BITS, check_register_bits
from .sketch import Sketch

PHI = 0.77351


def _check_k(k: int, L: int) -> None:
    check_register_bits(L)
    if not 0 <= k <= L:
        raise ValueError(f"rightmost-zero index {k} outside [0, {L}]")


def estimate_pc(k: int, L: int, *, empty: bool = False) -> float:
    """Flajolet-Martin estimate ``2**k / PHI``; 0 for a register never written."""
    _check_k(k, L)
    if empty:
        return 0.0
    return 2.0**k / PHI


def cipc_unfloored(k: int, L: int) -> float:
    """Real-valued solution of ``M = 2**k + expected_collisions(M, L)``.

    Evaluated as ``log1p(-2**(k-L)) / log1p(-2**-L)``.
    """
    _check_k(k, L)
    if k == L:
        raise Saturated(f"register of width {L} is saturated; rebuild with a larger L")
    return math.log1p(-(2.0 ** (k - L))) / math.log1p(-(2.0**-L))


def estimate_cipc(k: int, L: int, *, empty: bool = False) -> int:
    """Collision-included estimate, floored to an integer."""
    _check_k(k, L)
    if empty:
        return 0
    return math.floor(cipc_unfloored(k, L))


def expected_collisions(M: float, L: int) -> float:
    """Expected number of collisions when ``M`` values land uniformly in ``2**L`` slots.

    ``M`` may be real (used when checking the estimator's fixed point).
    """
    check_register_bits(L)
    if M < 0:
        raise ValueError("M must be non-negative")
    if M == 0 or M == 1:
        return 0.0
    # M - 2^L + 2^L (1 - 2^-L)^M, rearranged to avoid cancellation
    return M + 2.0**L * math.expm1(M * math.log1p(-(2.0**-L)))


def recommend_register_size(expected_M: int) -> int:
    if expected_M < 1:
        raise ValueError("expected count must be at least 1")
    L = int(expected_M).bit_length() - 1 + 2
    return max(MIN_REGISTER_BITS, min(MAX_REGISTER_BITS, L))


@dataclass(frozen=True)
class EstimateReport:
    L: int
    k: int
    raw_indicator: float
    pc_estimate: float
    cipc_estimate: Optional[float]
    cipc_floor: Optional[int]
    saturated: bool
    empty: bool

    def to_dict(self) -> dict:
        return asdict(self)


def estimate(sk: Sketch) -> EstimateReport:
    L = sk.L
    k = sk.rightmost_zero()
    empty = sk.is_empty
    saturated = k == L
    if saturated:
        cipc_real, cipc_floor = None, None
    elif empty:
        cipc_real, cipc_floor = 0.0, 0
    else:
        cipc_real = cipc_unfloored(k, L)
        cipc_floor = math.floor(cipc_real)
    return EstimateReport(
        L=L,
        k=k,
        raw_indicator=float(2**k),
        pc_estimate=estimate_pc(k, L, empty=empty),
        cipc_estimate=cipc_real,
        cipc_floor=cipc_floor,
        saturated=saturated,
        empty=empty,
    )
