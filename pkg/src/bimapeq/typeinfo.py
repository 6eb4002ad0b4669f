"""Node-type memory: flipping rate alpha versus retained type information."""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["type_entropy", "type_information", "info_to_alpha", "NodeTypeRate"]


def type_entropy(alpha: float) -> float:
    """Binary entropy H(1 - alpha, alpha) in bits.

    Zero at the endpoints, one at ``alpha = 1/2``.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if alpha == 0.0 or alpha == 1.0:
        return 0.0
    return -(1.0 - alpha) * math.log2(1.0 - alpha) - alpha * math.log2(alpha)


def type_information(alpha: float) -> float:
    """Bits of node-type information retained per step, ``1 - H(1-alpha, alpha)``."""
    return 1.0 - type_entropy(alpha)


def info_to_alpha(info: float) -> float:
    """Invert :func:`type_information` on the branch ``alpha <= 1/2``.

    Bisection to an interval below 1e-12; exact at both endpoints
    (``info=0`` gives 1/2, ``info=1`` gives 0).
    """
    if not 0.0 <= info <= 1.0:
        raise ValueError("info must lie in [0, 1]")
    if info == 0.0:
        return 0.5
    if info == 1.0:
        return 0.0
    lo, hi = 0.0, 0.5  # type_information decreases from 1 to 0 on this branch
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if type_information(mid) > info:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class NodeTypeRate:
    """A point on the type-memory dial, stored both ways for reporting."""

    alpha: float
    info: float

    @classmethod
    def from_alpha(cls, alpha: float) -> "NodeTypeRate":
        return cls(alpha=alpha, info=type_information(alpha))

    @classmethod
    def from_info(cls, info: float) -> "NodeTypeRate":
        return cls(alpha=info_to_alpha(info), info=info)
