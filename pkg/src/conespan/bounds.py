"""Closed-form spanning-ratio bounds for Yao graphs and reference constants."""

from __future__ import annotations

import math
from typing import Callable


class HypothesisError(ValueError):
    """An argument lies outside the range where a bound is proven."""


Y5_UPPER = 2.0 + math.sqrt(3.0)
# balances 1/(1 - 2 sin(x/2)) against 1/(1 - cos x)
Y5_THRESHOLD_ANGLE = math.acos(math.sqrt(3.0) - 1.0)
Y5_LOWER = 2.87
Y6_UPPER = 5.8
Y6_LOWER = 2.0
Y6_DELTA0 = 0.324

# published values for comparison only
THETA5_RANGE = (3.79, 9.96)
THETA6 = 2.0
Y6_PREVIOUS = 17.64
Y4_PREVIOUS = 663.0


def yao_odd_upper_bound(k: int) -> float:
    """``1 / (1 - 2 sin(3 theta / 8))`` with ``theta = 2 pi / k``, for odd ``k >= 5``."""
    if not isinstance(k, int) or k < 5 or k % 2 == 0:
        raise HypothesisError(f"theorem hypothesis violated: need odd k >= 5, got {k!r}")
    theta = 2.0 * math.pi / k
    return 1.0 / (1.0 - 2.0 * math.sin(3.0 * theta / 8.0))


def yao_general_upper_bound(k: int) -> float:
    """Earlier bound ``1 / (1 - 2 sin(theta / 2))``, valid for ``k > 6``."""
    if not isinstance(k, int) or k <= 6:
        raise HypothesisError(f"theorem hypothesis violated: need k > 6, got {k!r}")
    return 1.0 / (1.0 - 2.0 * math.sin(math.pi / k))


def triangle_ratio(alpha: float, beta: float) -> float:
    """``|ac| / (|ab| - |bc|)`` for a triangle with base angles ``alpha`` at a, ``beta`` at b."""
    if alpha < 0 or beta < 0:
        raise HypothesisError("angles must be nonnegative")
    if alpha + beta / 2.0 >= math.pi / 2.0:
        raise HypothesisError("ratio unbounded: alpha + beta/2 >= pi/2")
    return math.cos(beta / 2.0) / math.cos(alpha + beta / 2.0)


def triangle_ratio_dalpha(alpha: float, beta: float) -> float:
    return (math.sin(alpha) + math.sin(alpha + beta)) / (1.0 + math.cos(2.0 * alpha + beta))


def triangle_ratio_dbeta(alpha: float, beta: float) -> float:
    return math.sin(alpha) / (2.0 * math.cos(alpha + beta / 2.0) ** 2)


def y6_branches(delta: float) -> tuple[float, float]:
    """The two competing constraints whose maximum is the Y6 bound."""
    induct = math.cos(math.pi / 6.0 - delta / 2.0) / math.sin(delta / 2.0)
    close = 2.0 / (1.0 - math.sin(2.0 * delta) / math.sin(math.pi / 6.0 + 2.0 * delta))
    return induct, close


def y6_bound(delta: float) -> float:
    if not 0.0 < delta < math.pi / 9.0:
        raise HypothesisError(f"lemma hypothesis violated: need 0 < delta < pi/9, got {delta!r}")
    return max(y6_branches(delta))


def golden_section_min(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10, max_iter: int = 200
) -> float:
    """Minimiser of a unimodal ``f`` on ``[lo, hi]``."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def y6_optimal_delta(tol: float = 1e-10) -> float:
    eps = 1e-9
    return golden_section_min(y6_bound, eps, math.pi / 9.0 - eps, tol=tol)


def catalog() -> dict:
    """Every named constant, for reporting."""
    return {
        "y5_upper": Y5_UPPER,
        "y5_threshold_angle": Y5_THRESHOLD_ANGLE,
        "y5_lower": Y5_LOWER,
        "y5_odd_bound": yao_odd_upper_bound(5),
        "y6_upper": Y6_UPPER,
        "y6_lower": Y6_LOWER,
        "y6_delta0": Y6_DELTA0,
        "y6_bound_at_delta0": y6_bound(Y6_DELTA0),
        "theta5_range": list(THETA5_RANGE),
        "theta6": THETA6,
        "y6_previous": Y6_PREVIOUS,
        "y4_previous": Y4_PREVIOUS,
    }
