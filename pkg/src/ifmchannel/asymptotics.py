"""
Large-N behaviour of the optimal loss probabilities.

Both the unconstrained loss minimum and the loss of the zero-error state
phi_+ share the leading term q (1+a)/(1-a) pi^2 / (4N). Residual orders are
estimated by log-log slope fits over a geometric ladder of N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import IfmParams
from .errors import NoZeroErrorStateError
from .optimal import min_ploss
from .transfer import coeffs, log_lambda_plus

PLUS_CLAIMED_ORDER = 3.0
MIN_CLAIMED_ORDER = 2.0


@dataclass(frozen=True)
class AsymptoticEstimate:
    n_cycles: int
    leading: float
    exact: float
    residual: float
    order_bound: float


def leading_term(p: IfmParams) -> float:
    return p.q * (1.0 + p.a) / (1.0 - p.a) * np.pi**2 / (4.0 * p.n_cycles)


def ploss_plus_exact(p: IfmParams) -> float:
    """Loss of phi_+, q (1 - lambda_+^{2N}), evaluated without cancellation."""
    if coeffs(p).k1 > 1.0 + 1e-12:
        raise NoZeroErrorStateError(f"k1 > 1 at N={p.n_cycles}, a={p.a}")
    return float(-p.q * np.expm1(2 * p.n_cycles * log_lambda_plus(p)))


def ploss_plus_asym(p: IfmParams) -> AsymptoticEstimate:
    exact = ploss_plus_exact(p)
    lead = leading_term(p)
    return AsymptoticEstimate(p.n_cycles, lead, exact, exact - lead, PLUS_CLAIMED_ORDER)


def ploss_min_asym(p: IfmParams) -> AsymptoticEstimate:
    exact = min_ploss(p).value
    lead = leading_term(p)
    return AsymptoticEstimate(p.n_cycles, lead, exact, exact - lead, MIN_CLAIMED_ORDER)


def theta1(p: IfmParams) -> float:
    tc = coeffs(p)
    return float(np.arctan2(tc.f1_scaled * tc.k1, tc.f2_scaled))


def theta2(p: IfmParams) -> float:
    k1 = coeffs(p).k1
    if k1 > 1.0 + 1e-12:
        raise NoZeroErrorStateError(f"theta2 undefined: k1 = {k1:.6g} > 1")
    k1 = min(k1, 1.0)
    return float(np.arctan2(k1, np.sqrt(1.0 - k1 * k1)))


def angles(p: IfmParams) -> tuple[float, float]:
    """(theta1, theta2): Bloch polar angles of phi_0 and phi_+ in the new basis."""
    return theta1(p), theta2(p)


def geometric_ladder(n_min: int, n_max: int, ratio: int = 2) -> list[int]:
    if n_min < 1 or n_max < n_min:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}, {n_max}")
    out = []
    n = n_min
    while n <= n_max:
        out.append(n)
        n *= ratio
    return out


def fit_order(ns, residuals) -> float:
    """Empirical exponent k in |residual| ~ C / N^k, from a least-squares log-log fit."""
    ns = np.asarray(ns, dtype=float)
    r = np.abs(np.asarray(residuals, dtype=float))
    slope = np.polyfit(np.log(ns), np.log(r), 1)[0]
    return float(-slope)
