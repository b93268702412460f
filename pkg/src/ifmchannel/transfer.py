"""
Pure-state transfer matrices and the closed form of their N-th power.

In the (|1>, |2>) block a pure input is mapped by

    present:  T = [diag(1, a) R_theta]^N
    absent:   D = R_theta^N = [[0, -1], [1, 0]]

Rotating the basis by U = exp(-i sigma_y theta / 2) turns the single-cycle
matrix into C1 = ((1-a)/2) (sigma_z - i k1 sigma_y + k2 I), whose N-th power
is ((1-a)/2)^N [f1 (sigma_z - i k1 sigma_y) + f2 I].

Numerically the bare f1, f2 overflow long before N reaches 10^4, so
everything downstream works with the scaled coefficients
``f1_scaled = ((1-a)/2)^N f1`` and ``f2_scaled = ((1-a)/2)^N f2``. They are
built from the eigenvalues lambda_pm = ((1-a)/2)(k2 +- sqrt(1-k1^2)) of C1,
using lambda_+ lambda_- = a and |lambda_pm| = sqrt(a) (k1 > 1) to avoid
cancellation.

States returned by ``to_new_basis`` / ``to_old_basis`` are plain arrays; the
caller keeps track of which basis a vector is expressed in.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb

import numpy as np

from .channels import IfmParams
from .errors import DegenerateTransparencyError
from .smallmat import I2, SIGMA_Y, SIGMA_Z

CRITICAL_EPS = 1e-9
A_MAX = 1.0 - 1e-12

D_ABSENT = np.array([[0, -1], [1, 0]], dtype=complex)


class Regime(enum.Enum):
    SUB = "SUB"
    CRITICAL = "CRITICAL"
    SUPER = "SUPER"


def single_cycle(p: IfmParams) -> np.ndarray:
    """One cycle in the old basis: rotation followed by the surviving-amplitude filter."""
    c, s = np.cos(p.theta), np.sin(p.theta)
    rot = np.array([[c, -s], [s, c]], dtype=complex)
    return np.diag([1.0, p.a]).astype(complex) @ rot


def transfer_present(p: IfmParams, method: str = "power") -> np.ndarray:
    """
    ``[diag(1, a) R_theta]^N`` in the old (|1>, |2>) basis.

    ``method="loop"`` multiplies the N factors one at a time; the default uses
    binary powering. Valid for every a in [0, 1].
    """
    c0 = single_cycle(p)
    if method == "power":
        return np.linalg.matrix_power(c0, p.n_cycles)
    if method == "loop":
        out = np.eye(2, dtype=complex)
        for _ in range(p.n_cycles):
            out = c0 @ out
        return out
    raise ValueError(f"unknown method {method!r}")


def transfer_absent() -> np.ndarray:
    return D_ABSENT.copy()


def basis_change(theta: float) -> np.ndarray:
    """U = exp(-i sigma_y theta/2), a real rotation by theta/2."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def to_new_basis(psi, theta: float) -> np.ndarray:
    return basis_change(theta) @ np.asarray(psi, dtype=complex)


def to_old_basis(psi, theta: float) -> np.ndarray:
    return basis_change(theta).conj().T @ np.asarray(psi, dtype=complex)


def k_values(p: IfmParams) -> tuple[float, float]:
    if p.a >= A_MAX:
        raise DegenerateTransparencyError(
            f"a = {p.a!r} is too close to 1 for the closed form; use the channel path"
        )
    ratio = (1.0 + p.a) / (1.0 - p.a)
    return ratio * np.sin(p.theta), ratio * np.cos(p.theta)


def c1_formula(p: IfmParams) -> np.ndarray:
    """Single cycle in the new basis, written out in Pauli form."""
    k1, k2 = k_values(p)
    return 0.5 * (1.0 - p.a) * (SIGMA_Z - 1j * k1 * SIGMA_Y + k2 * I2)


def classify(k1: float) -> Regime:
    delta = 1.0 - k1 * k1
    if abs(delta) <= CRITICAL_EPS:
        return Regime.CRITICAL
    return Regime.SUB if delta > 0 else Regime.SUPER


def log_lambda_plus(p: IfmParams) -> float:
    """
    log of the larger eigenvalue of C1 when k1 <= 1, accurate even when it is close to 1.

    lambda_+ = ((1+a) cos(theta) + R) / 2 with R = sqrt((1-a)^2 - (1+a)^2 sin^2(theta)).
    """
    a, th = p.a, p.theta
    x = ((1.0 + a) * np.sin(th)) ** 2
    r2 = (1.0 - a) ** 2 - x
    if r2 < 0:
        if r2 < -CRITICAL_EPS * (1.0 - a) ** 2:
            raise ValueError("lambda_+ is complex for k1 > 1")
        r2 = 0.0
    r = np.sqrt(r2)
    # lambda_+ - 1 = -[(1+a)(1 - cos th) + ((1-a) - R)] / 2
    gap = (1.0 + a) * 2.0 * np.sin(th / 2) ** 2 + x / ((1.0 - a) + r)
    return float(np.log1p(-0.5 * gap))


@dataclass(frozen=True)
class TransferCoeffs:
    """
    Coefficients of the closed-form N-th power of the single-cycle matrix.

    ``f1``, ``f2``, ``sigma1``, ``sigma2`` are the bare binomial sums; they can
    overflow to ``inf`` for large N. ``f1_scaled`` and ``f2_scaled`` carry the
    ((1-a)/2)^N prefactor and are always finite. ``sigma1`` is purely
    imaginary when k1 > 1.
    """

    n_cycles: int
    a: float
    k1: float
    k2: float
    sigma1: complex
    sigma2: float
    f1: float
    f2: float
    f1_scaled: float
    f2_scaled: float
    prefactor_base: float
    regime: Regime

    @property
    def prefactor(self) -> float:
        return self.prefactor_base**self.n_cycles


def _scaled_sub(n: int, a: float, k1: float, k2: float, log_lp: float) -> tuple[float, float]:
    s = np.sqrt(1.0 - k1 * k1)
    lp = np.exp(log_lp)
    half = 0.5 * (1.0 - a)
    # (1 - r^N) / (1 - r) with r = lambda_- / lambda_+ = a / lambda_+^2
    r = a / (lp * lp)
    lm_n = (a / lp) ** n
    if r < 0.5:
        ratio = -np.expm1(n * np.log(r)) / (1.0 - r) if r > 0.0 else 1.0
    else:
        # near the boundary r -> 1; 1 - r is formed without cancellation
        log_r = np.log1p(-(1.0 - a) * s / lp)
        ratio = np.expm1(n * log_r) / np.expm1(log_r)
    lp_n = np.exp(n * log_lp)
    f1s = np.exp((n - 1) * log_lp) * half * ratio
    f2s = 0.5 * (lp_n + lm_n)
    return float(f1s), float(f2s)


def _scaled_super(n: int, a: float, k1: float, k2: float) -> tuple[float, float]:
    t = np.sqrt(k1 * k1 - 1.0)
    phi = np.arctan2(t, k2)
    half = 0.5 * (1.0 - a)
    # |lambda_pm| = sqrt(a)
    f1s = a ** (0.5 * (n - 1)) * half * np.sin(n * phi) / np.sin(phi)
    f2s = a ** (0.5 * n) * np.cos(n * phi)
    return float(f1s), float(f2s)


def _scaled_critical(n: int, a: float, k1: float, k2: float) -> tuple[float, float]:
    # binomial expansion around 1 - k1^2 = 0, kept to first order
    delta = 1.0 - k1 * k1
    half = 0.5 * (1.0 - a)
    mu = half * k2
    f1s = half * (n * mu ** (n - 1))
    f2s = mu**n
    if n >= 2:
        f2s += comb(n, 2) * delta * half**2 * mu ** (n - 2)
    if n >= 3:
        f1s += half * comb(n, 3) * delta * half**2 * mu ** (n - 3)
    return float(f1s), float(f2s)


def coeffs(p: IfmParams) -> TransferCoeffs:
    """
    Closed-form coefficients for the N-cycle transfer matrix.

    Raises
    ------
    DegenerateTransparencyError
        For a >= 1 - 1e-12, where k1 and k2 blow up.
    """
    k1, k2 = k_values(p)
    n, a = p.n_cycles, p.a
    regime = classify(k1)
    if regime is Regime.SUB:
        f1s, f2s = _scaled_sub(n, a, k1, k2, log_lambda_plus(p))
    elif regime is Regime.SUPER:
        f1s, f2s = _scaled_super(n, a, k1, k2)
    else:
        f1s, f2s = _scaled_critical(n, a, k1, k2)

    base = 0.5 * (1.0 - a)
    with np.errstate(over="ignore"):
        unscale = np.exp(-n * np.log(base))
        f1 = f1s * unscale
        f2 = f2s * unscale
    if regime is Regime.SUPER:
        sigma1 = 1j * f1 * np.sqrt(k1 * k1 - 1.0)
    elif regime is Regime.CRITICAL:
        sigma1 = 0j
    else:
        sigma1 = complex(f1 * np.sqrt(1.0 - k1 * k1))
    return TransferCoeffs(
        n_cycles=n,
        a=a,
        k1=float(k1),
        k2=float(k2),
        sigma1=sigma1,
        sigma2=float(f2),
        f1=float(f1),
        f2=float(f2),
        f1_scaled=f1s,
        f2_scaled=f2s,
        prefactor_base=float(base),
        regime=regime,
    )


def closed_form_C(p: IfmParams, tc: TransferCoeffs | None = None) -> np.ndarray:
    """N-cycle transfer matrix in the new basis, from the closed form (a < 1 only)."""
    tc = coeffs(p) if tc is None else tc
    m = np.array([[1.0, -tc.k1], [tc.k1, -1.0]], dtype=complex)
    return tc.f1_scaled * m + tc.f2_scaled * I2
