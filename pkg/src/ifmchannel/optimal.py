"""
Optimal input states.

Closed-form optima are computed in the new basis (see ``transfer``) and
returned in both bases. ``brute_force_min`` is the independent check: it
scans pure photon-A states in the old basis using only the direct transfer
products.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .bloch import BlochVector, polar_state, state_from_bloch
from .channels import IfmParams
from .errors import NoZeroErrorStateError
from .metrics import BipartitePureState, DiscriminationResult, discriminate
from .smallmat import I2, SIGMA_X, SIGMA_Z, hermitian_eigen
from .transfer import basis_change, coeffs, to_new_basis, to_old_basis, transfer_absent, transfer_present

__all__ = [
    "BlochVector",
    "Objective",
    "Optimum",
    "best_zero_error",
    "brute_force_min",
    "cdagc",
    "entangled_family_check",
    "entangled_family_state",
    "min_ploss",
    "opaque_specials",
    "zero_error_states",
]

# sign of the sigma_x term in C^dagger C; flipped only by mutation tests
_CDAGC_SX_SIGN = 1.0

K1_SLACK = 1e-12
REFINE_TOL = 1e-12
REFINE_MAX_ITER = 200
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


class Objective(str, enum.Enum):
    LOSS = "LOSS"
    ERROR = "ERROR"
    FAIL = "FAIL"


@dataclass(frozen=True)
class Optimum:
    """
    An input state and the figure of merit it reaches.

    ``state`` is in the new basis and ``state_old`` in the physical
    (|1>, |2>) basis. ``angle`` is the Bloch polar angle quoted for this
    optimum (theta1 for the loss minimum, theta2 for the zero-error states).
    """

    state: np.ndarray
    state_old: np.ndarray
    value: float
    angle: float
    degenerate: bool = False

    @property
    def bloch(self) -> BlochVector:
        return BlochVector.from_state(self.state)


def _both_bases(state_new: np.ndarray, theta: float) -> tuple[np.ndarray, np.ndarray]:
    return state_new, to_old_basis(state_new, theta)


def cdagc(p: IfmParams) -> np.ndarray:
    """C^dagger C in the new basis from the closed-form coefficients."""
    tc = coeffs(p)
    f1, f2, k1 = tc.f1_scaled, tc.f2_scaled, tc.k1
    scalar = f1 * f1 * (1.0 + k1 * k1) + f2 * f2
    return scalar * I2 + 2.0 * f1 * (f2 * SIGMA_Z - _CDAGC_SX_SIGN * f1 * k1 * SIGMA_X)


def min_ploss(p: IfmParams) -> Optimum:
    """
    Input state with the smallest loss probability.

    The state is the top eigenvector of C^dagger C; its Bloch vector lies in
    the xz plane at polar angle theta1 = arctan(f1 k1 / f2) on the -x side.
    """
    tc = coeffs(p)
    f1, f2, k1 = tc.f1_scaled, tc.f2_scaled, tc.k1
    top = (f1 + np.sqrt(f2 * f2 + f1 * f1 * k1 * k1)) ** 2
    value = p.q * (1.0 - top)

    eig = hermitian_eigen(cdagc(p))
    w = eig.eigenvalues
    degenerate = bool(abs(w[0] - w[1]) <= 1e-12 * max(abs(w[0]), 1e-300))
    state, state_old = _both_bases(eig.eigenvectors[:, 0], p.theta)
    return Optimum(
        state=state,
        state_old=state_old,
        value=float(min(max(value, 0.0), p.q)),
        angle=float(np.arctan2(f1 * k1, f2)),
        degenerate=degenerate,
    )


def _ploss_pm(p: IfmParams, sign: float) -> float:
    tc = coeffs(p)
    s = np.sqrt(max(1.0 - tc.k1 * tc.k1, 0.0))
    return float(p.q * (1.0 - (sign * tc.f1_scaled * s + tc.f2_scaled) ** 2))


def zero_error_states(p: IfmParams) -> tuple[Optimum, Optimum] | None:
    """
    The two pure states with P_error = 0, ordered (phi_+, phi_-), or None if k1 > 1.

    Bloch vectors are (k1, 0, +-sqrt(1 - k1^2)) in the new basis. Each
    ``value`` is that state's loss probability; ``angle`` is theta2 for both.
    A k1 within 1e-12 above 1 counts as the boundary, where the two states
    coincide.
    """
    tc = coeffs(p)
    if tc.k1 > 1.0 + K1_SLACK:
        return None
    k1 = min(tc.k1, 1.0)
    s = np.sqrt(1.0 - k1 * k1)
    theta2 = float(np.arctan2(k1, s))
    out = []
    for sign in (1.0, -1.0):
        st = state_from_bloch(BlochVector(k1, 0.0, sign * s))
        state, state_old = _both_bases(st, p.theta)
        out.append(Optimum(state, state_old, _ploss_pm(p, sign), theta2))
    return out[0], out[1]


def best_zero_error(p: IfmParams) -> Optimum:
    """phi_+: the zero-error state with the smaller loss probability."""
    states = zero_error_states(p)
    if states is None:
        raise NoZeroErrorStateError(
            f"k1 = {coeffs(p).k1:.6g} > 1 for N={p.n_cycles}, a={p.a}: no zero-error input exists"
        )
    return states[0]


def opaque_specials(n_cycles: int, q: float) -> tuple[Optimum, Optimum, Optimum]:
    """
    Special states of the opaque object (a = 0), in the physical basis.

    phi_a = cos(t)|1> - sin(t)|2> minimizes the loss, phi_b = |1> and
    phi_c = sin(t)|1> + cos(t)|2> give zero error; t = pi / (2N).
    """
    p = IfmParams(n_cycles, 0.0, q)
    th = p.theta
    c, s = np.cos(th), np.sin(th)
    old = [
        (np.array([c, -s], dtype=complex), q * (1.0 - c ** (2 * (n_cycles - 1)))),
        (np.array([1.0, 0.0], dtype=complex), q * (1.0 - c ** (2 * n_cycles))),
        (np.array([s, c], dtype=complex), q),
    ]
    return tuple(Optimum(to_new_basis(v, th), v, float(val), th) for v, val in old)


def entangled_family_state(alpha: float, beta: float, p: IfmParams) -> BipartitePureState:
    """alpha |phi_+>|0>_B + beta |phi_->|1>_B, converted to the physical basis."""
    if abs(alpha * alpha + beta * beta - 1.0) > 1e-12:
        raise ValueError("alpha^2 + beta^2 must equal 1")
    states = zero_error_states(p)
    if states is None:
        raise NoZeroErrorStateError(f"k1 = {coeffs(p).k1:.6g} > 1: the zero-error family is empty")
    plus, minus = states
    e0 = np.array([1.0, 0.0])
    e1 = np.array([0.0, 1.0])
    v = alpha * np.kron(plus.state_old, e0) + beta * np.kron(minus.state_old, e1)
    return BipartitePureState.from_vector(v)


def entangled_family_check(alpha: float, beta: float, p: IfmParams) -> DiscriminationResult:
    """Figures of merit of one member of the entangled zero-error family."""
    return discriminate(entangled_family_state(alpha, beta, p), p)


def _objective_values(objective: Objective, p: IfmParams, t, phi) -> np.ndarray:
    psi = polar_state(t, phi)
    t_mat = transfer_present(p)
    d_mat = transfer_absent()
    out1 = psi @ t_mat.T
    out2 = psi @ d_mat.T
    q = p.q
    norm1 = np.sum(np.abs(out1) ** 2, axis=-1)
    loss = q * (1.0 - norm1)
    if objective is Objective.LOSS:
        return loss
    overlap = np.sum(np.conj(out2) * out1, axis=-1)
    lam1 = q * norm1 + 1.0 - q
    lam2 = 2.0 * np.sqrt(q * (1.0 - q)) * np.abs(overlap)
    # out2 is a unit vector, so the Gram determinant is |out1 - overlap out2|^2
    perp = out1 - overlap[..., None] * out2
    gram = np.sum(np.abs(perp) ** 2, axis=-1)
    root = np.sqrt((q * norm1 - (1.0 - q)) ** 2 + 4.0 * q * (1.0 - q) * gram)
    err = 0.5 * lam2 * lam2 / (lam1 + root)
    if objective is Objective.ERROR:
        return err
    return loss + err


def _golden_section(f, lo: float, hi: float, iters: int = 80) -> tuple[float, float]:
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def brute_force_min(p: IfmParams, objective: Objective | str = Objective.LOSS, grid: int = 64) -> Optimum:
    """
    Minimize an objective over pure photon-A inputs by grid search plus refinement.

    States are (cos(t/2), e^{i phi} sin(t/2)) in the physical basis with
    t in [0, pi] and phi in [0, 2 pi). The best of the ``grid x grid``
    lattice is refined by alternating golden-section searches in t and phi
    until an iteration improves the value by less than 1e-12 (at most 200
    iterations). Only the direct transfer products are used, never the
    closed forms. Ties go to the first lattice point in (t, phi) order.
    """
    if grid < 8:
        raise ValueError(f"grid must be at least 8, got {grid}")
    objective = Objective(objective)
    ts = np.linspace(0.0, np.pi, grid)
    phis = np.arange(grid) * (2.0 * np.pi / grid)
    tt, pp = np.meshgrid(ts, phis, indexing="ij")
    vals = _objective_values(objective, p, tt, pp)
    i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
    t0, phi0, best = float(ts[i]), float(phis[j]), float(vals[i, j])

    def f(t, phi):
        return float(_objective_values(objective, p, t, phi))

    dt = np.pi / (grid - 1)
    dphi = 2.0 * np.pi / grid
    for _ in range(REFINE_MAX_ITER):
        t_new, v_t = _golden_section(
            lambda x: f(x, phi0), max(t0 - dt, 0.0), min(t0 + dt, np.pi)
        )
        if v_t < best:
            t0 = t_new
        phi_new, v_phi = _golden_section(lambda x: f(t0, x), phi0 - dphi, phi0 + dphi)
        if v_phi < min(best, v_t):
            phi0 = phi_new % (2.0 * np.pi)
        new_best = f(t0, phi0)
        improvement = best - new_best
        best = min(best, new_best)
        if improvement < REFINE_TOL:
            break

    state_old = polar_state(t0, phi0)
    return Optimum(
        state=basis_change(p.theta) @ state_old,
        state_old=state_old,
        value=best,
        angle=t0,
    )
