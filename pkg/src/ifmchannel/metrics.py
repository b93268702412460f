"""
Loss and discrimination-error probabilities for a given input state.

Accepted pure inputs:

* a length-2 amplitude vector (alpha, beta) on |1>, |2> of photon A, in the
  old basis;
* a :class:`BipartitePureState`, or equivalently a length-4 vector on
  (|1>, |2>) (x) (|0>_B, |1>_B).

Pure-state quantities come from the 2x2 transfer matrices. Density-matrix
quantities come from iterating the Kraus channels and taking a trace norm.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Union

import numpy as np

from .bloch import BlochVector
from .channels import DIM_B, IfmParams, check_density, ifm_absent, ifm_present, optimal_projectors
from .smallmat import kron, projector, trace_norm
from .transfer import coeffs, transfer_absent, transfer_present


@dataclass(frozen=True)
class BipartitePureState:
    """
    alpha |1>|phiB1> + beta |2>|phiB2> with alpha, beta >= 0.

    Any pure state of photon A (restricted to |1>, |2>) and a qubit B can be
    brought to this form by moving phases into the B states.
    """

    alpha: float
    beta: float
    phi_b1: np.ndarray
    phi_b2: np.ndarray

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be nonnegative")
        if abs(self.alpha**2 + self.beta**2 - 1.0) > 1e-12:
            raise ValueError(f"alpha^2 + beta^2 = {self.alpha**2 + self.beta**2!r}, expected 1")
        for name in ("phi_b1", "phi_b2"):
            v = np.asarray(getattr(self, name), dtype=complex).reshape(-1)
            if v.shape != (DIM_B,) or abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError(f"{name} must be a normalized {DIM_B}-vector")
            object.__setattr__(self, name, v)

    def vector(self) -> np.ndarray:
        e1 = np.array([1.0, 0.0])
        e2 = np.array([0.0, 1.0])
        return self.alpha * np.kron(e1, self.phi_b1) + self.beta * np.kron(e2, self.phi_b2)

    def reduced_a(self) -> np.ndarray:
        """Reduced state of photon A on (|1>, |2>)."""
        v = self.vector().reshape(2, DIM_B)
        return v @ v.conj().T

    @classmethod
    def from_vector(cls, v) -> "BipartitePureState":
        v = np.asarray(v, dtype=complex).reshape(2, DIM_B)
        v = v / np.linalg.norm(v)
        alpha, beta = np.linalg.norm(v[0]), np.linalg.norm(v[1])
        fallback = np.array([1.0, 0.0], dtype=complex)
        b1 = v[0] / alpha if alpha > 0 else fallback
        b2 = v[1] / beta if beta > 0 else fallback
        norm = np.hypot(alpha, beta)
        return cls(float(alpha / norm), float(beta / norm), b1, b2)


State = Union[np.ndarray, BipartitePureState, list, tuple]


@dataclass(frozen=True)
class DiscriminationResult:
    p_loss: float
    p_error: float
    p_fail: float
    inner_product: complex
    lambda1: float
    lambda2: float
    povm: tuple[np.ndarray, np.ndarray] | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["inner_product"] = [float(self.inner_product.real), float(self.inner_product.imag)]
        if self.povm is not None:
            d["povm"] = {
                "absent": _matrix_to_lists(self.povm[0]),
                "present": _matrix_to_lists(self.povm[1]),
            }
        return d


def _matrix_to_lists(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _vector(state: State) -> np.ndarray:
    if isinstance(state, BipartitePureState):
        return state.vector()
    v = np.asarray(state, dtype=complex).reshape(-1)
    if v.shape == (3,):
        if abs(v[2]) > 1e-12:
            raise ValueError("input states must have no population on the loss state")
        v = v[:2]
    if v.shape not in ((2,), (2 * DIM_B,)):
        raise ValueError(f"expected 2 or {2 * DIM_B} amplitudes, got shape {v.shape}")
    n = np.linalg.norm(v)
    if abs(n - 1.0) > 1e-12:
        raise ValueError(f"input state has norm {n!r}")
    return v


def _lift(op: np.ndarray, v: np.ndarray) -> np.ndarray:
    return op if v.shape == (2,) else kron(op, np.eye(DIM_B))


def outputs(state: State, p: IfmParams) -> tuple[np.ndarray, np.ndarray]:
    """(phi', phi''): unnormalized surviving vector with the object, and the object-free output."""
    v = _vector(state)
    return _lift(transfer_present(p), v) @ v, _lift(transfer_absent(), v) @ v


def embed_density(state: State) -> np.ndarray:
    """Density matrix of a pure input in the 3-dim (or 3x2-dim) channel space."""
    v = _vector(state)
    if v.shape == (2,):
        full = np.concatenate([v, [0.0]])
    else:
        full = np.concatenate([v, np.zeros(DIM_B)])
    return projector(full)


def p_loss(state: State, p: IfmParams) -> float:
    """q (1 - <phi'|phi'>): probability that the object absorbs the photon."""
    phi1, _ = outputs(state, p)
    return float(p.q * (1.0 - np.vdot(phi1, phi1).real))


def inner_pp(state: State, p: IfmParams) -> complex:
    """<phi''|phi'> from the transfer matrices; valid for every a."""
    phi1, phi2 = outputs(state, p)
    return complex(np.vdot(phi2, phi1))


def inner_pp_bloch(r: BlochVector, p: IfmParams) -> complex:
    """
    ``Tr(D^dagger C rho_A)`` from the closed-form coefficients.

    ``r`` is the Bloch vector of photon A's reduced state in the new basis.
    """
    tc = coeffs(p)
    return complex(tc.f1_scaled * (tc.k1 - r.rx) + 1j * tc.f2_scaled * r.ry)


def _lambda_terms(phi1: np.ndarray, phi2: np.ndarray, q: float) -> tuple[float, float, float]:
    """lambda1, lambda2 and sqrt(lambda1^2 - lambda2^2), the root free of cancellation."""
    n1 = np.vdot(phi1, phi1).real
    n2 = np.vdot(phi2, phi2).real
    ov = np.vdot(phi2, phi1)
    lam1 = q * n1 + 1.0 - q
    lam2 = 2.0 * np.sqrt(q * (1.0 - q)) * abs(ov)
    # lam1^2 - lam2^2 = (q n1 - (1-q) n2)^2 + 4 q (1-q) (n1 n2 - |ov|^2), with
    # the Gram determinant evaluated as n2 |phi1 - (ov / n2) phi2|^2
    perp = phi1 - (ov / n2) * phi2 if n2 > 0 else phi1
    gram = n2 * np.vdot(perp, perp).real
    root = np.sqrt((q * n1 - (1.0 - q) * n2) ** 2 + 4.0 * q * (1.0 - q) * gram)
    return float(lam1), float(lam2), float(root)


def lambdas(state: State, p: IfmParams) -> tuple[float, float]:
    lam1, lam2, _ = _lambda_terms(*outputs(state, p), p.q)
    return lam1, lam2


def _perror_from_terms(lam1: float, lam2: float, root: float) -> float:
    denom = lam1 + root
    # (lam1 - root)/2 rewritten without the cancellation
    return 0.0 if denom == 0.0 else float(0.5 * lam2 * lam2 / denom)


def p_error_density(rho, p: IfmParams, return_povm: bool = False):
    """
    Helstrom minimum error from the full channel outputs.

    ``rho`` is a 3-dim single-photon or 6-dim photon-pair density matrix. With
    ``return_povm=True`` the optimal projector pair (absent, present) is
    returned alongside the error.
    """
    rho = check_density(rho)
    m = p.q * ifm_present(rho, p) - (1.0 - p.q) * ifm_absent(rho, p)
    err = 0.5 * (1.0 - trace_norm(m))
    err = float(min(max(err, 0.0), 0.5))
    if return_povm:
        return err, optimal_projectors(m)
    return err


def p_error(state: State, p: IfmParams) -> float:
    """
    Minimum discrimination error for a pure input.

    Single-photon inputs use the two-state closed form in terms of
    <phi'|phi'> and |<phi''|phi'>|. Photon-pair inputs go through the 6-dim
    Helstrom evaluation.
    """
    v = _vector(state)
    if v.shape != (2,):
        return p_error_density(embed_density(v), p)
    return _perror_from_terms(*_lambda_terms(*outputs(v, p), p.q))


def p_fail(state: State, p: IfmParams) -> float:
    """P_loss + P_error, evaluated as 1 - (lambda1 + sqrt(lambda1^2 - lambda2^2)) / 2."""
    lam1, _, root = _lambda_terms(*outputs(state, p), p.q)
    return float(1.0 - 0.5 * (lam1 + root))


def pure_trace_norm(pfac: float, psi1, psi2) -> float:
    """Trace norm of ``pfac |psi1><psi1| - |psi2><psi2|`` for normalized pure states."""
    if pfac <= 0:
        raise ValueError(f"pfac must be positive, got {pfac!r}")
    psi1 = np.asarray(psi1, dtype=complex).reshape(-1)
    psi2 = np.asarray(psi2, dtype=complex).reshape(-1)
    if psi1.shape != psi2.shape:
        raise ValueError("states must have equal dimension")
    overlap2 = abs(np.vdot(psi1, psi2)) ** 2
    return float(np.sqrt(max((pfac + 1.0) ** 2 - 4.0 * pfac * overlap2, 0.0)))


def discriminate(state: State, p: IfmParams, with_povm: bool = True) -> DiscriminationResult:
    """All figures of merit for one pure input, plus the optimal measurement."""
    lam1, lam2 = lambdas(state, p)
    loss = p_loss(state, p)
    err = p_error(state, p)
    povm = None
    if with_povm:
        _, povm = p_error_density(embed_density(state), p, return_povm=True)
    return DiscriminationResult(
        p_loss=loss,
        p_error=err,
        p_fail=loss + err,
        inner_product=inner_pp(state, p),
        lambda1=lam1,
        lambda2=lam2,
        povm=povm,
    )
