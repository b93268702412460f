"""
Kraus-channel model of one interaction-free measurement run.

Single-photon states live in the 3-dim space spanned by |1> (up arm),
|2> (down arm, where the object sits) and |3> (loss). The detector model
names the loss mode |v> (vacuum after absorption); both labels map to the
same basis index 2 here, and the 4-dim detector basis is ordered
|1>, |2>, |3>, |v>.

Bipartite inputs carry a second photon B of dimension 2 that no channel
touches. Operators on the pair use the ordering A (x) B.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError
from .smallmat import adjoint, as_matrix, hermitian_eigen, kron, trace_norm

DIM_A = 3
DIM_B = 2
LOSS = 2

COMPLETENESS_TOL = 1e-12
DENSITY_TOL = 1e-12
NEG_EIG_TOL = 1e-10


@dataclass(frozen=True)
class IfmParams:
    """
    Experiment settings.

    ``n_cycles`` is the number of interrogation cycles N, ``a`` the amplitude
    transmitted through the object (a**2 is its transparency) and ``q`` the
    prior probability that the object is present. The per-cycle rotation
    angle is fixed to pi / (2N).
    """

    n_cycles: int
    a: float
    q: float = 0.5

    def __post_init__(self):
        if int(self.n_cycles) != self.n_cycles or self.n_cycles < 1:
            raise ValueError(f"n_cycles must be an integer >= 1, got {self.n_cycles!r}")
        if not 0.0 <= self.a <= 1.0:
            raise ValueError(f"a must lie in [0, 1], got {self.a!r}")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"q must lie in [0, 1], got {self.q!r}")
        object.__setattr__(self, "n_cycles", int(self.n_cycles))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "q", float(self.q))

    @property
    def theta(self) -> float:
        return np.pi / (2 * self.n_cycles)


class KrausChannel:
    """
    A CPTP map given by Kraus operators, all ``dim x dim``.

    Construction checks the completeness relation sum K^dagger K = I.
    """

    def __init__(self, kraus_ops: Sequence, check: bool = True):
        ops = tuple(as_matrix(k).copy() for k in kraus_ops)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
        for k in ops:
            if k.shape != (dim, dim):
                raise DimensionMismatchError(f"Kraus operator of shape {k.shape}, expected {(dim, dim)}")
            k.setflags(write=False)
        self.dim = dim
        self.kraus_ops = ops
        if check:
            err = self.completeness_error()
            if err > COMPLETENESS_TOL:
                raise ValueError(f"Kraus operators violate completeness by {err:.3e}")

    def completeness_error(self) -> float:
        total = sum(adjoint(k) @ k for k in self.kraus_ops)
        return float(np.max(np.abs(total - np.eye(self.dim))))

    def extend(self, dim_b: int = DIM_B) -> "KrausChannel":
        """The same channel acting on the first factor of a pair, K (x) I."""
        eye = np.eye(dim_b)
        return KrausChannel([kron(k, eye) for k in self.kraus_ops], check=False)

    def __call__(self, rho):
        return apply_channel(self, rho)

    def __repr__(self):
        return f"KrausChannel(dim={self.dim}, n_ops={len(self.kraus_ops)})"


def check_density(rho, tol: float = DENSITY_TOL) -> np.ndarray:
    """Validate a density matrix (Hermitian, unit trace, PSD) and return it as an array."""
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise DimensionMismatchError(f"density matrix must be square, got {rho.shape}")
    herm = float(np.max(np.abs(rho - adjoint(rho))))
    if herm > tol:
        raise ValueError(f"density matrix not Hermitian (max deviation {herm:.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix trace is {tr!r}, expected 1")
    lowest = hermitian_eigen(rho, tol=tol).eigenvalues[-1]
    if lowest < -NEG_EIG_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {lowest:.3e}")
    return rho


def pure_density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, np.conj(psi))


def _renormalize(rho: np.ndarray) -> np.ndarray:
    sym = 0.5 * (rho + adjoint(rho))
    tr = np.trace(sym).real
    drift = max(float(np.max(np.abs(rho - sym))), abs(tr - 1.0))
    if drift > DENSITY_TOL:
        raise AssertionError(f"channel output drifted by {drift:.3e}; input was not a valid state")
    return sym / tr


def apply_channel(ch: KrausChannel, rho) -> np.ndarray:
    """Kraus sum ``sum_i K_i rho K_i^dagger``, re-symmetrized and trace-rescaled."""
    rho = as_matrix(rho)
    if rho.shape != (ch.dim, ch.dim):
        raise DimensionMismatchError(f"state of shape {rho.shape} for a {ch.dim}-dim channel")
    out = sum(k @ rho @ adjoint(k) for k in ch.kraus_ops)
    return _renormalize(out)


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]], dtype=complex)


def rotation_channel(theta: float) -> KrausChannel:
    """Beamsplitter rotation by ``theta`` between |1> and |2>; |3> is untouched."""
    if not 0.0 < theta <= np.pi / 2 + 1e-15:
        raise ValueError(f"theta must lie in (0, pi/2], got {theta!r}")
    return KrausChannel([rotation_matrix(theta)])


def absorption_kraus(a: float) -> tuple[np.ndarray, np.ndarray]:
    a0 = np.diag([1.0, a, 1.0]).astype(complex)
    a1 = np.zeros((3, 3), dtype=complex)
    a1[LOSS, 1] = np.sqrt(1.0 - a * a)
    return a0, a1


def absorption_channel(a: float) -> KrausChannel:
    """Semitransparent object in the down arm: |2> leaks to |3> with probability 1 - a**2."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a!r}")
    return KrausChannel(absorption_kraus(a))


def _channels_for(rho: np.ndarray, p: IfmParams, present: bool) -> list[KrausChannel]:
    chans = [rotation_channel(p.theta)]
    if present:
        chans.append(absorption_channel(p.a))
    if rho.shape == (DIM_A, DIM_A):
        return chans
    if rho.shape == (DIM_A * DIM_B, DIM_A * DIM_B):
        return [ch.extend(DIM_B) for ch in chans]
    raise DimensionMismatchError(
        f"IFM inputs must be {DIM_A}-dim or {DIM_A * DIM_B}-dim, got shape {rho.shape}"
    )


def _iterate(rho, p: IfmParams, present: bool) -> np.ndarray:
    rho = as_matrix(rho)
    chans = _channels_for(rho, p, present)
    for _ in range(p.n_cycles):
        for ch in chans:
            rho = apply_channel(ch, rho)
    return rho


def ifm_present(rho, p: IfmParams) -> np.ndarray:
    """Output state when the object is present: N rounds of rotation then absorption."""
    return _iterate(rho, p, present=True)


def ifm_absent(rho, p: IfmParams) -> np.ndarray:
    """Output state when the object is absent: N bare rotations."""
    return _iterate(rho, p, present=False)


def detector_model_kraus(a: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Kraus operators ``C_i = D_i U_b`` of beamsplitter plus absorbing detector.

    Basis order is |1>, |2>, |3>, |v>. ``U_b`` mixes |2> and |3> with
    transmission amplitude ``a``; the detector maps |3> to the vacuum |v>.
    """
    r = np.sqrt(1.0 - a * a)
    u_b = np.array(
        [[1, 0, 0, 0], [0, a, -r, 0], [0, r, a, 0], [0, 0, 0, 1]], dtype=complex
    )
    d0 = np.diag([1.0, 1.0, 0.0, 1.0]).astype(complex)
    d1 = np.zeros((4, 4), dtype=complex)
    d1[3, 2] = 1.0
    return d0 @ u_b, d1 @ u_b


def detector_model_channel(a: float) -> KrausChannel:
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a!r}")
    return KrausChannel(detector_model_kraus(a))


def restrict_to_12v(ch: KrausChannel) -> KrausChannel:
    """
    Restrict a 4-dim detector-basis channel to span{|1>, |2>, |v>}.

    The |v> index is relabelled as the loss index of the 3-dim model, so the
    result is directly comparable with ``absorption_channel``.
    """
    keep = [0, 1, 3]
    return KrausChannel([k[np.ix_(keep, keep)] for k in ch.kraus_ops], check=False)


def generalized_trace_distance(rho1, rho2, q: float) -> float:
    """``|| q rho1 - (1 - q) rho2 ||_1``; q = 1/2 gives the usual trace distance."""
    rho1 = as_matrix(rho1)
    rho2 = as_matrix(rho2)
    if rho1.shape != rho2.shape:
        raise DimensionMismatchError(f"shapes {rho1.shape} and {rho2.shape} differ")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q!r}")
    return trace_norm(q * rho1 - (1.0 - q) * rho2)


def optimal_projectors(m) -> tuple[np.ndarray, np.ndarray]:
    """
    Projector pair ``(P0, P1)`` maximizing ``Tr[(P1 - P0) M]`` for Hermitian M.

    ``P1`` spans the eigenvectors with nonnegative eigenvalue and ``P0`` the
    rest, so the maximum equals the trace norm of M. In a discrimination
    problem with ``M = q rho' - (1 - q) rho''``, outcome P1 means "object here".
    """
    m = as_matrix(m)
    scale = max(float(np.max(np.abs(m), initial=0.0)), 1.0)
    eig = hermitian_eigen(m, tol=1e-10 * scale)
    pos = eig.eigenvalues >= 0
    v = eig.eigenvectors
    p1 = v[:, pos] @ adjoint(v[:, pos])
    p0 = v[:, ~pos] @ adjoint(v[:, ~pos])
    return p0, p1
