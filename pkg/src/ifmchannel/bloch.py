"""Bloch-vector representation of photon-A qubit states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .smallmat import I2, SIGMA_X, SIGMA_Y, SIGMA_Z


@dataclass(frozen=True)
class BlochVector:
    rx: float
    ry: float
    rz: float

    def __post_init__(self):
        if self.norm() > 1.0 + 1e-12:
            raise ValueError(f"Bloch vector has length {self.norm()!r} > 1")

    def norm(self) -> float:
        return float(np.sqrt(self.rx**2 + self.ry**2 + self.rz**2))

    @property
    def is_pure(self) -> bool:
        return abs(self.norm() - 1.0) <= 1e-10

    def density(self) -> np.ndarray:
        return 0.5 * (I2 + self.rx * SIGMA_X + self.ry * SIGMA_Y + self.rz * SIGMA_Z)

    def as_array(self) -> np.ndarray:
        return np.array([self.rx, self.ry, self.rz])

    @classmethod
    def from_density(cls, rho) -> "BlochVector":
        rho = np.asarray(rho, dtype=complex)
        return cls(
            float(np.real(np.trace(rho @ SIGMA_X))),
            float(np.real(np.trace(rho @ SIGMA_Y))),
            float(np.real(np.trace(rho @ SIGMA_Z))),
        )

    @classmethod
    def from_state(cls, psi) -> "BlochVector":
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls.from_density(np.outer(psi, psi.conj()))


def state_from_bloch(r: BlochVector) -> np.ndarray:
    """
    Pure state with Bloch vector ``r`` (normalized first).

    The phase convention is (cos(t/2), e^{i phi} sin(t/2)) with a real
    nonnegative first amplitude.
    """
    v = r.as_array()
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("the zero Bloch vector has no pure state")
    x, y, z = v / n
    t = np.arccos(np.clip(z, -1.0, 1.0))
    phi = np.arctan2(y, x)
    return np.array([np.cos(t / 2), np.exp(1j * phi) * np.sin(t / 2)], dtype=complex)


def polar_state(t, phi) -> np.ndarray:
    """Amplitudes (cos(t/2), e^{i phi} sin(t/2)); broadcasts over array arguments."""
    t = np.asarray(t, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack([np.cos(t / 2) + 0j, np.exp(1j * phi) * np.sin(t / 2)], axis=-1)
