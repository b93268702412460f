"""Random instances for property checks (all driven by a numpy Generator)."""

from __future__ import annotations

import numpy as np

from .channels import IfmParams


def random_pure(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng: np.random.Generator, dim: int, rank: int | None = None) -> np.ndarray:
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (g + g.conj().T)


def random_params(
    rng: np.random.Generator, n_max: int = 10, a_max: float = 0.95, q_range=(0.0, 1.0)
) -> IfmParams:
    return IfmParams(
        int(rng.integers(1, n_max + 1)),
        float(rng.uniform(0.0, a_max)),
        float(rng.uniform(*q_range)),
    )


def embed_a(rho2: np.ndarray) -> np.ndarray:
    """Pad a state on (|1>, |2>) with an empty loss level."""
    out = np.zeros((3, 3), dtype=complex)
    out[:2, :2] = rho2
    return out


def embed_ab(rho4: np.ndarray) -> np.ndarray:
    """Pad a pair state on (|1>,|2>) (x) B with an empty loss level for A."""
    out = np.zeros((6, 6), dtype=complex)
    out[:4, :4] = rho4
    return out
