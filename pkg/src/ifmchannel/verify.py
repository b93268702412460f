"""
Cross-checks between independent evaluation routes.

Each suite pits one computation against an independent one (closed form
against direct product, eigenvector against grid search, Kraus channels
against transfer matrices, and so on) and reports the worst discrepancy it
saw. Inequality suites report the largest violation, zero when none.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import optimal
from .channels import (
    IfmParams,
    absorption_channel,
    apply_channel,
    detector_model_channel,
    generalized_trace_distance,
    ifm_present,
    pure_density,
    restrict_to_12v,
)
from .metrics import embed_density, inner_pp, p_error, p_error_density, p_loss, pure_trace_norm
from .sampling import random_density, random_params, random_pure
from .smallmat import partial_trace, trace_norm
from .transfer import basis_change, closed_form_C, coeffs, transfer_present


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tol)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name:<26s} {status}  max_err={self.max_error:.3e}  tol={self.tol:.1e}"


def loss_from_channel(rho: np.ndarray, p: IfmParams) -> float:
    out = ifm_present(rho, p)
    if out.shape[0] == 3:
        return float(p.q * out[2, 2].real)
    return float(p.q * partial_trace(out, 3, 2, keep="A")[2, 2].real)


def suite_closed_form(rng) -> float:
    worst = 0.0
    for a in (0.0, 0.3, 0.6, 0.9):
        for n in (1, 2, 5, 17, 100, 1000):
            p = IfmParams(n, a)
            u = basis_change(p.theta)
            direct = u @ transfer_present(p, method="loop") @ u.conj().T
            diff = np.max(np.abs(closed_form_C(p) - direct)) / np.max(np.abs(direct))
            worst = max(worst, float(diff))
    return worst


def suite_eigen_vs_grid(rng) -> float:
    worst = 0.0
    for a in (0.0, 0.4, 0.8):
        for n in (1, 3, 6):
            p = IfmParams(n, a, 1.0)
            opt = optimal.min_ploss(p)
            ref = optimal.brute_force_min(p, optimal.Objective.LOSS, grid=64).value
            # the state must reach the value too, not just the eigenvalue formula
            worst = max(worst, abs(opt.value - ref), abs(p_loss(opt.state_old, p) - ref))
    return worst


def suite_channel_vs_transfer(rng) -> float:
    worst = 0.0
    for _ in range(40):
        p = random_params(rng, n_max=10)
        psi = random_pure(rng, 2)
        rho = embed_density(psi)
        worst = max(
            worst,
            abs(p_loss(psi, p) - loss_from_channel(rho, p)),
            abs(p_error(psi, p) - p_error_density(rho, p)),
        )
    return worst


def suite_mixture(rng) -> float:
    worst = 0.0
    for _ in range(30):
        p = random_params(rng, n_max=6)
        k = int(rng.integers(2, 5))
        weights = rng.dirichlet(np.ones(k))
        states = [random_pure(rng, 2) for _ in range(k)]
        rho = sum(w * embed_density(s) for w, s in zip(weights, states))
        loss_mix = loss_from_channel(rho, p)
        loss_avg = sum(w * p_loss(s, p) for w, s in zip(weights, states))
        err_avg = sum(w * p_error(s, p) for w, s in zip(weights, states))
        worst = max(worst, abs(loss_mix - loss_avg), max(err_avg - p_error_density(rho, p), 0.0))
    return worst


def suite_ancilla(rng) -> float:
    worst = 0.0
    for _ in range(30):
        p = random_params(rng, n_max=6)
        v = random_pure(rng, 4)
        rho_ab = embed_density(v)
        rho_a = partial_trace(rho_ab, 3, 2, keep="A")
        worst = max(
            worst,
            abs(loss_from_channel(rho_ab, p) - loss_from_channel(rho_a, p)),
            max(p_error_density(rho_ab, p) - p_error_density(rho_a, p), 0.0),
        )
    return worst


def zero_error_instances(rng, count: int):
    """Half random inputs, half zero-error states (when they exist)."""
    out = []
    while len(out) < count:
        p = random_params(rng, n_max=10, q_range=(0.05, 0.95))
        if len(out) % 2 == 0:
            out.append((random_pure(rng, 2), p))
            continue
        states = optimal.zero_error_states(p) if p.a < 0.99 else None
        if states is not None:
            out.append((states[int(rng.integers(0, 2))].state_old, p))
    return out


def suite_zero_error_iff(rng) -> float:
    mismatches = 0
    for psi, p in zero_error_instances(rng, 60):
        if (p_error(psi, p) < 1e-10) != (abs(inner_pp(psi, p)) < 1e-8):
            mismatches += 1
    return float(mismatches)


def suite_positivity(rng) -> float:
    # zero when every coefficient is strictly positive
    lowest = np.inf
    for a in np.round(np.arange(0.0, 0.95, 0.1), 10):
        for n in range(1, 201):
            tc = coeffs(IfmParams(n, float(a)))
            lowest = min(lowest, tc.f1_scaled, tc.f2_scaled)
    return 0.0 if lowest > 0 else 1.0 + abs(float(lowest))


def suite_pure_trace_norm(rng) -> float:
    worst = 0.0
    for _ in range(200):
        dim = int(rng.integers(2, 5))
        pfac = float(rng.uniform(0.01, 5.0))
        a, b = random_pure(rng, dim), random_pure(rng, dim)
        direct = trace_norm(pfac * pure_density(a) - pure_density(b))
        worst = max(worst, abs(pure_trace_norm(pfac, a, b) - direct))
    return worst


def suite_detector_reduction(rng) -> float:
    worst = 0.0
    for a in (0.0, 0.3, 0.7, 1.0):
        reduced = restrict_to_12v(detector_model_channel(a))
        target = absorption_channel(a)
        for got, want in zip(reduced.kraus_ops, target.kraus_ops):
            worst = max(worst, float(np.max(np.abs(got - want))))
        for _ in range(5):
            rho3 = random_density(rng, 3)
            rho4 = np.zeros((4, 4), dtype=complex)
            idx = np.ix_([0, 1, 3], [0, 1, 3])
            rho4[idx] = rho3
            out4 = apply_channel(detector_model_channel(a), rho4)
            worst = max(worst, float(np.max(np.abs(out4[idx] - apply_channel(target, rho3)))))
    return worst


def suite_contractivity(rng) -> float:
    worst = 0.0
    for _ in range(30):
        q = float(rng.uniform())
        r1, r2 = random_density(rng, 6), random_density(rng, 6)
        full = generalized_trace_distance(r1, r2, q)
        reduced = generalized_trace_distance(
            partial_trace(r1, 3, 2, keep="A"), partial_trace(r2, 3, 2, keep="A"), q
        )
        worst = max(worst, reduced - full)
    return max(worst, 0.0)


SUITES: list[tuple[str, Callable, float]] = [
    ("closed_form_vs_product", suite_closed_form, 1e-10),
    ("eigen_vs_grid", suite_eigen_vs_grid, 1e-6),
    ("channel_vs_transfer", suite_channel_vs_transfer, 1e-10),
    ("mixture_convexity", suite_mixture, 1e-10),
    ("ancilla_partial_trace", suite_ancilla, 1e-10),
    ("zero_error_iff", suite_zero_error_iff, 0.0),
    ("coeff_positivity", suite_positivity, 0.0),
    ("pure_trace_norm", suite_pure_trace_norm, 1e-10),
    ("detector_reduction", suite_detector_reduction, 1e-12),
    ("trace_dist_contraction", suite_contractivity, 1e-10),
]


def run_verify(seed: int = 0) -> list[SuiteResult]:
    """Run every suite with its own generator seeded from ``seed``."""
    results = []
    for k, (name, fn, tol) in enumerate(SUITES):
        rng = np.random.default_rng([seed, k])
        results.append(SuiteResult(name, float(fn(rng)), tol))
    return results


def report(results: list[SuiteResult]) -> str:
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"overall: {'PASS' if ok else 'FAIL'} ({sum(r.passed for r in results)}/{len(results)})")
    return "\n".join(lines) + "\n"
