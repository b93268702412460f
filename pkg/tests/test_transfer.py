from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import params
from ifmchannel.channels import IfmParams
from ifmchannel.errors import DegenerateTransparencyError
from ifmchannel.transfer import (
    Regime,
    basis_change,
    c1_formula,
    closed_form_C,
    coeffs,
    k_values,
    single_cycle,
    transfer_absent,
    transfer_present,
)

A_BOUNDARY_N2 = 3.0 - 2.0 * np.sqrt(2.0)


def binomial_coeffs(n, k1, k2):
    """f1, f2 as the odd and even parts of the binomial expansion of (M + k2)^N, M^2 = 1 - k1^2."""
    d = 1.0 - k1 * k1
    f1 = sum(comb(n, m) * d ** ((m - 1) // 2) * k2 ** (n - m) for m in range(1, n + 1, 2))
    f2 = sum(comb(n, m) * d ** (m // 2) * k2 ** (n - m) for m in range(0, n + 1, 2))
    return f1, f2


def test_transparent_is_quarter_turn():
    np.testing.assert_allclose(transfer_present(IfmParams(7, 1.0)), [[0, -1], [1, 0]], atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_opaque_matrix(n):
    th = np.pi / (2 * n)
    want = [[np.cos(th) ** n, -np.sin(th) * np.cos(th) ** (n - 1)], [0, 0]]
    np.testing.assert_allclose(transfer_present(IfmParams(n, 0.0)), want, atol=1e-14)


@given(params(n_max=40, a_max=0.99))
def test_power_and_loop_agree(p):
    np.testing.assert_allclose(
        transfer_present(p, method="power"), transfer_present(p, method="loop"), atol=1e-12
    )


def test_absent_matrix():
    d = transfer_absent()
    np.testing.assert_allclose(d @ [1, 0], [0, 1])
    np.testing.assert_allclose(d.conj().T @ d, np.eye(2))
    np.testing.assert_allclose(d @ d, -np.eye(2))


@given(st.floats(0, np.pi / 2))
def test_basis_change_properties(theta):
    u = basis_change(theta)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(u @ transfer_absent(), transfer_absent() @ u, atol=1e-15)


def test_basis_change_identity():
    np.testing.assert_array_equal(basis_change(0.0), np.eye(2))


@given(params(n_max=30, a_max=0.99))
def test_c1_two_ways(p):
    u = basis_change(p.theta)
    single = u @ single_cycle(p) @ u.conj().T
    np.testing.assert_allclose(c1_formula(p), single, atol=1e-12)


def test_k_values_examples():
    for n in (1, 3, 10):
        th = np.pi / (2 * n)
        np.testing.assert_allclose(k_values(IfmParams(n, 0.0)), [np.sin(th), np.cos(th)], atol=1e-15)
    k1, k2 = k_values(IfmParams(10, 0.5))
    assert k1 == pytest.approx(3 * np.sin(np.pi / 20), rel=1e-14)
    assert k2 == pytest.approx(3 * np.cos(np.pi / 20), rel=1e-14)
    assert k_values(IfmParams(2, A_BOUNDARY_N2))[0] == pytest.approx(1.0, abs=1e-14)


def test_transparent_is_degenerate():
    with pytest.raises(DegenerateTransparencyError):
        coeffs(IfmParams(3, 1.0))


def test_regimes():
    assert coeffs(IfmParams(10, 0.0)).regime is Regime.SUB
    assert coeffs(IfmParams(2, 0.5)).regime is Regime.SUPER
    assert coeffs(IfmParams(2, A_BOUNDARY_N2)).regime is Regime.CRITICAL
    assert coeffs(IfmParams(1, 0.0)).regime is Regime.CRITICAL


def test_single_cycle_reduction():
    p = IfmParams(1, 0.3)
    tc = coeffs(p)
    assert tc.f1 == pytest.approx(1.0, rel=1e-12)
    assert tc.f2 == pytest.approx(tc.k2, rel=1e-12)
    np.testing.assert_allclose(closed_form_C(p), c1_formula(p), atol=1e-14)


@pytest.mark.parametrize("a", [0.0, 0.2, 0.5, 0.8])
@pytest.mark.parametrize("n", [1, 2, 3, 6, 11, 25])
def test_coefficients_against_binomial_sums(n, a):
    tc = coeffs(IfmParams(n, a))
    f1, f2 = binomial_coeffs(n, tc.k1, tc.k2)
    assert tc.f1 == pytest.approx(f1, rel=1e-10)
    assert tc.f2 == pytest.approx(f2, rel=1e-10)
    d = 1 - tc.k1**2
    assert tc.sigma1 == pytest.approx(f1 * np.sqrt(complex(d)), rel=1e-10, abs=1e-300)


@given(params(n_max=60, a_max=0.99))
def test_closed_form_matches_product(p):
    u = basis_change(p.theta)
    direct = u @ transfer_present(p, method="loop") @ u.conj().T
    err = np.max(np.abs(closed_form_C(p) - direct)) / np.max(np.abs(direct))
    assert err < 1e-10


def test_opaque_probability_of_staying():
    p = IfmParams(4, 0.0)
    out = closed_form_C(p) @ basis_change(p.theta) @ np.array([1.0, 0.0])
    assert np.vdot(out, out).real == pytest.approx(np.cos(p.theta) ** 8, abs=1e-12)


@pytest.mark.parametrize("n", [2, 5, 40, 1000])
@pytest.mark.parametrize("rel", [-1e-10, 0.0, 1e-10, -1e-8, 1e-8])
def test_near_boundary_continuity(n, rel):
    s = np.sin(np.pi / (2 * n))
    a = (1 - s) / (1 + s) * (1 + rel)
    p = IfmParams(n, a)
    u = basis_change(p.theta)
    direct = u @ transfer_present(p, method="loop") @ u.conj().T
    assert np.max(np.abs(closed_form_C(p) - direct)) / np.max(np.abs(direct)) < 1e-10


@pytest.mark.parametrize("a", [0.0, 0.5, 0.9, 0.99])
def test_scaled_coefficients_finite_for_large_n(a):
    tc = coeffs(IfmParams(10_000, a))
    assert np.isfinite(tc.f1_scaled) and np.isfinite(tc.f2_scaled)
    assert tc.f1_scaled > 0 and tc.f2_scaled > 0


@given(params(n_max=200, a_max=1.0))
def test_lossy_map_never_gains_norm(p):
    assert np.linalg.svd(transfer_present(p), compute_uv=False)[0] <= 1 + 1e-12


@given(params(n_max=200, a_max=0.99))
def test_k_ratio_is_tangent(p):
    k1, k2 = k_values(p)
    assert k1 / k2 == pytest.approx(np.tan(p.theta), rel=1e-12)


@pytest.mark.parametrize("n,a", [(2, 0.5), (3, 0.4), (4, 0.5), (6, 0.7)])
def test_super_regime_sums(n, a):
    tc = coeffs(IfmParams(n, a))
    assert tc.regime is Regime.SUPER
    z = tc.k2 + 1j * np.sqrt(tc.k1**2 - 1)
    # odd part of the binomial: purely imaginary; even part: real
    sigma1 = (z**n - np.conj(z) ** n) / 2
    sigma2 = (z**n + np.conj(z) ** n) / 2
    assert abs(sigma1.real) < 1e-12 * abs(sigma1) and abs(sigma2.imag) < 1e-12 * abs(sigma2)
    assert tc.sigma1 == pytest.approx(sigma1, rel=1e-10)
    assert tc.sigma2 == pytest.approx(sigma2.real, rel=1e-10)
