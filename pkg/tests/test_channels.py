import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import params, pure_states
from ifmchannel.channels import (
    IfmParams,
    KrausChannel,
    absorption_channel,
    apply_channel,
    check_density,
    detector_model_channel,
    generalized_trace_distance,
    ifm_absent,
    ifm_present,
    optimal_projectors,
    pure_density,
    restrict_to_12v,
    rotation_channel,
)
from ifmchannel.errors import DimensionMismatchError
from ifmchannel.metrics import embed_density
from ifmchannel.sampling import random_density, random_hermitian
from ifmchannel.smallmat import partial_trace, trace_norm
from ifmchannel.transfer import transfer_present

E1, E2, E3 = np.eye(3)


def proj(v):
    return np.outer(v, np.conj(v)).astype(complex)


def test_params_validation():
    with pytest.raises(ValueError):
        IfmParams(0, 0.5)
    with pytest.raises(ValueError):
        IfmParams(3, 1.5)
    with pytest.raises(ValueError):
        IfmParams(3, 0.5, -0.1)
    assert IfmParams(4, 0.2).theta == pytest.approx(np.pi / 8)


def test_rotation_angle_range():
    for bad in (0.0, -0.4, 2.0):
        with pytest.raises(ValueError):
            rotation_channel(bad)


def test_kraus_completeness_enforced():
    with pytest.raises(ValueError):
        KrausChannel([np.diag([1.0, 0.5, 1.0])])


def test_quarter_rotation():
    out = apply_channel(rotation_channel(np.pi / 2), proj(E1))
    np.testing.assert_allclose(out, proj(E2), atol=1e-15)


@pytest.mark.parametrize("theta", [1e-3, 0.3, 1.1, np.pi / 2])
def test_rotation_leaves_loss_state(theta):
    np.testing.assert_allclose(apply_channel(rotation_channel(theta), proj(E3)), proj(E3), atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 7, 50])
def test_n_rotations_transfer_fully(n):
    rho = proj(E1)
    ch = rotation_channel(np.pi / (2 * n))
    for _ in range(n):
        rho = apply_channel(ch, rho)
    np.testing.assert_allclose(rho, proj(E2), atol=1e-12)


def test_transparent_absorption_is_identity(rng):
    ch = absorption_channel(1.0)
    assert np.all(ch.kraus_ops[1] == 0)
    rho = random_density(rng, 3)
    np.testing.assert_allclose(apply_channel(ch, rho), rho, atol=1e-15)


def test_opaque_absorbs_arm_two():
    np.testing.assert_allclose(apply_channel(absorption_channel(0.0), proj(E2)), proj(E3), atol=1e-15)


def test_partial_absorption():
    out = apply_channel(absorption_channel(0.6), proj(E2))
    np.testing.assert_allclose(out, np.diag([0, 0.36, 0.64]), atol=1e-15)


def test_apply_channel_basic(rng):
    rho = random_density(rng, 3)
    identity = KrausChannel([np.eye(3)])
    np.testing.assert_allclose(apply_channel(identity, rho), rho)
    r = rotation_channel(0.4)
    inverse = KrausChannel([r.kraus_ops[0].conj().T])
    back = apply_channel(inverse, apply_channel(r, rho))
    np.testing.assert_allclose(back, rho, atol=1e-12)
    assert np.trace(apply_channel(absorption_channel(0.6), np.eye(3) / 3)).real == pytest.approx(1.0, abs=1e-14)


def test_apply_channel_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        apply_channel(absorption_channel(0.5), np.eye(4) / 4)


def test_check_density_rejects_bad_input():
    with pytest.raises(ValueError):
        check_density(np.diag([1.0, 0.5, 0.0]))
    with pytest.raises(ValueError):
        check_density(np.diag([1.5, -0.5, 0.0]))


def test_present_transparent_equals_absent(rng):
    p = IfmParams(5, 1.0)
    rho = random_density(rng, 3)
    np.testing.assert_allclose(ifm_present(rho, p), ifm_absent(rho, p), atol=1e-12)


def test_single_cycle_opaque_loses_photon():
    np.testing.assert_allclose(ifm_present(proj(E1), IfmParams(1, 0.0)), proj(E3), atol=1e-15)


@given(params(a_max=0.99))
def test_loss_population_matches_transfer(p):
    phi = transfer_present(p) @ np.array([1.0, 0.0])
    out = ifm_present(proj(E1), p)
    assert abs(out[2, 2].real - (1 - np.vdot(phi, phi).real)) < 1e-10


def test_absent_examples(rng):
    p = IfmParams(6, 0.4)
    np.testing.assert_allclose(ifm_absent(proj(E1), p), proj(E2), atol=1e-12)
    np.testing.assert_allclose(ifm_absent(proj(E3), p), proj(E3), atol=1e-15)
    psi = np.array([0.6, 0.8j, 0.0])
    out = ifm_absent(proj(psi), p)
    assert np.trace(out @ out).real == pytest.approx(1.0, abs=1e-12)


@given(params(n_max=6), pure_states(4))
def test_bipartite_marginal_matches_single_photon(p, v):
    rho_ab = embed_density(v)
    out = partial_trace(ifm_present(rho_ab, p), 3, 2)
    np.testing.assert_allclose(out, ifm_present(partial_trace(rho_ab, 3, 2), p), atol=1e-12)


@pytest.mark.parametrize("a", [0.0, 0.3, 0.7, 1.0])
def test_detector_model_reduction(a):
    red = restrict_to_12v(detector_model_channel(a))
    for got, want in zip(red.kraus_ops, absorption_channel(a).kraus_ops):
        assert np.max(np.abs(got - want)) < 1e-12


def test_detector_model_limits():
    e = np.eye(4)
    out = apply_channel(detector_model_channel(1.0), proj(e[1]))
    assert abs(out[3, 3]) < 1e-15
    out = apply_channel(detector_model_channel(0.0), proj(e[1]))
    np.testing.assert_allclose(out, proj(e[3]), atol=1e-15)


def test_trace_distance_examples():
    r = pure_density([1, 0])
    assert generalized_trace_distance(r, r, 0.5) == pytest.approx(0.0, abs=1e-15)
    assert generalized_trace_distance(r, pure_density([0, 1]), 0.5) == pytest.approx(1.0)


@given(st.floats(0, 1), st.integers(0, 2**31))
def test_trace_distance_contracts_under_partial_trace(q, seed):
    r = np.random.default_rng(seed)
    r1, r2 = random_density(r, 6), random_density(r, 6)
    full = generalized_trace_distance(r1, r2, q)
    red = generalized_trace_distance(partial_trace(r1, 3, 2), partial_trace(r2, 3, 2), q)
    assert red <= full + 1e-10


def test_optimal_projectors_sigma_z():
    m = np.diag([1.0, -1.0])
    p0, p1 = optimal_projectors(m)
    np.testing.assert_allclose(p1, np.diag([1, 0]))
    np.testing.assert_allclose(p0, np.diag([0, 1]))
    assert np.trace((p1 - p0) @ m).real == pytest.approx(2.0)


def test_optimal_projectors_zero_matrix():
    p0, p1 = optimal_projectors(np.zeros((3, 3)))
    np.testing.assert_allclose(p0 + p1, np.eye(3), atol=1e-15)


@pytest.mark.parametrize("dim", [2, 3, 6])
def test_optimal_projectors_reach_trace_norm(rng, dim):
    m = random_hermitian(rng, dim)
    p0, p1 = optimal_projectors(m)
    np.testing.assert_allclose(p0 + p1, np.eye(dim), atol=1e-12)
    np.testing.assert_allclose(p1 @ p1, p1, atol=1e-12)
    assert np.trace((p1 - p0) @ m).real == pytest.approx(trace_norm(m), abs=1e-10)
