import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import params, pure_states
from ifmchannel.bloch import BlochVector
from ifmchannel.channels import IfmParams, ifm_absent, ifm_present
from ifmchannel.metrics import (
    BipartitePureState,
    discriminate,
    embed_density,
    inner_pp,
    inner_pp_bloch,
    p_error,
    p_error_density,
    p_fail,
    p_loss,
    pure_trace_norm,
)
from ifmchannel.optimal import entangled_family_state, zero_error_states
from ifmchannel.sampling import random_pure
from ifmchannel.smallmat import trace_norm
from ifmchannel.transfer import basis_change, transfer_absent, transfer_present

ONE = np.array([1.0, 0.0])


def helstrom_numpy(psi, p):
    """Helstrom error from numpy's eigvalsh on the 3-dim channel outputs."""
    rho = embed_density(psi)
    m = p.q * ifm_present(rho, p) - (1 - p.q) * ifm_absent(rho, p)
    return 0.5 * (1 - np.sum(np.abs(np.linalg.eigvalsh(m))))


@given(pure_states(), st.integers(1, 10), st.floats(0, 1))
def test_transparent_object_has_no_loss(psi, n, q):
    assert abs(p_loss(psi, IfmParams(n, 1.0, q))) < 1e-12


def test_opaque_single_cycle_loses_everything():
    assert p_loss(ONE, IfmParams(1, 0.0, 0.7)) == pytest.approx(0.7, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 5, 30])
def test_opaque_loss_of_one(n):
    p = IfmParams(n, 0.0, 0.4)
    assert p_loss(ONE, p) == pytest.approx(0.4 * (1 - np.cos(p.theta) ** (2 * n)), abs=1e-14)


@given(pure_states(), st.integers(1, 10), st.floats(0, 1))
def test_transparent_error_is_prior_minimum(psi, n, q):
    assert p_error(psi, IfmParams(n, 1.0, q)) == pytest.approx(min(q, 1 - q), abs=1e-12)


@given(pure_states(), params())
def test_no_error_without_object_prior(psi, p):
    assert p_error(psi, IfmParams(p.n_cycles, p.a, 0.0)) == 0.0


@pytest.mark.parametrize("n", [1, 3, 8])
def test_opaque_one_is_error_free(n):
    p = IfmParams(n, 0.0, 0.5)
    assert p_error(ONE, p) < 1e-15
    assert abs(inner_pp(ONE, p)) < 1e-15


@given(pure_states(), params(a_max=1.0))
def test_closed_form_error_matches_helstrom(psi, p):
    assert abs(p_error(psi, p) - helstrom_numpy(psi, p)) < 1e-10
    assert abs(p_error(psi, p) - p_error_density(embed_density(psi), p)) < 1e-10


def test_transparent_helstrom_half():
    p = IfmParams(4, 1.0, 0.5)
    assert p_error_density(embed_density([0.6, 0.8]), p) == pytest.approx(0.5, abs=1e-12)


@given(params(n_max=6), st.integers(0, 2**31))
def test_mixing_never_helps_error(p, seed):
    r = np.random.default_rng(seed)
    w = r.dirichlet(np.ones(3))
    states = [random_pure(r, 2) for _ in range(3)]
    rho = sum(wi * embed_density(s) for wi, s in zip(w, states))
    assert p_error_density(rho, p) >= sum(wi * p_error(s, p) for wi, s in zip(w, states)) - 1e-10


def test_pure_trace_norm_examples():
    e0, e1 = np.eye(2)
    assert pure_trace_norm(1.0, e0, e0) == pytest.approx(0.0, abs=1e-15)
    assert pure_trace_norm(1.0, e0, e1) == pytest.approx(2.0)
    assert pure_trace_norm(2.0, e0, (e0 + e1) / np.sqrt(2)) == pytest.approx(np.sqrt(5.0))


@given(st.floats(0.01, 10), pure_states(3), pure_states(3))
def test_pure_trace_norm_matches_eigensolver(pfac, a, b):
    direct = trace_norm(pfac * np.outer(a, a.conj()) - np.outer(b, b.conj()))
    assert abs(pure_trace_norm(pfac, a, b) - direct) < 1e-10


def test_inner_product_vanishes_on_zero_error_bloch_vector():
    p = IfmParams(10, 0.3)
    states = zero_error_states(p)
    k1 = states[0].bloch.rx
    assert abs(inner_pp_bloch(BlochVector(k1, 0.0, np.sqrt(1 - k1 * k1)), p)) < 1e-15
    for s in states:
        assert abs(inner_pp(s.state_old, p)) < 1e-12


@given(pure_states(), params(a_max=0.99))
def test_bloch_inner_product_matches_direct(psi, p):
    r = BlochVector.from_state(basis_change(p.theta) @ psi)
    direct = inner_pp(psi, p)
    want = np.vdot(transfer_absent() @ psi, transfer_present(p) @ psi)
    assert abs(direct - want) < 1e-12
    assert abs(inner_pp_bloch(r, p) - direct) < 1e-10


def test_opaque_entangled_family_is_error_free():
    p = IfmParams(4, 0.0, 0.5)
    st_ = entangled_family_state(0.6, 0.8, p)
    assert p_error(st_, p) < 1e-10


def test_transparent_fail_is_half():
    assert p_fail([0.6, 0.8j], IfmParams(3, 1.0, 0.5)) == pytest.approx(0.5, abs=1e-12)


def test_opaque_fail_vanishes_for_large_n():
    p = IfmParams(2000, 0.0, 0.5)
    assert p_fail(ONE, p) == pytest.approx(0.5 * (1 - np.cos(p.theta) ** 4000), abs=1e-14)
    assert p_fail(ONE, p) < 1e-3


@given(pure_states(), params())
def test_fail_is_loss_plus_error(psi, p):
    assert abs(p_fail(psi, p) - p_loss(psi, p) - p_error(psi, p)) < 1e-10


@given(pure_states(4), params(n_max=6))
def test_discriminate_bipartite(v, p):
    res = discriminate(v, p)
    assert abs(res.p_fail - res.p_loss - res.p_error) < 1e-12
    p0, p1 = res.povm
    np.testing.assert_allclose(p0 + p1, np.eye(6), atol=1e-10)


def test_discriminate_json_round_trip():
    import json

    d = discriminate([1.0, 0.0], IfmParams(5, 0.0, 0.5)).to_dict()
    again = json.loads(json.dumps(d))
    assert again["p_error"] == 0.0
    assert len(again["povm"]["present"]) == 3


def test_bipartite_state_round_trip(rng):
    v = random_pure(rng, 4)
    s = BipartitePureState.from_vector(v)
    w = s.vector()
    assert abs(abs(np.vdot(w, v)) - 1) < 1e-12


def test_rejects_loss_population_and_bad_norm():
    with pytest.raises(ValueError):
        p_loss([0.6, 0.0, 0.8], IfmParams(2, 0.0))
    with pytest.raises(ValueError):
        p_loss([1.0, 1.0], IfmParams(2, 0.0))


@given(pure_states(), params(a_max=1.0))
def test_error_range(psi, p):
    assert 0.0 <= p_error(psi, p) <= min(p.q, 1 - p.q) + 1e-12


@given(pure_states(), params(a_max=0.99))
def test_loss_block_splits_off(psi, p):
    phi1 = transfer_present(p) @ psi
    phi2 = transfer_absent() @ psi
    m = p.q * np.outer(phi1, phi1.conj()) - (1 - p.q) * np.outer(phi2, phi2.conj())
    want = 0.5 * (1 - p_loss(psi, p) - trace_norm(m))
    assert abs(p_error_density(embed_density(psi), p) - want) < 1e-10
