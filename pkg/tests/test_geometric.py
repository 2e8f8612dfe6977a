import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boundgme import inequalities, states
from boundgme.geometric import (
    LOG2E,
    GmeOptions,
    ProductState,
    e_log2_from_lambda,
    e_log2_pure,
    e_sin2_from_lambda,
    e_sin2_pure,
    lambda_max,
    stationarity_residual,
    support_lambda_profile,
)
from boundgme.tensor import PureState, StateError

from oracles import lambda_grid_oracle_3q, random_unitary_2

OPTS = GmeOptions(restarts=16, seed=0)


def _random_pure(n, seed):
    rng = np.random.default_rng(seed)
    return PureState.from_unnormalized(states.random_pure(2**n, rng))


@pytest.mark.parametrize("n", range(3, 9))
def test_ghz_lambda(n):
    res = lambda_max(states.ghz(n), OPTS)
    assert abs(res.lambda_max - 1 / math.sqrt(2)) <= 1e-12
    assert res.residual <= 1e-10 and res.converged


def test_product_state_has_lambda_one():
    rng = np.random.default_rng(3)
    f = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    f /= np.linalg.norm(f, axis=1, keepdims=True)
    psi = ProductState(f).to_state()
    assert abs(lambda_max(psi, OPTS).lambda_max - 1) <= 1e-12


@pytest.mark.parametrize("n", [3, 4, 5])
def test_w_state_lambda(n):
    w = np.zeros(2**n)
    for k in range(n):
        w[1 << k] = 1
    lam = lambda_max(PureState.from_unnormalized(w), OPTS).lambda_max
    assert abs(lam - ((n - 1) / n) ** ((n - 1) / 2)) <= 1e-10


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_random_three_qubit_lambda_matches_grid_oracle(seed):
    psi = _random_pure(3, seed)
    ours = lambda_max(psi, GmeOptions(restarts=32, seed=seed)).lambda_max
    oracle = lambda_grid_oracle_3q(psi.amplitudes)
    assert ours >= oracle - 1e-9
    assert abs(ours - oracle) <= 1e-6


def test_closest_product_reproduces_overlap():
    psi = _random_pure(4, 11)
    res = lambda_max(psi, OPTS)
    ov = np.vdot(res.closest_product.vector(), psi.amplitudes)
    assert abs(ov.imag) <= 1e-12 and ov.real >= 0
    assert abs(ov.real - res.lambda_max) <= 1e-12
    lam, resid = stationarity_residual(psi, res.closest_product)
    assert resid <= 1e-10


def test_sweeps_are_monotone():
    psi = _random_pure(5, 4)
    hist = lambda_max(psi, GmeOptions(restarts=4, seed=1), record=True).history
    assert len(hist) > 1
    assert all(b >= a - 1e-13 for a, b in zip(hist, hist[1:]))


def test_deterministic_given_seed():
    psi = _random_pure(5, 8)
    a = lambda_max(psi, GmeOptions(restarts=8, seed=5))
    b = lambda_max(psi, GmeOptions(restarts=8, seed=5))
    assert a.lambda_max == b.lambda_max
    assert np.array_equal(a.closest_product.factors, b.closest_product.factors)


def test_warm_start_is_accepted():
    psi = states.ghz(4)
    f = np.zeros((4, 2), dtype=complex)
    f[:, 0] = 1
    res = lambda_max(psi, GmeOptions(restarts=1), warm_start=ProductState(f))
    assert abs(res.lambda_max - 1 / math.sqrt(2)) <= 1e-12


def test_rejects_bad_input():
    with pytest.raises(StateError):
        lambda_max(states.smolin())
    with pytest.raises(ValueError):
        GmeOptions(restarts=0)


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**31), phase=st.floats(0, 2 * np.pi))
def test_invariant_under_global_phase(seed, phase):
    psi = _random_pure(4, seed)
    rotated = PureState(np.exp(1j * phase) * psi.amplitudes)
    a = lambda_max(psi, OPTS).lambda_max
    b = lambda_max(rotated, OPTS).lambda_max
    assert abs(a - b) <= 1e-9


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_invariant_under_local_unitaries(seed):
    rng = np.random.default_rng(seed)
    psi = _random_pure(4, seed)
    u = np.ones((1, 1))
    for _ in range(4):
        u = np.kron(u, random_unitary_2(rng))
    a = lambda_max(psi, OPTS).lambda_max
    b = lambda_max(PureState.from_unnormalized(u @ psi.amplitudes), OPTS).lambda_max
    assert abs(a - b) <= 1e-9


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 2**31), perm=st.permutations(range(4)))
def test_invariant_under_party_permutation(seed, perm):
    psi = _random_pure(4, seed)
    permuted = PureState(psi.tensor().transpose(perm).reshape(-1))
    a = lambda_max(psi, OPTS).lambda_max
    b = lambda_max(permuted, OPTS).lambda_max
    assert abs(a - b) <= 1e-9


@pytest.mark.parametrize("y", np.linspace(0, 1, 11))
def test_psi_y_lambda_closed_form(y):
    for sign, kind, k in [("+", "u", 1), ("-", "v", 3)]:
        lam = lambda_max(states.psi_y(5, y, sign, kind, k), OPTS).lambda_max
        assert abs(lam - inequalities.psi_y_lambda_closed(y)) <= 1e-9


def test_psi_y_closest_product_attains_closed_form():
    for y in (0.0, 0.3, 0.8, 1.0):
        phi = inequalities.psi_y_closest_product(5, y)
        psi = states.psi_y(5, y, "+", "u", 1)
        assert abs(abs(np.vdot(phi.vector(), psi.amplitudes)) - inequalities.psi_y_lambda_closed(y)) <= 1e-12


def test_measures_from_lambda():
    assert e_sin2_from_lambda(1 / math.sqrt(2)) == pytest.approx(0.5, abs=1e-15)
    assert e_log2_from_lambda(1 / math.sqrt(2)) == pytest.approx(1.0, abs=1e-15)
    assert e_log2_from_lambda(0.0) == np.inf
    assert e_sin2_pure(states.ghz(4)) == pytest.approx(0.5, abs=1e-12)
    assert e_log2_pure(states.ghz(4)) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_measure_chain_on_random_states(seed):
    psi = _random_pure(4, seed)
    lam = lambda_max(psi, GmeOptions(restarts=4, seed=seed)).lambda_max
    assert LOG2E * e_sin2_from_lambda(lam) <= e_log2_from_lambda(lam) + 1e-9


def test_smolin_support_profile_is_bounded():
    samples = support_lambda_profile(states.smolin(), 40, GmeOptions(restarts=8, seed=2))
    assert len(samples) == 40
    assert max(s.lambda_max for s in samples) <= 1 / math.sqrt(2) + 1e-6
    assert all(abs(s.e_sin2 - (1 - s.lambda_max**2)) < 1e-15 for s in samples)


def test_dur_support_profile_records_ghz_weight():
    samples = support_lambda_profile(states.dur(4, 0.3), 20, GmeOptions(restarts=8), reference=states.ghz(4))
    for s in samples:
        assert 0 <= s.y <= 1
        assert s.e_sin2 >= s.y / 2 - 1e-6
