import json
import math

import numpy as np
import pytest

from boundgme import roof, states
from boundgme.geometric import LOG2E, GmeOptions
from boundgme.roof import (
    Decomposition,
    RoofOptions,
    average_entanglement,
    certificate_dur,
    certificate_smolin,
    eigen_decomposition,
    haar_unitary,
    optimize_roof,
    reconstruct,
)
from boundgme.tensor import DensityMatrix, StateError

from oracles import random_density, two_qubit_geometric_measure


def test_certificates_reconstruct_their_states():
    assert np.allclose(reconstruct(certificate_smolin()).matrix, states.smolin().matrix, atol=1e-15)
    for n, x in [(4, 0.2), (5, 0.7), (6, 1 / 7)]:
        dec = certificate_dur(n, x)
        assert len(dec) == 4 * n
        assert np.allclose(reconstruct(dec).matrix, states.dur(n, x).matrix, atol=1e-15)


def test_certificate_values():
    opts = GmeOptions(restarts=8)
    assert abs(average_entanglement(certificate_smolin(), "sin2", opts) - 0.5) <= 1e-9
    assert abs(average_entanglement(certificate_smolin(), "log2", opts) - 1.0) <= 1e-9
    x = 0.2
    assert abs(average_entanglement(certificate_dur(4, x), "sin2", opts) - x / 2) <= 1e-9
    assert abs(average_entanglement(certificate_dur(4, x), "log2", opts) - math.log2(2 / (2 - x))) <= 1e-9


def test_decomposition_validation():
    with pytest.raises(StateError):
        Decomposition(np.array([0.5, 0.6]), [states.ghz(2), states.ghz(2)])
    with pytest.raises(StateError):
        Decomposition(np.ones(1), [states.ghz(2)], np.array([[1.0, 1.0]]))


def test_decomposition_json_round_trip():
    res = optimize_roof(states.smolin(), "sin2", RoofOptions(ensemble_size=6, outer_restarts=1, max_sweeps=2))
    text = json.dumps(res.best.to_dict())
    back = Decomposition.from_dict(json.loads(text))
    assert np.array_equal(back.weights, res.best.weights)
    assert np.array_equal(back.isometry, res.best.isometry)
    assert np.allclose(reconstruct(back).matrix, states.smolin().matrix, atol=1e-12)


def test_haar_unitary_is_unitary(rng):
    u = haar_unitary(7, rng)
    assert np.allclose(u.conj().T @ u, np.eye(7), atol=1e-13)


def test_eigen_decomposition_is_descending():
    vals, vecs = eigen_decomposition(states.dur(4, 0.5))
    assert np.all(np.diff(vals) <= 0)
    assert vecs.shape == (16, len(vals))


def test_pure_input_takes_direct_path():
    res = optimize_roof(states.ghz(4).projector(), "sin2")
    assert abs(res.value - 0.5) <= 1e-12 and res.sweeps == 0


def test_rejects_bad_options():
    with pytest.raises(ValueError):
        optimize_roof(states.smolin(), "concurrence")
    with pytest.raises(StateError):
        optimize_roof(states.smolin(), "sin2", RoofOptions(ensemble_size=2))


@pytest.fixture(scope="module")
def smolin_run():
    return optimize_roof(states.smolin(), "sin2", RoofOptions(ensemble_size=8, outer_restarts=2, seed=3))


def test_optimizer_result_invariants(smolin_run):
    res = smolin_run
    assert res.value <= res.start_value + 1e-12
    assert res.value == min(res.restart_values)
    iso = res.best.isometry
    assert np.allclose(iso.conj().T @ iso, np.eye(iso.shape[1]), atol=1e-10)
    assert np.allclose(reconstruct(res.best).matrix, states.smolin().matrix, atol=1e-10)
    # the returned value is an upper bound and the certificate is optimal
    assert res.value >= 0.5 - 1e-6


def test_optimizer_value_is_achieved_by_returned_decomposition(smolin_run):
    avg = average_entanglement(smolin_run.best, "sin2", GmeOptions(restarts=16))
    assert avg <= smolin_run.value + 1e-9


def test_measure_chain_on_members(smolin_run):
    opts = GmeOptions(restarts=8)
    for kind_sin, kind_log in [("sin2", "log2")]:
        for s in smolin_run.best.states:
            d = Decomposition(np.ones(1), [s])
            assert LOG2E * average_entanglement(d, kind_sin, opts) <= average_entanglement(d, kind_log, opts) + 1e-9


@pytest.mark.parametrize("seed", [0, 1])
def test_two_qubit_roof_matches_closed_form(seed):
    rho = DensityMatrix(random_density(4, np.random.default_rng(seed), rank=2))
    exact = two_qubit_geometric_measure(rho.matrix)
    res = optimize_roof(rho, "sin2", RoofOptions(ensemble_size=4, outer_restarts=3, seed=seed, max_sweeps=200, min_step=1e-4))
    assert res.value >= exact - 1e-9
    assert res.value - exact <= 1e-3


def test_separable_mixture_reaches_zero():
    # rank 2 with a degenerate spectrum; p|00> + (1-p)|11> style mixture rotated into Bell pairs
    rho = DensityMatrix(0.6 * states.bell(0).projector().matrix + 0.4 * states.bell(1).projector().matrix)
    assert two_qubit_geometric_measure(rho.matrix) == pytest.approx((1 - math.sqrt(1 - 0.04)) / 2)
    rho = DensityMatrix((states.bell(0).projector().matrix + states.bell(1).projector().matrix) / 2)
    res = optimize_roof(rho, "sin2", RoofOptions(ensemble_size=2, outer_restarts=2, max_sweeps=200, min_step=1e-5))
    assert res.value <= 1e-6


def test_deterministic_given_seed():
    opts = RoofOptions(ensemble_size=10, outer_restarts=2, max_sweeps=3, seed=9)
    a = optimize_roof(states.dur(4, 0.3), "sin2", opts)
    b = optimize_roof(states.dur(4, 0.3), "sin2", opts)
    assert a.value == b.value and a.restart_values == b.restart_values
