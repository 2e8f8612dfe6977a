import numpy as np
import pytest

from boundgme import states
from boundgme.tensor import PureState, StateError, partial_trace


def test_bell_states_orthonormal():
    vecs = np.array([states.bell(i).amplitudes for i in range(4)])
    assert np.allclose(vecs @ vecs.conj().T, np.eye(4))


def test_ghz_phase():
    g = states.ghz(3, np.pi / 2)
    assert np.isclose(g.amplitudes[0], 1 / np.sqrt(2))
    assert np.isclose(g.amplitudes[7], 1j / np.sqrt(2))


def test_x_states_overlap_with_zero_string():
    zero = states.basis_vector("0000")
    assert np.isclose(abs(np.vdot(zero, states.x_state(0).amplitudes)), 1 / np.sqrt(2))
    for i in (1, 2, 3):
        assert abs(np.vdot(zero, states.x_state(i).amplitudes)) == 0


def test_xbar_view_amplitudes():
    a = states.xbar_view(3)
    assert a.shape == (2, 8)
    assert np.isclose(a[0, 6], 1 / np.sqrt(2)) and np.isclose(a[1, 1], 1 / np.sqrt(2))


def test_smolin_constructions_agree():
    diff = states.smolin("pairs").matrix - states.smolin("xform").matrix
    assert np.max(np.abs(diff)) <= 1e-14
    with pytest.raises(StateError):
        states.smolin("other")


def test_smolin_rank_and_purity():
    rho = states.smolin().matrix
    assert np.linalg.matrix_rank(rho, tol=1e-10) == 4
    assert np.isclose(np.trace(rho @ rho).real, 0.25)


def test_smolin_invariant_under_party_permutation():
    rho = states.smolin().matrix.reshape([2] * 8)
    for perm in ([1, 0, 2, 3], [2, 3, 0, 1], [0, 2, 1, 3], [3, 1, 2, 0]):
        axes = perm + [p + 4 for p in perm]
        assert np.allclose(rho.transpose(axes), rho)


def test_u_and_v_states():
    assert states.u_state(4, 1).amplitudes[0b1000] == 1
    assert states.v_state(4, 1).amplitudes[0b0111] == 1
    with pytest.raises(StateError):
        states.u_state(4, 0)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_dur_matches_original_at_critical_point(n):
    diff = states.dur(n, 1 / (n + 1)).matrix - states.dur_original(n).matrix
    assert np.max(np.abs(diff)) <= 1e-14


def test_dur_requires_four_parties():
    with pytest.raises(StateError):
        states.dur(3, 0.2)
    with pytest.raises(StateError):
        states.dur(4, 1.5)


def test_dur_endpoints():
    assert np.allclose(states.dur(4, 1.0).matrix, states.ghz(4).projector().matrix)
    d0 = states.dur(5, 0.0).matrix
    assert np.allclose(d0, np.diag(np.diag(d0)))
    assert np.isclose(np.trace(d0).real, 1.0)


def test_psi_y_is_normalized_and_has_ghz_weight():
    psi = states.psi_y(5, 0.3, "-", "v", 2)
    assert np.isclose(abs(np.vdot(states.ghz(5).amplitudes, psi.amplitudes)) ** 2, 0.3)
    with pytest.raises(StateError):
        states.psi_y(5, 0.3, "*", "v", 2)


def test_bell_like_unfolds_to_ghz_basis():
    a = states.bell_like(4, 0, "+")
    assert np.allclose(a.reshape(-1), states.ghz(4).amplitudes)
    b = states.bell_like(4, 2, "-")
    assert np.isclose(np.linalg.norm(b), 1.0)


def test_separable_candidates_are_diagonal_states():
    for sigma in (states.sigma_smolin(), states.sigma_dur(5, 0.4)):
        m = sigma.validate().matrix
        assert np.allclose(m, np.diag(np.diag(m)))
        assert np.isclose(np.trace(m).real, 1.0)


def test_reduced_states_in_smolin_support(rng):
    basis = np.array([states.x_state(i).amplitudes for i in range(4)]).T
    for _ in range(50):
        psi = PureState.from_unnormalized(basis @ states.random_pure(4, rng))
        for party in range(4):
            assert np.allclose(partial_trace(psi.projector(), [party]).matrix, np.eye(2) / 2, atol=1e-12)


@pytest.mark.parametrize(
    "name, n",
    [("smolin", 4), ("ghz:5", 5), ("ghz:3:0.5", 3), ("dur:5:0.2", 5), ("bell:2", 2), ("x:1", 4),
     ("u:4:2", 4), ("v:4:3", 4), ("psiy:4:0.3:+:u:1", 4), ("sigma-smolin", 4), ("sigma-dur:4:0.5", 4)],
)
def test_parse_state_name(name, n):
    assert states.parse_state_name(name).n_parties == n


@pytest.mark.parametrize("name", ["nope", "ghz:x", "dur:5", "bell:7", "dur:3:0.1"])
def test_parse_state_name_errors(name):
    with pytest.raises(StateError):
        states.parse_state_name(name)
