import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boundgme import states
from boundgme.tensor import (
    DensityMatrix,
    PartySplit,
    PureState,
    StateError,
    eig_hermitian,
    load_state,
    matrix_log2_on_support,
    overlap,
    partial_trace,
    partial_transpose,
    save_state,
    state_from_dict,
    state_to_dict,
    tensor_product,
)

from oracles import partial_trace_loops, partial_transpose_loops, random_density


def test_pure_state_rejects_unnormalized():
    with pytest.raises(StateError):
        PureState(np.array([1.0, 1.0]))
    psi = PureState.from_unnormalized([1.0, 1.0])
    assert np.isclose(np.linalg.norm(psi.amplitudes), 1.0)


def test_pure_state_rejects_non_qubit_dimension():
    with pytest.raises(StateError):
        PureState.from_unnormalized(np.ones(6))


def test_density_matrix_checks():
    with pytest.raises(StateError):
        DensityMatrix(np.array([[1, 1j], [0, 0]]))
    with pytest.raises(StateError):
        DensityMatrix(np.eye(2))
    with pytest.raises(StateError):
        DensityMatrix(np.diag([1.5, -0.5])).validate()


def test_tensor_product_ordering():
    zero = PureState(np.array([1.0, 0.0]))
    one = PureState(np.array([0.0, 1.0]))
    v = tensor_product([zero, one, one])
    # party 0 is the most significant bit: |011> = index 3
    assert v.amplitudes[3] == 1
    with pytest.raises(StateError):
        tensor_product([])


def test_overlap_value():
    assert np.isclose(abs(overlap(PureState(states.basis_vector("0000")), states.ghz(4))), 1 / np.sqrt(2))


def test_partial_trace_ghz_is_half_identity():
    r = partial_trace(states.ghz(4).projector(), [0])
    assert np.allclose(r.matrix, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_matches_loops(rng):
    rho = random_density(16, rng)
    for keep in ([0], [1, 3], [0, 2, 3], [2]):
        assert np.allclose(partial_trace(rho, keep).matrix, partial_trace_loops(rho, keep, 4), atol=1e-14)


def test_smolin_two_party_marginal_is_maximally_mixed():
    rho = states.smolin().matrix
    assert np.allclose(partial_trace_loops(rho, [0, 1], 4), np.eye(4) / 4, atol=1e-15)
    assert np.allclose(partial_trace(states.smolin(), [0, 1]).matrix, np.eye(4) / 4, atol=1e-15)


def test_bell_partial_transpose_spectrum():
    rho = states.bell(0).projector().matrix
    pt = partial_transpose_loops(rho, [1], 2)
    assert np.allclose(partial_transpose(rho, [1]), pt)
    assert np.allclose(np.sort(np.linalg.eigvalsh(pt)), [-0.5, 0.5, 0.5, 0.5])


def test_partial_transpose_matches_loops(rng):
    rho = random_density(8, rng)
    for subset in ([0], [1, 2], [0, 1, 2]):
        assert np.allclose(partial_transpose(rho, subset), partial_transpose_loops(rho, subset, 3))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**31), mask=st.integers(1, 15))
def test_partial_transpose_involution_and_trace(seed, mask):
    rho = random_density(16, np.random.default_rng(seed))
    subset = [p for p in range(4) if mask >> p & 1]
    pt = partial_transpose(rho, subset)
    assert np.allclose(partial_transpose(pt, subset), rho, atol=1e-15)
    assert np.isclose(np.trace(pt), 1.0)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**31), mask=st.integers(1, 14))
def test_partial_trace_preserves_trace_and_positivity(seed, mask):
    rho = random_density(16, np.random.default_rng(seed))
    keep = [p for p in range(4) if mask >> p & 1]
    r = partial_trace(rho, keep).validate()
    assert np.isclose(np.trace(r.matrix).real, 1.0)


def test_split_parse_and_swap():
    s = PartySplit.parse("0,1:2,3")
    assert s.side_a == {0, 1} and s.side_b == {2, 3}
    assert s.swapped().side_a == {2, 3}
    with pytest.raises(StateError):
        PartySplit.parse("0,1:1,2")
    with pytest.raises(StateError):
        PartySplit.parse("0:1", n_parties=3)


def test_eig_hermitian_gate():
    with pytest.raises(StateError):
        eig_hermitian(np.array([[0, 1], [0, 0]]))
    spec = eig_hermitian(np.diag([2.0, 1.0]))
    assert np.allclose(spec.eigenvalues, [1.0, 2.0])


def test_matrix_log_on_support():
    rho = np.diag([0.5, 0.5, 0.0, 0.0])
    log, proj = matrix_log2_on_support(rho)
    assert np.allclose(log, np.diag([-1.0, -1.0, 0, 0]))
    assert np.allclose(proj, np.diag([1.0, 1.0, 0, 0]))


def test_json_round_trip(tmp_path, rng):
    psi = PureState.from_unnormalized(rng.standard_normal(8) + 1j * rng.standard_normal(8))
    rho = DensityMatrix(random_density(4, rng))
    for obj in (psi, rho):
        d = state_to_dict(obj)
        assert d["kind"] in ("pure", "density")
        back = state_from_dict(d)
        path = tmp_path / f"{d['kind']}.json"
        save_state(obj, path)
        again = load_state(path)
        a = obj.amplitudes if isinstance(obj, PureState) else obj.matrix
        for other in (back, again):
            b = other.amplitudes if isinstance(other, PureState) else other.matrix
            assert np.array_equal(a, b)


def test_json_rejects_bad_payload():
    with pytest.raises(StateError):
        state_from_dict({"kind": "pure", "n_parties": 2, "re": [1, 0], "im": [0, 0]})
    with pytest.raises(StateError):
        state_from_dict({"kind": "mixed", "n_parties": 1, "re": [1, 0], "im": [0, 0]})
