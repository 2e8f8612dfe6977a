"""Dense linear algebra over ordered multi-qubit systems.

Basis convention: party 0 is the most significant bit of the computational
basis index, so amplitude ``psi[b0 b1 ... b_{N-1}]`` sits at index
``sum(b_i * 2**(N-1-i))``. Every module and file format shares this ordering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
SUPPORT_EPS = 1e-10


class StateError(ValueError):
    """Raised for malformed states, splits or party sets."""


def _n_parties_from_dim(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if n < 1 or 2**n != dim:
        raise StateError(f"dimension {dim} is not 2**N with N >= 1")
    return n


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over ``n_parties`` qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        _n_parties_from_dim(amps.size)
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise StateError(f"state not normalized (norm = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_unnormalized(cls, vec) -> "PureState":
        vec = np.asarray(vec, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise StateError("zero vector cannot be normalized")
        return cls(vec / norm)

    @property
    def n_parties(self) -> int:
        return _n_parties_from_dim(self.amplitudes.size)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis of length 2 per party."""
        return self.amplitudes.reshape((2,) * self.n_parties)

    def projector(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def __repr__(self):
        return f"PureState(n_parties={self.n_parties})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace matrix over ``n_parties`` qubits.

    Hermiticity and trace are checked on construction. Positivity costs an
    eigendecomposition, so it is only checked by :meth:`validate`.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise StateError(f"density matrix must be square, got shape {m.shape}")
        _n_parties_from_dim(m.shape[0])
        herm_err = np.max(np.abs(m - m.conj().T))
        if herm_err > NORM_TOL:
            raise StateError(f"matrix not Hermitian (max deviation {herm_err:.3e})")
        tr = np.trace(m)
        if abs(tr - 1.0) > NORM_TOL:
            raise StateError(f"trace is {tr!r}, expected 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n_parties(self) -> int:
        return _n_parties_from_dim(self.matrix.shape[0])

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self) -> "DensityMatrix":
        lo = np.linalg.eigvalsh(self.matrix)[0]
        if lo < -PSD_TOL:
            raise StateError(f"matrix not positive semidefinite (min eigenvalue {lo:.3e})")
        return self

    def __repr__(self):
        return f"DensityMatrix(n_parties={self.n_parties})"


@dataclass(frozen=True)
class PartySplit:
    side_a: frozenset
    side_b: frozenset

    @classmethod
    def of(cls, side_a: Iterable[int], side_b: Iterable[int], n_parties: int | None = None) -> "PartySplit":
        a, b = frozenset(int(i) for i in side_a), frozenset(int(i) for i in side_b)
        if not a or not b:
            raise StateError("both sides of a split must be non-empty")
        if a & b:
            raise StateError(f"split sides overlap on {sorted(a & b)}")
        union = a | b
        n = len(union) if n_parties is None else n_parties
        if union != set(range(n)):
            raise StateError(f"split {sorted(a)}:{sorted(b)} does not cover parties 0..{n - 1}")
        return cls(a, b)

    @classmethod
    def parse(cls, text: str, n_parties: int | None = None) -> "PartySplit":
        """Parse ``"0,1:2,3"`` into a split."""
        try:
            left, right = text.split(":")
            a = [int(t) for t in left.split(",") if t.strip()]
            b = [int(t) for t in right.split(",") if t.strip()]
        except ValueError as exc:
            raise StateError(f"malformed partition {text!r}") from exc
        return cls.of(a, b, n_parties)

    @property
    def n_parties(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def swapped(self) -> "PartySplit":
        return PartySplit(self.side_b, self.side_a)


@dataclass(frozen=True)
class HermitianSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_pure_vec(state) -> np.ndarray:
    if isinstance(state, PureState):
        return state.amplitudes
    return np.asarray(state, dtype=complex).reshape(-1)


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def tensor_product(factors: Sequence[PureState]) -> PureState:
    if len(factors) == 0:
        raise StateError("empty product")
    out = np.ones(1, dtype=complex)
    for f in factors:
        out = np.kron(out, _as_pure_vec(f))
    return PureState.from_unnormalized(out)


def overlap(a: PureState, b: PureState) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    va, vb = _as_pure_vec(a), _as_pure_vec(b)
    if va.shape != vb.shape:
        raise StateError(f"dimension mismatch: {va.size} vs {vb.size}")
    return complex(np.vdot(va, vb))


def _check_parties(parties: Iterable[int], n: int) -> list[int]:
    out = sorted({int(p) for p in parties})
    if any(p < 0 or p >= n for p in out):
        raise StateError(f"party labels {out} out of range for {n} parties")
    return out


def partial_trace(rho, keep: Iterable[int]) -> DensityMatrix:
    m = _as_matrix(rho)
    n = _n_parties_from_dim(m.shape[0])
    keep = _check_parties(keep, n)
    if not keep or len(keep) == n:
        raise StateError("keep must be a non-empty proper subset of the parties")
    drop = [p for p in range(n) if p not in keep]
    t = m.reshape((2,) * (2 * n))
    # bra axes of party p sit at index n + p
    row_axes = keep + drop
    col_axes = [n + p for p in keep] + [n + p for p in drop]
    t = t.transpose(row_axes + col_axes)
    dk, dd = 2 ** len(keep), 2 ** len(drop)
    t = t.reshape(dk, dd, dk, dd)
    return DensityMatrix(np.einsum("ajbj->ab", t))


def partial_transpose(rho, subset: Iterable[int]) -> np.ndarray:
    """Transpose the indices of the parties in ``subset``. Pure index swap."""
    m = _as_matrix(rho)
    n = _n_parties_from_dim(m.shape[0])
    subset = _check_parties(subset, n)
    if not subset:
        raise StateError("partial transpose needs a non-empty subset")
    axes = list(range(2 * n))
    for p in subset:
        axes[p], axes[n + p] = axes[n + p], axes[p]
    return m.reshape((2,) * (2 * n)).transpose(axes).reshape(m.shape)


def eig_hermitian(m) -> HermitianSpectrum:
    m = _as_matrix(m)
    err = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if err > HERMITIAN_TOL:
        raise StateError(f"matrix not Hermitian within {HERMITIAN_TOL} (deviation {err:.3e})")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return HermitianSpectrum(w, v)


def matrix_log2_on_support(rho, eps: float = SUPPORT_EPS) -> tuple[np.ndarray, np.ndarray]:
    """Base-2 logarithm of ``rho`` on the span of eigenvalues above ``eps``.

    Returns ``(log2_matrix, support_projector)``; the logarithm is zero off
    the support.
    """
    spec = eig_hermitian(rho)
    mask = spec.eigenvalues > eps
    v = spec.eigenvectors[:, mask]
    logs = np.log2(spec.eigenvalues[mask])
    return (v * logs) @ v.conj().T, v @ v.conj().T


# -- JSON state format ------------------------------------------------------


def state_to_dict(state) -> dict:
    if isinstance(state, PureState):
        data, kind = state.amplitudes, "pure"
    elif isinstance(state, DensityMatrix):
        data, kind = state.matrix.reshape(-1), "density"
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    return {
        "kind": kind,
        "n_parties": state.n_parties,
        "re": [float(x) for x in data.real],
        "im": [float(x) for x in data.imag],
    }


def state_from_dict(obj: dict):
    try:
        kind, n = obj["kind"], int(obj["n_parties"])
        data = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise StateError(f"malformed state object: {exc}") from exc
    d = 2**n
    if kind == "pure":
        if data.size != d:
            raise StateError(f"pure state needs {d} amplitudes, got {data.size}")
        return PureState(data)
    if kind == "density":
        if data.size != d * d:
            raise StateError(f"density matrix needs {d * d} entries, got {data.size}")
        return DensityMatrix(data.reshape(d, d)).validate()
    raise StateError(f"unknown state kind {kind!r}")


def _dumps(obj) -> str:
    # repr of a float is the shortest round-trip string (<= 17 significant digits)
    return json.dumps(obj, indent=None, separators=(",", ":"))


def save_state(state, path) -> None:
    with open(path, "w") as fh:
        fh.write(_dumps(state_to_dict(state)))
        fh.write("\n")


def load_state(path):
    with open(path) as fh:
        return state_from_dict(json.load(fh))
