"""Convex-roof extension of the geometric measures.

Every pure-state decomposition of a rank-``n`` state with ``M >= n`` members
is generated by an ``M x n`` isometry ``U`` acting on the scaled eigenvectors,
``phi~_k = sum_i U_ki sqrt(lambda_i) xi_i``. The optimizer searches over
``U`` as the first ``n`` columns of an ``M x M`` unitary. Moves are
exponentials of anti-Hermitian generators supported on two rows (complex
Givens rotations), which only touch two members at a time, so each trial
move costs two entanglement-eigenvalue evaluations warm-started from the
members' previous closest product states.

Any decomposition gives an upper bound on the roof; the values returned
here are upper bounds by construction. Exact values for the Smolin and Dur
states come from the certificate decompositions together with the support
bounds checked elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometric import (
    GmeOptions,
    ascend,
    e_log2_from_lambda,
    e_sin2_from_lambda,
    haar_qubits,
    lambda_max,
)
from .states import ghz, psi_y, x_state
from .tensor import DensityMatrix, PureState, StateError, eig_hermitian, state_from_dict, state_to_dict

KINDS = ("sin2", "log2")
MIN_WEIGHT = 1e-12


def _member_entanglement(kind: str, lam: float) -> float:
    if kind == "sin2":
        return e_sin2_from_lambda(lam)
    if kind == "log2":
        return e_log2_from_lambda(lam)
    raise ValueError(f"unknown measure {kind!r}; expected one of {KINDS}")


@dataclass
class Decomposition:
    weights: np.ndarray
    states: list
    isometry: np.ndarray | None = None

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        if len(self.weights) != len(self.states):
            raise StateError("weights and states differ in length")
        if np.any(self.weights < 0) or abs(self.weights.sum() - 1) > 1e-12:
            raise StateError("weights must be non-negative and sum to 1")
        if self.isometry is not None:
            u = np.asarray(self.isometry, dtype=complex)
            err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[1])))
            if err > 1e-10:
                raise StateError(f"isometry columns not orthonormal (error {err:.2e})")
            self.isometry = u

    def __len__(self):
        return len(self.states)

    def to_dict(self) -> dict:
        out = {"weights": [float(w) for w in self.weights], "states": [state_to_dict(s) for s in self.states]}
        if self.isometry is not None:
            out["isometry_re"] = [[float(v) for v in row] for row in self.isometry.real]
            out["isometry_im"] = [[float(v) for v in row] for row in self.isometry.imag]
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "Decomposition":
        iso = None
        if "isometry_re" in obj:
            iso = np.asarray(obj["isometry_re"], dtype=float) + 1j * np.asarray(obj["isometry_im"], dtype=float)
        return cls(np.asarray(obj["weights"]), [state_from_dict(s) for s in obj["states"]], iso)


def reconstruct(dec: Decomposition) -> DensityMatrix:
    vecs = np.array([s.amplitudes for s in dec.states])
    return DensityMatrix((vecs.T * dec.weights) @ vecs.conj())


def average_entanglement(dec: Decomposition, kind: str = "sin2", opts: GmeOptions | None = None) -> float:
    """Weighted average of the pure-state measure over the members."""
    total = []
    for w, s in zip(dec.weights, dec.states):
        total.append(w * _member_entanglement(kind, lambda_max(s, opts).lambda_max))
    return math.fsum(total)


def certificate_smolin() -> Decomposition:
    """Even mixture of the four GHZ-like X states."""
    return Decomposition(np.full(4, 0.25), [x_state(i) for i in range(4)])


def certificate_dur(n: int, x: float) -> Decomposition:
    """Even mixture of the 4N states sqrt(x)|GHZ> +- sqrt(1-x)|u_k> and with |v_k>."""
    states = [psi_y(n, x, a, b, k) for k in range(1, n + 1) for a in "+-" for b in "uv"]
    return Decomposition(np.full(4 * n, 1 / (4 * n)), states)


@dataclass(frozen=True)
class RoofOptions:
    ensemble_size: int | None = None
    outer_restarts: int = 8
    max_sweeps: int = 60
    initial_step: float = 0.3
    min_step: float = 1e-3
    seed: int = 0
    inner: GmeOptions = field(default_factory=lambda: GmeOptions(restarts=4))
    support_eps: float = 1e-10
    search_tol: float = 1e-10
    search_iters: int = 500

    def resolved_size(self, rank: int) -> int:
        m = self.ensemble_size if self.ensemble_size is not None else max(rank, min(2 * rank, 16))
        if m < rank:
            raise StateError(f"ensemble size {m} smaller than rank {rank}")
        return m


@dataclass
class RoofResult:
    value: float
    best: Decomposition
    start_value: float
    restart_values: list
    sweeps: int


def haar_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def givens_generator(m: int, k: int, l: int, angle: float, phase: float) -> np.ndarray:
    """Anti-Hermitian generator rotating rows ``k`` and ``l``."""
    g = np.zeros((m, m), dtype=complex)
    g[k, l] = -angle * np.exp(-1j * phase)
    g[l, k] = angle * np.exp(1j * phase)
    return g


def _rotation(angle: float, phase: float) -> np.ndarray:
    # exp of the 2x2 block of givens_generator
    c, s = math.cos(angle), math.sin(angle)
    e = complex(math.cos(phase), math.sin(phase))
    return np.array([[c, -s * e.conjugate()], [s * e, c]])


class _Ensemble:
    """Unnormalized members ``phi~_k`` with cached closest product states."""

    def __init__(self, scaled: np.ndarray, w: np.ndarray, n_parties: int, kind: str, inner: GmeOptions, tol: float, max_iters: int):
        self.n = n_parties
        self.kind = kind
        self.tol = tol
        self.max_iters = max_iters
        self.w = w
        self.members = w[:, : scaled.shape[0]] @ scaled  # (M, dim)
        self.factors = np.empty((len(self.members), n_parties, 2), dtype=complex)
        self.lam = np.zeros(len(self.members))
        for k, v in enumerate(self.members):
            nv = np.linalg.norm(v)
            if nv ** 2 < MIN_WEIGHT:
                self.factors[k] = haar_qubits(np.random.default_rng(k), (n_parties,))
                continue
            res = lambda_max(PureState(v / nv), inner)
            self.factors[k], self.lam[k] = res.closest_product.factors, res.lambda_max
        self.cost = self._costs(self.members, self.lam)

    def _costs(self, members: np.ndarray, lam: np.ndarray) -> np.ndarray:
        p = np.sum(np.abs(members) ** 2, axis=1)
        e = np.array([_member_entanglement(self.kind, l) if pk >= MIN_WEIGHT else 0.0 for pk, l in zip(p, lam)])
        return p * e

    def total(self) -> float:
        return math.fsum(self.cost)

    def trial(self, k: int, l: int, moves: list[tuple[float, float]]):
        """Evaluate several rotations of rows ``k, l``; return the best one."""
        pair = self.members[[k, l]]
        cands, warm = [], []
        for angle, phase in moves:
            cands.append(_rotation(angle, phase) @ pair)
            warm.append(self.factors[[k, l]])
        cands = np.concatenate(cands)  # (2T, dim)
        warm = np.concatenate(warm)
        norms = np.linalg.norm(cands, axis=1)
        safe = np.where(norms > 0, norms, 1.0)
        chi = (cands / safe[:, None]).reshape((len(cands),) + (2,) * self.n)
        f, lam, _, _, _ = ascend(chi, warm, self.max_iters, self.tol)
        costs = self._costs(cands, lam).reshape(len(moves), 2).sum(axis=1)
        best = int(np.argmin(costs))
        return costs[best], best, cands[2 * best : 2 * best + 2], f[2 * best : 2 * best + 2], lam[2 * best : 2 * best + 2]

    def accept(self, k, l, rot, new_members, new_factors, new_lam):
        self.members[[k, l]] = new_members
        self.factors[[k, l]] = new_factors
        self.lam[[k, l]] = new_lam
        self.cost[[k, l]] = self._costs(new_members, new_lam)
        self.w[[k, l]] = rot @ self.w[[k, l]]


def _search(ens: _Ensemble, opts: RoofOptions) -> int:
    m = len(ens.members)
    step = opts.initial_step
    sweeps = 0
    pairs = [(k, l) for k in range(m) for l in range(k + 1, m)]
    while sweeps < opts.max_sweeps and step >= opts.min_step:
        improved = 0
        for k, l in pairs:
            current = ens.cost[k] + ens.cost[l]
            if current == 0:
                continue
            moves = [(step, 0.0), (-step, 0.0), (step, math.pi / 2), (-step, math.pi / 2)]
            cost, i, mem, fac, lam = ens.trial(k, l, moves)
            if cost < current - 1e-15:
                ens.accept(k, l, _rotation(*moves[i]), mem, fac, lam)
                improved += 1
        sweeps += 1
        if improved == 0:
            step /= 2
        elif improved > len(pairs) // 4:
            step = min(step * 1.5, math.pi / 4)
    return sweeps


def _final_decomposition(ens: _Ensemble, n_cols: int, kind: str, inner: GmeOptions) -> tuple[float, Decomposition]:
    p = np.sum(np.abs(ens.members) ** 2, axis=1)
    keep = np.flatnonzero(p >= MIN_WEIGHT)
    states, values = [], []
    for k in keep:
        psi = PureState.from_unnormalized(ens.members[k])
        lam = max(lambda_max(psi, inner, warm_start=ens.factors[k]).lambda_max, ens.lam[k])
        states.append(psi)
        values.append(p[k] * _member_entanglement(kind, lam))
    weights = p[keep] / p[keep].sum()
    return math.fsum(values), Decomposition(weights, states, ens.w[:, :n_cols])


def eigen_decomposition(rho: DensityMatrix, eps: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues above ``eps`` (descending) and their eigenvectors as columns."""
    spec = eig_hermitian(rho.matrix)
    keep = spec.eigenvalues > eps
    vals, vecs = spec.eigenvalues[keep][::-1], spec.eigenvectors[:, keep][:, ::-1]
    return vals, vecs


def optimize_roof(rho: DensityMatrix, kind: str = "sin2", opts: RoofOptions | None = None) -> RoofResult:
    """Upper bound on the convex roof of ``kind`` by search over decompositions.

    Restart 0 starts from the eigendecomposition; the others from Haar-random
    ``M x M`` unitaries drawn from ``(seed, restart)`` streams. The returned
    value is never larger than the eigendecomposition's average.
    """
    opts = opts or RoofOptions()
    if kind not in KINDS:
        raise ValueError(f"unknown measure {kind!r}; expected one of {KINDS}")
    vals, vecs = eigen_decomposition(rho, opts.support_eps)
    rank = len(vals)
    if rank == 0:
        raise StateError("rank-0 input")
    n_parties = rho.n_parties
    if rank == 1:
        psi = PureState.from_unnormalized(vecs[:, 0])
        value = _member_entanglement(kind, lambda_max(psi, opts.inner).lambda_max)
        dec = Decomposition(np.ones(1), [psi], np.ones((1, 1), dtype=complex))
        return RoofResult(value, dec, value, [value], 0)
    m = opts.resolved_size(rank)
    # rows are sqrt(lambda_i) xi_i, so members = U @ scaled
    scaled = (vecs * np.sqrt(vals)).T
    best_value, best_dec, start_value = math.inf, None, None
    restart_values, total_sweeps = [], 0
    for r in range(opts.outer_restarts):
        w = np.eye(m, dtype=complex) if r == 0 else haar_unitary(m, np.random.default_rng([opts.seed, r]))
        ens = _Ensemble(scaled, w, n_parties, kind, opts.inner, opts.search_tol, opts.search_iters)
        if r == 0:
            start_value = ens.total()
        total_sweeps += _search(ens, opts)
        value, dec = _final_decomposition(ens, rank, kind, opts.inner)
        restart_values.append(value)
        if value < best_value:  # strict: ties keep the lower restart index
            best_value, best_dec = value, dec
    return RoofResult(best_value, best_dec, start_value, restart_values, total_sweeps)
