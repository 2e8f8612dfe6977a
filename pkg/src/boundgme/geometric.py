"""Entanglement eigenvalue and pure-state geometric measures.

The entanglement eigenvalue of a pure state is its largest overlap with a
fully product state. It is found by alternating updates of one qubit factor
at a time: contracting the conjugate factors of every other party against the
amplitude tensor gives an "environment" vector for the remaining party, and
the factor that maximizes the overlap is that environment, normalized. Each
update can only increase the overlap, so a sweep over all parties is a
monotone ascent. Several seeded restarts guard against local maxima.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensor import DensityMatrix, PureState, StateError, eig_hermitian

LOG2E = np.log2(np.e)


@dataclass(frozen=True)
class GmeOptions:
    restarts: int = 32
    max_iters: int = 10000
    tol: float = 1e-12
    seed: int = 0
    residual_tol: float = 1e-10

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


@dataclass
class ProductState:
    """One normalized qubit vector per party, stored as an ``(N, 2)`` array."""

    factors: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.factors, dtype=complex)
        if f.ndim != 2 or f.shape[1] != 2:
            raise StateError(f"factors must have shape (N, 2), got {f.shape}")
        norms = np.linalg.norm(f, axis=1)
        if np.any(np.abs(norms - 1) > 1e-12):
            raise StateError("product-state factors must be unit vectors")
        self.factors = f

    @property
    def n_parties(self) -> int:
        return self.factors.shape[0]

    def vector(self) -> np.ndarray:
        out = np.ones(1, dtype=complex)
        for f in self.factors:
            out = np.kron(out, f)
        return out

    def to_state(self) -> PureState:
        return PureState.from_unnormalized(self.vector())


@dataclass
class LambdaResult:
    lambda_max: float
    closest_product: ProductState
    residual: float
    restarts_used: int
    converged: bool
    history: list = field(default_factory=list, repr=False)


def _kron_rows(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row-wise Kronecker product of ``(R, a)`` and ``(R, b)`` arrays."""
    return (x[:, :, None] * y[:, None, :]).reshape(len(x), -1)


def _suffix_krons(conj_factors: np.ndarray) -> list[np.ndarray]:
    """``out[i]`` is the row-wise Kronecker product of factors ``i+1..N-1``."""
    r, n = conj_factors.shape[:2]
    out = [None] * n
    acc = np.ones((r, 1), dtype=complex)
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = _kron_rows(conj_factors[:, i], acc)
    return out


def _contract(flat: np.ndarray, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Environment ``sum_{l,m} left[l] chi[l, a, m] right[m]`` for each batch row."""
    r, dim = flat.shape
    dl, dr = left.shape[1], right.shape[1]
    t = (left[:, None, :] @ flat.reshape(r, dl, 2 * dr)).reshape(r, 2, dr)
    return (t @ right[:, :, None])[:, :, 0]


def _environments(chi: np.ndarray, conj_factors: np.ndarray, party: int) -> np.ndarray:
    """Contract every party except ``party`` against conjugated factors.

    ``chi`` has shape ``(R,) + (2,)*N`` (one amplitude tensor per batch entry,
    possibly a broadcast view); ``conj_factors`` has shape ``(R, N, 2)``.
    Returns the ``(R, 2)`` environment vectors.
    """
    r, n = conj_factors.shape[:2]
    left = np.ones((r, 1), dtype=complex)
    for j in range(party):
        left = _kron_rows(left, conj_factors[:, j])
    right = _suffix_krons(conj_factors)[party]
    return _contract(np.reshape(chi, (r, -1)), left, right)


def _batched(chi: np.ndarray, r: int) -> np.ndarray:
    n = chi.ndim
    return np.broadcast_to(chi, (r,) + (2,) * n)


def _overlaps(chi: np.ndarray, factors: np.ndarray) -> np.ndarray:
    """<Phi_r|psi_r> for each batch entry."""
    env = _environments(chi, factors.conj(), 0)
    return np.einsum("ra,ra->r", factors[:, 0].conj(), env)


def _sweep(flat: np.ndarray, factors: np.ndarray) -> np.ndarray:
    """One in-place pass over all parties; returns the overlap magnitudes after it."""
    r, n = factors.shape[:2]
    rights = _suffix_krons(factors.conj())
    left = np.ones((r, 1), dtype=complex)
    norms = None
    for i in range(n):
        env = _contract(flat, left, rights[i])
        norms = np.linalg.norm(env, axis=1)
        ok = norms > 0
        factors[ok, i] = env[ok] / norms[ok, None]
        left = _kron_rows(left, factors[:, i].conj())
    # after the last update the overlap magnitude equals the last environment norm
    return norms


def ascend(chi: np.ndarray, factors: np.ndarray, max_iters: int, tol: float, record: bool = False):
    """Alternating ascent on a batch of product states.

    ``chi`` is either one amplitude tensor of shape ``(2,)*N`` shared by the
    whole batch or a stack of shape ``(R,) + (2,)*N``. Returns ``(factors,
    lambdas, converged_mask, sweeps, history)``; ``history`` holds per-sweep
    overlap magnitudes when ``record`` is set. Batch entries stop
    individually once their overlap changes by less than ``tol`` in a sweep.
    """
    factors = np.array(factors, dtype=complex)
    r, n = factors.shape[:2]
    if chi.ndim == n:
        chi = _batched(chi, r)
    flat = np.reshape(chi, (r, -1))
    lam = np.abs(_overlaps(chi, factors))
    active = np.ones(r, dtype=bool)
    history = [lam.copy()] if record else []
    sweeps = 0
    while sweeps < max_iters and active.any():
        if active.all():
            new = _sweep(flat, factors)
            done = np.abs(new - lam) < tol
            lam = new
            active &= ~done
        else:
            idx = np.flatnonzero(active)
            sub = factors[idx]
            new = _sweep(flat[idx], sub)
            factors[idx] = sub
            done = np.abs(new - lam[idx]) < tol
            lam[idx] = new
            active[idx[done]] = False
        sweeps += 1
        if record:
            history.append(lam.copy())
    return factors, lam, ~active, sweeps, history


def haar_qubits(rng: np.random.Generator, shape) -> np.ndarray:
    """Uniformly distributed single-qubit states (Haar on the Bloch sphere)."""
    z = rng.standard_normal(tuple(shape) + (2,)) + 1j * rng.standard_normal(tuple(shape) + (2,))
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def reduced_state_start(psi: PureState) -> np.ndarray:
    """Dominant eigenvector of each single-qubit reduced state."""
    chi = psi.tensor() if isinstance(psi, PureState) else np.asarray(psi)
    n = chi.ndim
    out = np.empty((n, 2), dtype=complex)
    for i in range(n):
        t = np.moveaxis(chi, i, 0).reshape(2, -1)
        out[i] = eig_hermitian(t @ t.conj().T).eigenvectors[:, -1]
    return out


def initial_factors(psi: PureState, restarts: int, seed: int) -> np.ndarray:
    """Restart 0 from reduced states, the rest Haar-random from ``(seed, r)`` streams."""
    n = psi.n_parties
    starts = np.empty((restarts, n, 2), dtype=complex)
    starts[0] = reduced_state_start(psi)
    for r in range(1, restarts):
        starts[r] = haar_qubits(np.random.default_rng([seed, r]), (n,))
    return starts


def _check_normalized(psi: PureState) -> None:
    if not isinstance(psi, PureState):
        raise StateError("expected a PureState")
    if abs(np.linalg.norm(psi.amplitudes) - 1) > 1e-12:
        raise StateError("input state not normalized")


def lambda_max(psi: PureState, opts: GmeOptions | None = None, warm_start=None, record: bool = False) -> LambdaResult:
    """Entanglement eigenvalue of ``psi`` by multistart alternating ascent.

    The best restart wins; ties go to the lowest restart index. ``warm_start``
    (a :class:`ProductState` or ``(N, 2)`` array) replaces restart 0.
    """
    opts = opts or GmeOptions()
    _check_normalized(psi)
    if psi.n_parties == 1:
        f = psi.amplitudes.reshape(1, 2)
        return LambdaResult(1.0, ProductState(f), 0.0, 1, True)
    starts = initial_factors(psi, opts.restarts, opts.seed)
    if warm_start is not None:
        ws = warm_start.factors if isinstance(warm_start, ProductState) else np.asarray(warm_start)
        starts[0] = ws
    factors, lam, conv, _, history = ascend(psi.tensor(), starts, opts.max_iters, opts.tol, record)
    best = int(np.argmax(lam))  # argmax returns the first maximum
    f, res, polished = _polish(psi, factors[best], opts)
    prod = ProductState(_phase_fix(psi, f))
    lam_best, res = stationarity_residual(psi, prod)
    return LambdaResult(
        lambda_max=float(lam_best),
        closest_product=prod,
        residual=float(res),
        restarts_used=opts.restarts,
        converged=bool(conv[best]) and polished,
        history=[h[best] for h in history] if record else [],
    )


def _polish(psi: PureState, factors: np.ndarray, opts: GmeOptions, chunk: int = 10):
    # the overlap is quadratic near a maximum, so |dLambda| < tol leaves the
    # residual near sqrt(tol); keep sweeping until the residual itself is small
    chi = psi.tensor()
    f = factors[None]
    used = 0
    while True:
        _, res = stationarity_residual(psi, f[0])
        if res <= opts.residual_tol:
            return f[0], res, True
        if used >= opts.max_iters:
            return f[0], res, False
        f, _, _, sweeps, _ = ascend(chi, f, chunk, 0.0)
        used += sweeps


def _phase_fix(psi: PureState, factors: np.ndarray) -> np.ndarray:
    """Rotate the first factor's phase so that <Phi|psi> is real and non-negative."""
    f = factors.copy()
    ov = _overlaps(psi.tensor()[None], f[None])[0]
    if abs(ov) > 0:
        f[0] *= ov / abs(ov)
    return f


def stationarity_residual(psi: PureState, phi: ProductState) -> tuple[float, float]:
    """Overlap magnitude and the largest deviation from stationarity.

    For each party the environment vector must be parallel to that party's
    factor at a stationary point; the residual is the norm of its component
    orthogonal to the factor, maximized over parties.
    """
    chi = psi.tensor()[None]
    f = np.asarray(phi.factors if isinstance(phi, ProductState) else phi, dtype=complex)[None]
    lam = abs(_overlaps(chi, f)[0])
    res = 0.0
    for i in range(f.shape[1]):
        env = _environments(chi, f.conj(), i)[0]
        c = f[0, i]
        perp = env - np.vdot(c, env) * c
        res = max(res, float(np.linalg.norm(perp)))
    return float(lam), res


def e_sin2_from_lambda(lam: float) -> float:
    return max(0.0, 1.0 - lam * lam)


def e_log2_from_lambda(lam: float) -> float:
    return max(0.0, -2.0 * np.log2(lam)) if lam > 0 else np.inf


def e_sin2_pure(psi: PureState, opts: GmeOptions | None = None) -> float:
    """1 - Lambda_max**2."""
    return e_sin2_from_lambda(lambda_max(psi, opts).lambda_max)


def e_log2_pure(psi: PureState, opts: GmeOptions | None = None) -> float:
    """-2 log2 Lambda_max."""
    return e_log2_from_lambda(lambda_max(psi, opts).lambda_max)


@dataclass
class SupportSample:
    state: PureState
    y: float | None
    lambda_max: float
    e_sin2: float


def support_lambda_profile(
    rho: DensityMatrix,
    samples: int,
    opts: GmeOptions | None = None,
    reference: PureState | None = None,
    eps: float = 1e-10,
) -> list[SupportSample]:
    """Entanglement eigenvalues of random pure states in the support of ``rho``.

    States are Haar-random within the span of the eigenvectors of ``rho``
    with eigenvalue above ``eps``. When ``reference`` is given (the GHZ state
    for the Dur family) each sample also records ``y = |<reference|psi>|**2``.
    """
    opts = opts or GmeOptions()
    if samples < 1:
        raise ValueError("samples must be >= 1")
    spec = eig_hermitian(rho.matrix if isinstance(rho, DensityMatrix) else rho)
    basis = spec.eigenvectors[:, spec.eigenvalues > eps]
    if basis.shape[1] == 0:
        raise StateError("rank-0 input has no support")
    rng = np.random.default_rng(opts.seed)
    out = []
    for s in range(samples):
        z = rng.standard_normal(basis.shape[1]) + 1j * rng.standard_normal(basis.shape[1])
        psi = PureState.from_unnormalized(basis @ z)
        res = lambda_max(psi, GmeOptions(opts.restarts, opts.max_iters, opts.tol, opts.seed + s))
        y = None if reference is None else float(abs(np.vdot(reference.amplitudes, psi.amplitudes)) ** 2)
        out.append(SupportSample(psi, y, res.lambda_max, e_sin2_from_lambda(res.lambda_max)))
    return out
