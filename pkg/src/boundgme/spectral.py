"""Negativity across bipartitions and relative entropy to a supplied state."""

from __future__ import annotations

import numpy as np

from .tensor import DensityMatrix, PartySplit, StateError, eig_hermitian, partial_transpose

SUPPORT_EPS = 1e-10
SUPPORT_OVERLAP = 1e-12
SUPPORT_LEAK = 1e-10


def _split_for(rho: DensityMatrix, split) -> PartySplit:
    if isinstance(split, str):
        return PartySplit.parse(split, rho.n_parties)
    if not isinstance(split, PartySplit):
        side_a, side_b = split
        return PartySplit.of(side_a, side_b, rho.n_parties)
    if split.side_a | split.side_b != set(range(rho.n_parties)):
        raise StateError("split does not cover the parties of the state")
    return split


def pt_spectrum(rho: DensityMatrix, split) -> np.ndarray:
    """Ascending eigenvalues of the partial transpose over ``split.side_b``."""
    split = _split_for(rho, split)
    return eig_hermitian(partial_transpose(rho, split.side_b)).eigenvalues


def negativity(rho: DensityMatrix, split) -> float:
    """Twice the absolute sum of the negative partial-transpose eigenvalues.

    ``split`` may be a :class:`PartySplit`, a pair of party collections, or a
    string like ``"0:1,2,3"``.
    """
    ev = pt_spectrum(rho, split)
    return float(-2.0 * ev[ev < 0].sum()) + 0.0


def dur_negativity_closed(n: int, x: float, partition: str) -> float:
    """Closed-form negativities of the Dur family.

    ``partition`` is ``"one_vs_rest"`` (party 1 against the others) or
    ``"two_vs_rest"`` (parties 1, 2 against the others).
    """
    if n < 4:
        raise StateError(f"closed forms hold for N >= 4, got {n}")
    if not 0.0 <= x <= 1.0:
        raise StateError(f"x={x} not in [0, 1]")
    if partition == "one_vs_rest":
        return max(0.0, ((n + 1) * x - 1) / n)
    if partition == "two_vs_rest":
        return float(x)
    raise StateError(f"unknown partition kind {partition!r}")


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix, eps: float = SUPPORT_EPS) -> float:
    """S(rho || sigma) = Tr rho log2 rho - Tr rho log2 sigma, in bits.

    Returns ``inf`` when the support of ``rho`` is not contained in that of
    ``sigma``: some eigenvector of ``rho`` with eigenvalue above ``eps`` has
    sigma-expectation at most 1e-12, or keeps more than 1e-10 of its weight
    outside the eigenvectors of ``sigma`` with eigenvalue above ``eps``.
    """
    r = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    s = sigma.matrix if isinstance(sigma, DensityMatrix) else np.asarray(sigma)
    if r.shape != s.shape:
        raise StateError(f"dimension mismatch: {r.shape} vs {s.shape}")
    rs, ss = eig_hermitian(r), eig_hermitian(s)
    keep = rs.eigenvalues > eps
    p, vr = rs.eigenvalues[keep], rs.eigenvectors[:, keep]
    sigma_exp = np.einsum("ik,ij,jk->k", vr.conj(), s, vr).real
    if np.any(sigma_exp <= SUPPORT_OVERLAP):
        return float("inf")
    # Tr rho log sigma = sum_{k,m} p_k q_m |<r_k|s_m>|^2 restricted to q_m > eps
    s_keep = ss.eigenvalues > eps
    q, vs = ss.eigenvalues[s_keep], ss.eigenvectors[:, s_keep]
    weights = np.abs(vr.conj().T @ vs) ** 2
    if np.any(1.0 - weights.sum(axis=1) > SUPPORT_LEAK):
        return float("inf")
    cross = float(p @ weights @ np.log2(q))
    self_term = float(p @ np.log2(p))
    value = self_term - cross
    return 0.0 if -1e-12 < value < 0 else value
