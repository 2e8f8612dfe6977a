"""GHZ-diagonal normal form, bipartite nondistillability and Bell thresholds.

Any N-qubit state can be locally depolarized into a mixture of GHZ-like
states ``|Psi_j^+-> = (|b_j> +- |~b_j>)/sqrt2``, where ``b_j`` has party 0 in
``|0>`` and the remaining N-1 bits spell ``j`` (party 1 most significant).
Only ``|Psi_0^+->`` keep distinct weights; each pair ``j >= 1`` gets a common
weight ``lambda_j`` on both of its projectors, so that

    lambda_0^+ + lambda_0^- + 2 sum_j lambda_j = 1.

The split ``P_j`` puts the parties whose bit in ``j`` is 1 opposite party 0.
Across ``P_j`` the normal form is free of distillable entanglement iff
``2 lambda_j >= Delta`` with ``Delta = lambda_0^+ - lambda_0^-``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tensor import DensityMatrix, PartySplit, PureState, StateError

MAX_PARTIES = 12
BELL_KINDS = ("two_setting", "three_setting", "functional")


def _check_n(n: int, lo: int = 2) -> None:
    if not lo <= n <= MAX_PARTIES:
        raise StateError(f"N={n} outside supported range {lo}..{MAX_PARTIES}")


def flip_string(n: int, j: int) -> int:
    """Basis index of ``b_j``: party 0 in |0>, the other bits equal to ``j``."""
    if not 0 <= j < 2 ** (n - 1):
        raise StateError(f"j={j} out of range for N={n}")
    return j


def ghz_basis(n: int) -> list[tuple[int, str, PureState]]:
    """All ``2**N`` GHZ-like states as ``(j, sign, state)``, ordered by ``j`` then ``+``/``-``."""
    _check_n(n)
    dim = 2**n
    out = []
    for j in range(2 ** (n - 1)):
        b = flip_string(n, j)
        for sign, s in (("+", 1.0), ("-", -1.0)):
            v = np.zeros(dim, dtype=complex)
            v[b] = 1 / math.sqrt(2)
            v[dim - 1 - b] = s / math.sqrt(2)
            out.append((j, sign, PureState(v)))
    return out


def partition_for_j(n: int, j: int) -> PartySplit:
    """Split ``P_j``: party 0 plus the parties whose bit of ``j`` is 0, against the rest."""
    _check_n(n)
    if not 1 <= j < 2 ** (n - 1):
        raise StateError(f"j={j} out of range 1..{2 ** (n - 1) - 1}")
    flipped = {p for p in range(1, n) if (j >> (n - 1 - p)) & 1}
    return PartySplit.of(set(range(n)) - flipped, flipped, n)


@dataclass(frozen=True)
class DepolarizedCoeffs:
    n_parties: int
    lambda0_plus: float
    lambda0_minus: float
    lambdas: np.ndarray  # lambdas[j - 1] is lambda_j

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        if lam.shape != (2 ** (self.n_parties - 1) - 1,):
            raise StateError(f"expected {2 ** (self.n_parties - 1) - 1} lambdas, got {lam.shape}")
        object.__setattr__(self, "lambdas", lam)

    def lam(self, j: int) -> float:
        return float(self.lambdas[j - 1])

    @property
    def delta(self) -> float:
        return self.lambda0_plus - self.lambda0_minus

    def normalization(self) -> float:
        return self.lambda0_plus + self.lambda0_minus + 2 * float(self.lambdas.sum())

    def is_valid(self, tol: float = 1e-10) -> bool:
        vals = np.concatenate([[self.lambda0_plus, self.lambda0_minus], self.lambdas])
        return bool(np.all(vals >= -1e-12) and abs(self.normalization() - 1) <= tol)

    def oriented(self) -> "DepolarizedCoeffs":
        """Swap ``lambda_0^+`` and ``lambda_0^-`` if needed so that Delta >= 0."""
        if self.delta >= 0:
            return self
        return DepolarizedCoeffs(self.n_parties, self.lambda0_minus, self.lambda0_plus, self.lambdas)

    def to_density(self) -> DensityMatrix:
        n = self.n_parties
        dim = 2**n
        m = np.zeros((dim, dim), dtype=complex)
        m[0, 0] = m[-1, -1] = (self.lambda0_plus + self.lambda0_minus) / 2
        m[0, -1] = m[-1, 0] = self.delta / 2
        for j in range(1, 2 ** (n - 1)):
            b = flip_string(n, j)
            m[b, b] = m[dim - 1 - b, dim - 1 - b] = self.lambdas[j - 1]
        return DensityMatrix(m)


def depolarize(rho: DensityMatrix) -> DepolarizedCoeffs:
    """Weights of the GHZ-diagonal normal form reached by local depolarization.

    ``lambda_0^+- = <Psi_0^+-|rho|Psi_0^+->`` and ``lambda_j`` is half of
    ``<Psi_j^+|rho|Psi_j^+> + <Psi_j^-|rho|Psi_j^->``, the weight on each of
    the two projectors of the pair.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    n = rho.n_parties if isinstance(rho, DensityMatrix) else int(math.log2(m.shape[0]))
    _check_n(n)
    dim = 2**n
    pop = m[0, 0].real + m[-1, -1].real
    coh = m[0, -1].real
    lambdas = np.empty(2 ** (n - 1) - 1)
    for j in range(1, 2 ** (n - 1)):
        b = flip_string(n, j)
        lambdas[j - 1] = (m[b, b].real + m[dim - 1 - b, dim - 1 - b].real) / 2
    return DepolarizedCoeffs(n, pop / 2 + coh, pop / 2 - coh, lambdas)


def delta(c: DepolarizedCoeffs) -> float:
    return c.delta


def nondistillable_all_partitions(c: DepolarizedCoeffs, tol: float = 1e-12) -> tuple[bool, int | None]:
    """Check ``2 lambda_j >= Delta`` for every split; report the least violating ``j``."""
    c = c.oriented()
    bad = np.flatnonzero(2 * c.lambdas < c.delta - tol)
    if bad.size:
        return False, int(bad[0]) + 1
    return True, None


def max_delta_nondistillable(n: int) -> float:
    """Largest Delta compatible with nondistillability across every split, 2**-(N-1)."""
    if n < 2:
        raise StateError(f"N must be >= 2, got {n}")
    return 2.0 ** -(n - 1)


def bell_violation_threshold(n: int, kind: str) -> float:
    """Delta above which each of the three N-party Bell inequalities can be violated."""
    if n < 2:
        raise StateError(f"N must be >= 2, got {n}")
    if kind == "two_setting":
        return 2.0 ** (-(n - 1) / 2)
    if kind == "three_setting":
        return math.sqrt(3) * (2 / 3) ** n
    if kind == "functional":
        return 2 * (2 / math.pi) ** n
    raise StateError(f"unknown Bell inequality kind {kind!r}")


@dataclass(frozen=True)
class ConsistencyRow:
    n: int
    kind: str
    threshold: float
    bound: float

    @property
    def exceeds(self) -> bool:
        return self.threshold > self.bound


def consistency_report(n_range) -> list[ConsistencyRow]:
    rows = []
    for n in n_range:
        if n < 4:
            raise StateError(f"consistency table starts at N=4, got {n}")
        for kind in BELL_KINDS:
            rows.append(ConsistencyRow(n, kind, bell_violation_threshold(n, kind), max_delta_nondistillable(n)))
    return rows
