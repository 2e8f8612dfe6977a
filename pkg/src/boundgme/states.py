"""Constructors for the named states: Bell pairs, GHZ, the Smolin state and
its GHZ-like components, the Dur family with its flip-string states, the
superpositions that saturate the Dur bound, and candidate separable states.
"""

from __future__ import annotations

import numpy as np

from .tensor import DensityMatrix, PureState, StateError

SQRT_HALF = 1 / np.sqrt(2)

# basis strings (party 0 first) of the GHZ-like components of the Smolin state
X_STRINGS = ("0000", "0011", "0101", "0110")


def basis_vector(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def _complement(bits: str) -> str:
    return bits.translate(str.maketrans("01", "10"))


def _pair(bits: str, sign: int = 1, phase: float = 0.0) -> PureState:
    """(|bits> + sign e^{i phase} |~bits>)/sqrt(2)."""
    v = basis_vector(bits) + sign * np.exp(1j * phase) * basis_vector(_complement(bits))
    return PureState(v * SQRT_HALF)


def bell(i: int) -> PureState:
    """(|00> +- |11>)/sqrt2 for i = 0, 1 and (|01> +- |10>)/sqrt2 for i = 2, 3."""
    if i not in range(4):
        raise StateError(f"Bell index {i} not in 0..3")
    return _pair("00" if i < 2 else "01", sign=1 if i % 2 == 0 else -1)


def ghz(n: int, alpha: float = 0.0) -> PureState:
    if n < 2:
        raise StateError(f"GHZ state needs N >= 2, got {n}")
    return _pair("0" * n, phase=alpha)


def x_state(i: int) -> PureState:
    if i not in range(4):
        raise StateError(f"X-state index {i} not in 0..3")
    return _pair(X_STRINGS[i])


def xbar_view(i: int) -> np.ndarray:
    """Amplitudes of ``x_state(i)`` as a 2 x 8 array (party 0 vs fused BCD level)."""
    return x_state(i).amplitudes.reshape(2, 8)


def smolin(mode: str = "xform") -> DensityMatrix:
    """Four-qubit Smolin state.

    ``mode="pairs"`` builds the mixture of Bell-pair products on AB and CD,
    ``mode="xform"`` the even mixture of the four GHZ-like X states.
    """
    if mode == "pairs":
        rho = np.zeros((16, 16), dtype=complex)
        for i in range(4):
            p = bell(i).projector().matrix
            rho += np.kron(p, p)
        return DensityMatrix(rho / 4)
    if mode == "xform":
        vecs = np.array([x_state(i).amplitudes for i in range(4)])
        return DensityMatrix(vecs.T @ vecs.conj() / 4)
    raise StateError(f"unknown Smolin construction {mode!r}")


def _flip_string(n: int, k: int, flipped: bool) -> str:
    if n < 1 or k not in range(1, n + 1):
        raise StateError(f"party index k={k} not in 1..{n}")
    bits = ["0"] * n
    bits[k - 1] = "1"
    s = "".join(bits)
    return _complement(s) if flipped else s


def u_state(n: int, k: int) -> PureState:
    """|0...1_k...0> with 1-based ``k``."""
    return PureState(basis_vector(_flip_string(n, k, False)))


def v_state(n: int, k: int) -> PureState:
    """|1...0_k...1> with 1-based ``k``."""
    return PureState(basis_vector(_flip_string(n, k, True)))


def _flip_mixture(n: int) -> np.ndarray:
    """Sum over k of P_k + Pbar_k (diagonal, unnormalized)."""
    diag = np.zeros(2**n)
    for k in range(1, n + 1):
        diag[int(_flip_string(n, k, False), 2)] += 1
        diag[int(_flip_string(n, k, True), 2)] += 1
    return np.diag(diag).astype(complex)


def _check_dur(n: int, x: float) -> None:
    if n < 4:
        raise StateError(f"Dur family requires N >= 4 (got N={n}); its bound entanglement is only established there")
    if not 0.0 <= x <= 1.0:
        raise StateError(f"mixing parameter x={x} not in [0, 1]")


def dur(n: int, x: float, alpha: float = 0.0) -> DensityMatrix:
    """x |GHZ><GHZ| + (1-x)/(2N) sum_k (P_k + Pbar_k)."""
    _check_dur(n, x)
    g = ghz(n, alpha).projector().matrix
    return DensityMatrix(x * g + (1 - x) / (2 * n) * _flip_mixture(n))


def dur_original(n: int, alpha: float = 0.0) -> DensityMatrix:
    """The N-party bound entangled state with weights 1/(N+1) and 1/(2(N+1))."""
    _check_dur(n, 0.0)
    g = ghz(n, alpha).projector().matrix
    return DensityMatrix((g + 0.5 * _flip_mixture(n)) / (n + 1))


def psi_y(n: int, y: float, sign: str, kind: str, k: int) -> PureState:
    """sqrt(y)|GHZ> +- sqrt(1-y)|u_k> (``kind="u"``) or with |v_k> (``kind="v"``)."""
    if n < 4:
        raise StateError(f"psi_y requires N >= 4, got {n}")
    if not 0.0 <= y <= 1.0:
        raise StateError(f"y={y} not in [0, 1]")
    if sign not in ("+", "-"):
        raise StateError(f"sign must be '+' or '-', got {sign!r}")
    if kind not in ("u", "v"):
        raise StateError(f"type must be 'u' or 'v', got {kind!r}")
    flip = (u_state if kind == "u" else v_state)(n, k)
    s = 1.0 if sign == "+" else -1.0
    return PureState(np.sqrt(y) * ghz(n).amplitudes + s * np.sqrt(1 - y) * flip.amplitudes)


def bell_like(m: int, k: int, sign: str) -> np.ndarray:
    """(|0,k> +- |1,2m-k-1>)/sqrt2 on a qubit times a 2m-level system.

    Returned as a normalized 2 x 2m amplitude array. For 2m = 2**(N-1) the
    flattened array is the qubit-unfolded GHZ-like state of N parties.
    """
    if m < 1 or k not in range(m):
        raise StateError(f"need m >= 1 and 0 <= k < m, got m={m}, k={k}")
    if sign not in ("+", "-"):
        raise StateError(f"sign must be '+' or '-', got {sign!r}")
    a = np.zeros((2, 2 * m), dtype=complex)
    a[0, k] = SQRT_HALF
    a[1, 2 * m - k - 1] = SQRT_HALF if sign == "+" else -SQRT_HALF
    return a


def sigma_smolin() -> DensityMatrix:
    """Uniform mixture of the eight basis strings carried by the X states."""
    diag = np.zeros(16)
    for s in X_STRINGS:
        diag[int(s, 2)] = diag[int(_complement(s), 2)] = 1 / 8
    return DensityMatrix(np.diag(diag).astype(complex))


def sigma_dur(n: int, x: float) -> DensityMatrix:
    """Dur family with the GHZ projector replaced by its dephased version."""
    _check_dur(n, x)
    diag = np.zeros(2**n)
    diag[0] = diag[-1] = x / 2
    m = np.diag(diag).astype(complex) + (1 - x) / (2 * n) * _flip_mixture(n)
    return DensityMatrix(m)


def sigma_conjectured(which: str, n: int | None = None, x: float | None = None) -> DensityMatrix:
    if which == "smolin":
        return sigma_smolin()
    if which == "dur":
        if n is None or x is None:
            raise StateError("dur candidate needs N and x")
        return sigma_dur(n, x)
    raise StateError(f"no candidate separable state for {which!r}")


def random_pure(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector of length ``dim``."""
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


# -- name grammar used by the command line ----------------------------------


def parse_state_name(name: str):
    """Build a state from a name such as ``smolin``, ``ghz:4``, ``dur:5:0.2``.

    Grammar: ``smolin``, ``ghz:N[:alpha]``, ``dur:N:x``, ``bell:i``, ``x:i``,
    ``u:N:k``, ``v:N:k``, ``psiy:N:y:sign:type:k``, ``sigma-smolin``,
    ``sigma-dur:N:x``.
    """
    head, *args = name.strip().split(":")

    def num(tok, cast):
        try:
            return cast(tok)
        except ValueError:
            raise StateError(f"bad token {tok!r} in state name {name!r}") from None

    table = {
        "smolin": (0, lambda: smolin()),
        "sigma-smolin": (0, lambda: sigma_smolin()),
        "bell": (1, lambda i: bell(num(i, int))),
        "x": (1, lambda i: x_state(num(i, int))),
        "u": (2, lambda n, k: u_state(num(n, int), num(k, int))),
        "v": (2, lambda n, k: v_state(num(n, int), num(k, int))),
        "dur": (2, lambda n, x: dur(num(n, int), num(x, float))),
        "sigma-dur": (2, lambda n, x: sigma_dur(num(n, int), num(x, float))),
        "psiy": (5, lambda n, y, s, t, k: psi_y(num(n, int), num(y, float), s, t, num(k, int))),
    }
    if head == "ghz":
        if len(args) not in (1, 2):
            raise StateError(f"ghz takes N[:alpha], got {name!r}")
        alpha = num(args[1], float) if len(args) == 2 else 0.0
        return ghz(num(args[0], int), alpha)
    if head not in table:
        raise StateError(f"bad token {head!r}: unknown state name")
    arity, build = table[head]
    if len(args) != arity:
        raise StateError(f"{head} takes {arity} parameter(s), got {len(args)} in {name!r}")
    return build(*args)
