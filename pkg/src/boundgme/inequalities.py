"""Trigonometric overlap bounds behind the Smolin and Dur results.

Product states with real non-negative amplitudes ``cos(t_i)|0> + sin(t_i)|1>``
(``0 <= t_i <= pi/2``) are enough to bound the overlaps with the states in
question. The functions here evaluate the resulting polynomial bounds with
compensated summation (``math.fsum``) so that slack of order 1e-12 is
meaningful.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .geometric import ProductState


def _angles(thetas: Sequence[float], arity: int | None = None) -> tuple[list[float], list[float]]:
    t = [float(v) for v in thetas]
    if arity is not None and len(t) != arity:
        raise ValueError(f"expected {arity} angles, got {len(t)}")
    if any(v < -1e-15 or v > math.pi / 2 + 1e-15 for v in t):
        raise ValueError("angles must lie in [0, pi/2]")
    return [math.cos(v) for v in t], [math.sin(v) for v in t]


def smolin_pairings(thetas: Sequence[float]) -> list[float]:
    """Overlaps of the product state with sqrt2 times each of the four X states."""
    (c1, c2, c3, c4), (s1, s2, s3, s4) = _angles(thetas, 4)
    return [
        c1 * c2 * c3 * c4 + s1 * s2 * s3 * s4,
        c1 * c2 * s3 * s4 + s1 * s2 * c3 * c4,
        c1 * s2 * c3 * s4 + s1 * c2 * s3 * c4,
        c1 * s2 * s3 * c4 + s1 * c2 * c3 * s4,
    ]


def smolin_overlap_norm_sq(thetas: Sequence[float]) -> float:
    """Sum of the squared pairings; at most 1."""
    return math.fsum(p * p for p in smolin_pairings(thetas))


def smolin_remainder(thetas: Sequence[float], variant: str = "printed") -> float:
    """Non-negative remainder ``1 - smolin_overlap_norm_sq`` written as squares.

    ``variant="printed"`` uses the four squared differences in the form they
    are commonly quoted, whose second term carries ``s4`` in both products.
    ``variant="symmetric"`` pairs each odd-weight monomial with its
    complement; only this variant satisfies ``norm_sq + remainder == 1``
    identically.
    """
    (c1, c2, c3, c4), (s1, s2, s3, s4) = _angles(thetas, 4)
    if variant == "printed":
        terms = [
            c1 * c2 * c3 * s4 - s1 * s2 * s3 * c4,
            c1 * c2 * s3 * s4 - s1 * s2 * c3 * s4,
            c1 * s2 * c3 * c4 - s1 * c2 * s3 * s4,
            s1 * c2 * c3 * c4 - c1 * s2 * s3 * s4,
        ]
    elif variant == "symmetric":
        terms = [
            c1 * c2 * c3 * s4 - s1 * s2 * s3 * c4,
            c1 * c2 * s3 * c4 - s1 * s2 * c3 * s4,
            c1 * s2 * c3 * c4 - s1 * c2 * s3 * s4,
            s1 * c2 * c3 * c4 - c1 * s2 * s3 * s4,
        ]
    else:
        raise ValueError(f"unknown remainder variant {variant!r}")
    return math.fsum(t * t for t in terms)


def f_n(thetas: Sequence[float]) -> float:
    """(prod c + prod s)**2 + sum_k [(c..s_k..c)**2 + (s..c_k..s)**2].

    Bounded by 1 for N >= 4.
    """
    c, s = _angles(thetas)
    n = len(c)
    if n < 1:
        raise ValueError("need at least one angle")
    pc, ps = math.prod(c), math.prod(s)
    terms = [(pc + ps) ** 2]
    for k in range(n):
        a = math.prod(s[i] if i == k else c[i] for i in range(n))
        b = math.prod(c[i] if i == k else s[i] for i in range(n))
        terms += [a * a, b * b]
    return math.fsum(terms)


def psi_y_lambda_closed(y: float) -> float:
    """Entanglement eigenvalue sqrt((2 - y)/2) of sqrt(y)|GHZ> +- sqrt(1-y)|u_k>."""
    _check_y(y)
    return math.sqrt((2 - y) / 2)


def psi_y_alternative_branch(y: float) -> float:
    """Best overlap when the tail qubits sit in |1>: sqrt(y/2)."""
    _check_y(y)
    return math.sqrt(y / 2)


def psi_y_head_weight(y: float) -> float:
    """Optimal ``p`` for the head qubit sqrt(p)|0> + sqrt(1-p)|1> with an all-|0> tail."""
    _check_y(y)
    return y / (2 - y)


def psi_y_closest_product(n: int, y: float) -> ProductState:
    """Closest product state to sqrt(y/2)(|0..0> + |1..1>) + sqrt(1-y)|10..0>.

    This is the representative of the ``psi_y`` family with the flip on the
    first party; other members follow by relabeling, bit flips and a local
    phase.
    """
    p = psi_y_head_weight(y)
    factors = np.zeros((n, 2), dtype=complex)
    factors[0] = [math.sqrt(p), math.sqrt(1 - p)]
    factors[1:, 0] = 1.0
    return ProductState(factors)


def _check_y(y: float) -> None:
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"y={y} not in [0, 1]")
