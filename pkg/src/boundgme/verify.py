"""Reproduction report: every headline value recomputed and compared."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import distill, inequalities, roof, spectral, states
from .geometric import GmeOptions, e_log2_pure, e_sin2_pure, lambda_max, support_lambda_profile
from .tensor import partial_trace, partial_transpose, eig_hermitian


@dataclass
class VerifyRow:
    claim: str
    source: str
    expected: float
    computed: float
    tolerance: float
    passed: bool
    seconds: float

    def as_dict(self) -> dict:
        return asdict(self)


def _rest(n: int, start: int) -> str:
    return ",".join(str(i) for i in range(start, n))


def _checks(seed: int, strict: bool) -> list[tuple[str, str, float, Callable[[], float], float]]:
    exact = 1e-12 if strict else 1e-9
    inner = GmeOptions(seed=seed)
    sqrt_half = 1 / math.sqrt(2)
    out = []

    def add(claim, source, expected, fn, tol=exact):
        out.append((claim, source, expected, fn, tol))

    for n in range(3, 9):
        add(f"ghz-lambda N={n}", "GHZ entanglement eigenvalue", sqrt_half, lambda n=n: lambda_max(states.ghz(n), inner).lambda_max)
    add("ghz4-e-sin2", "GHZ-like component measures", 0.5, lambda: e_sin2_pure(states.ghz(4), inner))
    add("ghz4-e-log2", "GHZ-like component measures", 1.0, lambda: e_log2_pure(states.ghz(4), inner))
    add("overlap <0000|GHZ4>", "X_0 definition", sqrt_half, lambda: abs(states.ghz(4).amplitudes[0]))
    add("reduced GHZ4 = I/2", "single-party reduced state", 0.0,
        lambda: float(np.max(np.abs(partial_trace(states.ghz(4).projector(), [0]).matrix - np.eye(2) / 2))))
    add("smolin pairs == xform", "two forms of the Smolin state", 0.0,
        lambda: float(np.max(np.abs(states.smolin("pairs").matrix - states.smolin("xform").matrix))), 1e-14)
    for i in range(4):
        add(f"<X{i}|smolin|X{i}>", "Smolin as even X mixture", 0.25,
            lambda i=i: float(np.vdot(states.x_state(i).amplitudes, states.smolin().matrix @ states.x_state(i).amplitudes).real))
    add("xbar3 amplitude |0,6>", "grouped A:BCD states", sqrt_half, lambda: float(states.xbar_view(3)[0, 6].real))
    add("xbar3 amplitude |1,1>", "grouped A:BCD states", sqrt_half, lambda: float(states.xbar_view(3)[1, 1].real))
    add("smolin-e-sin2 (certificate)", "Smolin geometric measure", 0.5,
        lambda: roof.average_entanglement(roof.certificate_smolin(), "sin2", inner))
    add("smolin-e-log2 (certificate)", "Smolin log measure", 1.0,
        lambda: roof.average_entanglement(roof.certificate_smolin(), "log2", inner))
    add("smolin-e-sin2 (optimizer)", "Smolin geometric measure", 0.5,
        lambda: roof.optimize_roof(states.smolin(), "sin2", roof.RoofOptions(ensemble_size=8, seed=seed)).value, 1e-3)
    # bound rows report the excess over the bound, so the expected value is 0
    add("smolin support: excess of max lambda over 1/sqrt2", "Smolin support bound", 0.0,
        lambda: max(0.0, max(s.lambda_max for s in support_lambda_profile(
            states.smolin(), 1000 if strict else 200, GmeOptions(restarts=8, seed=seed))) - sqrt_half), 1e-6)
    add("smolin-neg A:BCD", "Smolin negativities", 1.0, lambda: spectral.negativity(states.smolin(), "0:1,2,3"))
    add("smolin-neg AB:CD", "Smolin negativities", 0.0, lambda: spectral.negativity(states.smolin(), "0,1:2,3"))
    add("smolin PT AB:CD min eigenvalue >= 0", "Smolin negativities", 0.0,
        lambda: min(0.0, float(eig_hermitian(partial_transpose(states.smolin(), [2, 3])).eigenvalues[0])), 1e-10)
    add("smolin relative entropy to candidate", "Smolin relative entropy", 1.0,
        lambda: spectral.relative_entropy(states.smolin(), states.sigma_smolin()))
    for n in (4, 5, 6):
        add(f"dur(N={n}, 1/(N+1)) == original", "Dur bound entangled state", 0.0,
            lambda n=n: float(np.max(np.abs(states.dur(n, 1 / (n + 1)).matrix - states.dur_original(n).matrix))), 1e-14)
    for n, x in [(4, 0.2), (5, 0.1), (6, 0.5)]:
        add(f"dur-e-sin2-cert N={n} x={x}", "Dur geometric measure", x / 2,
            lambda n=n, x=x: roof.average_entanglement(roof.certificate_dur(n, x), "sin2", inner))
        add(f"dur-e-log2-cert N={n} x={x}", "Dur log measure", math.log2(2 / (2 - x)),
            lambda n=n, x=x: roof.average_entanglement(roof.certificate_dur(n, x), "log2", inner))
    add("dur-e-sin2-opt N=4 x=0.2", "Dur geometric measure", 0.1,
        lambda: roof.optimize_roof(states.dur(4, 0.2), "sin2", roof.RoofOptions(ensemble_size=16, outer_restarts=2, seed=seed)).value, 1e-3)
    for n, x in [(5, 0.2), (6, 0.3), (7, 0.6)]:
        add(f"dur-neg 1:rest N={n} x={x}", "Dur negativity, one party vs rest", max(0.0, ((n + 1) * x - 1) / n),
            lambda n=n, x=x: spectral.negativity(states.dur(n, x), f"0:{_rest(n, 1)}"))
        add(f"dur-neg 12:rest N={n} x={x}", "Dur negativity, two parties vs rest", x,
            lambda n=n, x=x: spectral.negativity(states.dur(n, x), f"0,1:{_rest(n, 2)}"))
    for n in (4, 5, 6):
        add(f"dur PPT at x=1/(N+1) N={n}", "bound entangled range", 0.0,
            lambda n=n: spectral.negativity(states.dur(n, 1 / (n + 1)), f"0:{_rest(n, 1)}"), 1e-10)
    for n, x in [(4, 0.2), (5, 0.5), (6, 0.9)]:
        add(f"dur relative entropy N={n} x={x} (upper bound)", "Dur relative entropy conjecture", x,
            lambda n=n, x=x: spectral.relative_entropy(states.dur(n, x), states.sigma_dur(n, x)))
    for y in (0.0, 0.4, 1.0):
        add(f"psi_y lambda y={y}", "psi(y) entanglement eigenvalue", math.sqrt((2 - y) / 2),
            lambda y=y: lambda_max(states.psi_y(5, y, "+", "u", 2), inner).lambda_max)
    add("psi_y closest product p at y=0.4", "psi(y) closest product", 0.25, lambda: inequalities.psi_y_head_weight(0.4))
    add("f_4 at theta=pi/4", "f_N bound", 0.75, lambda: inequalities.f_n([math.pi / 4] * 4), 1e-15)
    for n, kind, value in [(8, "two_setting", 2 ** -3.5), (7, "three_setting", math.sqrt(3) * (2 / 3) ** 7),
                           (6, "functional", 2 * (2 / math.pi) ** 6)]:
        add(f"bell threshold {kind} N={n}", "Bell violation thresholds", value,
            lambda n=n, kind=kind: distill.bell_violation_threshold(n, kind), 1e-15)
    add("max nondistillable delta N=4", "nondistillability bound", 0.125, lambda: distill.max_delta_nondistillable(4), 0.0)
    add("max nondistillable delta N=8", "nondistillability bound", 1 / 128, lambda: distill.max_delta_nondistillable(8), 0.0)
    add("thresholds exceed bound N=4..12", "Bell violation implies distillability", 1.0,
        lambda: float(all(r.exceeds for r in distill.consistency_report(range(4, 13)))), 0.0)
    add("dur delta N=5 x=0.3", "GHZ-diagonal normal form", 0.3, lambda: distill.depolarize(states.dur(5, 0.3)).delta)
    return out


def run_verification(seed: int = 0, strict: bool = False) -> list[VerifyRow]:
    rows = []
    for claim, source, expected, fn, tol in _checks(seed, strict):
        t0 = time.perf_counter()
        computed = float(fn())
        elapsed = time.perf_counter() - t0
        ok = bool(abs(expected - computed) <= tol)
        rows.append(VerifyRow(claim, source, float(expected), computed, tol, ok, elapsed))
    return rows


def format_table(rows: list[VerifyRow]) -> str:
    header = f"{'claim':<46} {'expected':>16} {'computed':>16} {'tol':>8} {'ok':>4} {'s':>7}"
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(
            f"{r.claim:<46} {r.expected:>16.12g} {r.computed:>16.12g} {r.tolerance:>8.1e} "
            f"{'pass' if r.passed else 'FAIL':>4} {r.seconds:>7.2f}"
        )
    n_ok = sum(r.passed for r in rows)
    lines.append(f"{n_ok}/{len(rows)} rows pass")
    return "\n".join(lines)
