"""Command-line front end: ``boundgme <subcommand> ...``.

Exit codes: 0 on success (and when every verification row passes), 1 when a
verification row fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import distill, inequalities, roof, spectral, states, verify
from .geometric import GmeOptions, e_log2_from_lambda, e_sin2_from_lambda, lambda_max
from .tensor import DensityMatrix, PartySplit, PureState, StateError, load_state, save_state

EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def _term(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.12f}"


def _encode(obj):
    """JSON text with floats at 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return json.dumps(str(obj))
        return _g17(obj)
    return json.dumps(obj)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_g17(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _parse_range(text: str, what: str) -> tuple[str, ...]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"{what} must look like a:b or a:b:c, got {text!r}")
    return tuple(parts)


# -- subcommands -------------------------------------------------------------


def cmd_state(args) -> int:
    state = states.parse_state_name(args.name)
    if args.output:
        save_state(state, args.output)
    else:
        from .tensor import state_to_dict

        sys.stdout.write(_encode(state_to_dict(state)) + "\n")
    return 0


def cmd_gme(args) -> int:
    state = load_state(args.input)
    options = {"measure": args.measure, "restarts": args.restarts, "seed": args.seed, "tol": args.tol}
    if isinstance(state, DensityMatrix):
        if not args.mixed:
            raise UsageError("input is a density matrix; pass --mixed to compute the convex roof")
        inner = GmeOptions(restarts=4, tol=args.tol, seed=args.seed)
        opts = roof.RoofOptions(
            ensemble_size=args.ensemble_size,
            outer_restarts=args.restarts if args.restarts is not None else 8,
            seed=args.seed,
            inner=inner,
        )
        res = roof.optimize_roof(state, args.measure, opts)
        options["ensemble_size"] = len(res.best.isometry) if res.best.isometry is not None else None
        out = {"value": res.value, "upper_bound": True, "decomposition": res.best.to_dict(), "options": options}
    else:
        opts = GmeOptions(restarts=args.restarts if args.restarts is not None else 32, tol=args.tol, seed=args.seed)
        res = lambda_max(state, opts)
        value = e_sin2_from_lambda(res.lambda_max) if args.measure == "sin2" else e_log2_from_lambda(res.lambda_max)
        out = {
            "value": value,
            "lambda": res.lambda_max,
            "residual": res.residual,
            "converged": res.converged,
            "closest_product_re": res.closest_product.factors.real.tolist(),
            "closest_product_im": res.closest_product.factors.imag.tolist(),
            "options": options,
        }
    _emit(_encode(out) + "\n", args.output)
    return 0


def cmd_negativity(args) -> int:
    state = load_state(args.input)
    rho = state.projector() if isinstance(state, PureState) else state
    split = PartySplit.parse(args.partition, rho.n_parties)
    print(_term(spectral.negativity(rho, split)))
    return 0


SWEEP_MEASURES = ("neg", "cert", "opt", "relent")


def cmd_sweep(args) -> int:
    if args.family != "dur":
        raise UsageError(f"unknown family {args.family!r}; only 'dur' is available")
    lo, hi, *steps = _parse_range(args.x, "--x")
    try:
        lo, hi = float(lo), float(hi)
        steps = int(steps[0]) if steps else 11
    except ValueError:
        raise UsageError(f"bad --x range {args.x!r}") from None
    if not (0 <= lo <= hi <= 1) or steps < 1:
        raise UsageError("--x must satisfy 0 <= from <= to <= 1 with steps >= 1")
    measures = [m.strip() for m in args.measures.split(",") if m.strip()]
    for m in measures:
        if m not in SWEEP_MEASURES:
            raise UsageError(f"unknown measure {m!r}; choose from {','.join(SWEEP_MEASURES)}")
    n = args.N
    inner = GmeOptions(restarts=8, seed=args.seed)
    header = ["x", "neg_1_rest", "neg_12_rest", "e_sin2_cert", "e_log2_cert"]
    if "opt" in measures:
        header.append("e_sin2_opt")
    header.append("relent_upper")
    xs = np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])
    rest1 = ",".join(str(i) for i in range(1, n))
    rest2 = ",".join(str(i) for i in range(2, n))
    rows = []
    for x in xs:
        x = float(x)
        rho = states.dur(n, x)
        row = [x]
        if "neg" in measures:
            row += [spectral.negativity(rho, f"0:{rest1}"), spectral.negativity(rho, f"0,1:{rest2}")]
        else:
            row += ["", ""]
        if "cert" in measures:
            cert = roof.certificate_dur(n, x)
            row += [roof.average_entanglement(cert, "sin2", inner), roof.average_entanglement(cert, "log2", inner)]
        else:
            row += ["", ""]
        if "opt" in measures:
            opts = roof.RoofOptions(outer_restarts=2, seed=args.seed, inner=GmeOptions(restarts=4, seed=args.seed))
            row.append(roof.optimize_roof(rho, "sin2", opts).value)
        row.append(spectral.relative_entropy(rho, states.sigma_dur(n, x)) if "relent" in measures else "")
        rows.append(row)
    _emit(_csv(header, rows), args.out)
    return 0


def cmd_relent(args) -> int:
    rho = load_state(args.rho)
    if isinstance(rho, PureState):
        rho = rho.projector()
    if args.sigma_path and args.sigma:
        raise UsageError("give either a sigma file or --sigma conjectured, not both")
    if args.sigma_path:
        sigma = load_state(args.sigma_path)
        sigma = sigma.projector() if isinstance(sigma, PureState) else sigma
    elif args.sigma == "conjectured":
        sigma = _conjectured_for(rho)
    else:
        raise UsageError("need a sigma file or --sigma conjectured")
    print(_term(spectral.relative_entropy(rho, sigma)))
    return 0


def _conjectured_for(rho: DensityMatrix) -> DensityMatrix:
    """Candidate separable state matching ``rho`` if it is a Smolin or Dur state."""
    n = rho.n_parties
    if n == 4 and np.max(np.abs(rho.matrix - states.smolin().matrix)) < 1e-10:
        return states.sigma_smolin()
    if n >= 4:
        x = float(rho.matrix[0, -1].real * 2)
        if 0 <= x <= 1 and np.max(np.abs(rho.matrix - states.dur(n, x).matrix)) < 1e-10:
            return states.sigma_dur(n, x)
    raise UsageError("no conjectured separable state known for this input (Smolin or Dur family only)")


def cmd_distill(args) -> int:
    if (args.n_range is None) == (args.input is None):
        raise UsageError("give exactly one of --N-range or --in")
    if args.n_range:
        a, b = _parse_range(args.n_range, "--N-range")[:2]
        try:
            a, b = int(a), int(b)
        except ValueError:
            raise UsageError(f"bad --N-range {args.n_range!r}") from None
        if a < 4 or b > distill.MAX_PARTIES or a > b:
            raise UsageError(f"--N-range must lie within 4:{distill.MAX_PARTIES}")
        rows = [[r.n, r.kind, r.threshold, r.bound, str(r.exceeds).lower()] for r in distill.consistency_report(range(a, b + 1))]
        _emit(_csv(["N", "kind", "threshold", "bound", "exceeds"], rows), args.out)
        return 0
    state = load_state(args.input)
    rho = state.projector() if isinstance(state, PureState) else state
    c = distill.depolarize(rho)
    holds, bad_j = distill.nondistillable_all_partitions(c)
    rows = [
        ["lambda0_plus", c.lambda0_plus],
        ["lambda0_minus", c.lambda0_minus],
        ["delta", c.delta],
        ["nondistillable", str(holds).lower()],
        ["violating_j", "" if bad_j is None else bad_j],
    ]
    rows += [[f"lambda_{j}", c.lam(j)] for j in range(1, 2 ** (c.n_parties - 1))]
    _emit(_csv(["quantity", "value"], rows), args.out)
    return 0


def cmd_verify(args) -> int:
    rows = verify.run_verification(seed=args.seed, strict=args.tol_profile == "strict")
    print(verify.format_table(rows))
    if args.json:
        _emit(_encode({"rows": [r.as_dict() for r in rows]}) + "\n", args.json)
    return 0 if all(r.passed for r in rows) else EXIT_FAIL


def cmd_ineq(args) -> int:
    rng = np.random.default_rng(args.seed)
    half_pi = math.pi / 2
    norm_slack, rem_gap = [], {"printed": [], "symmetric": []}
    for t in rng.uniform(0, half_pi, size=(args.samples, 4)):
        v = inequalities.smolin_overlap_norm_sq(t)
        norm_slack.append(1 - v)
        for variant in rem_gap:
            rem_gap[variant].append(abs(v + inequalities.smolin_remainder(t, variant) - 1))
    f_slack, mono = [], []
    for t in rng.uniform(0, half_pi, size=(args.samples, args.max_n + 1)):
        for n in range(4, args.max_n + 1):
            fn = inequalities.f_n(t[:n])
            f_slack.append(1 - fn)
            mono.append(fn - inequalities.f_n(t[: n + 1]))
    out = {
        "samples": args.samples,
        "seed": args.seed,
        "smolin_overlap_norm_sq": {"min_slack": min(norm_slack), "max_slack": max(norm_slack)},
        "remainder_identity_max_error": {k: max(v) for k, v in rem_gap.items()},
        "f_n": {"max_n": args.max_n, "min_slack": min(f_slack), "max_slack": max(f_slack)},
        "f_n_monotonicity": {"min_slack": min(mono), "max_slack": max(mono)},
    }
    _emit(_encode(out) + "\n", args.out)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boundgme", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("state", help="write a named state as JSON")
    s.add_argument("name", help="e.g. smolin, ghz:4, dur:5:0.2, psiy:4:0.3:+:u:1")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_state)

    s = sub.add_parser("gme", help="geometric measure of a pure state or convex roof of a mixed state")
    s.add_argument("input")
    s.add_argument("--mixed", action="store_true")
    s.add_argument("--measure", choices=roof.KINDS, default="sin2")
    s.add_argument("--restarts", type=int)
    s.add_argument("--ensemble-size", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-12)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gme)

    s = sub.add_parser("negativity", help="negativity across a bipartition")
    s.add_argument("input")
    s.add_argument("--partition", required=True, help="a,b,...:c,d,... over party indices")
    s.set_defaults(func=cmd_negativity)

    s = sub.add_parser("sweep", help="tabulate a state family over its mixing parameter")
    s.add_argument("--family", default="dur")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--x", default="0:1:11", help="from:to:steps")
    s.add_argument("--measures", default="neg,cert,relent")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("relent", help="relative entropy S(rho||sigma) in bits")
    s.add_argument("rho")
    s.add_argument("sigma_path", nargs="?")
    s.add_argument("--sigma", choices=["conjectured"])
    s.set_defaults(func=cmd_relent)

    s = sub.add_parser("distill", help="Bell-threshold table or depolarized coefficients of a state")
    s.add_argument("--N-range", dest="n_range")
    s.add_argument("--in", dest="input")
    s.add_argument("--out")
    s.set_defaults(func=cmd_distill)

    s = sub.add_parser("verify", help="recompute every headline value")
    s.add_argument("--tol-profile", choices=["default", "strict"], default="default")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("ineq", help="random sweep of the trigonometric overlap bounds")
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--max-n", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_ineq)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"boundgme {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
