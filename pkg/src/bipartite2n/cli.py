"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg import check_density_matrix, matrix_from_json, matrix_to_json, trace_distance
from .measures import (
    RegionLabel,
    classify_region,
    eof_lower_bound,
    eof_upper_bound,
    negativity_closed_form,
    report,
)
from .roof import ConvexRoofConfig, optimize_convex_roof
from .states import PARAM_SLACK, HigherDimParams, build_higher_dim_state, build_two_param_state
from .twirl import check_uu_invariance, monte_carlo_twirl, twirl_summary

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 1, 2

QUANTITIES = ("negativity", "eof_lower", "eof_upper", "region")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    return f"{x:.17g}"


def _f17(x):
    return None if x is None else float(fmt(x))


@dataclass(frozen=True)
class SweepSpec:
    n: int
    alpha_steps: int
    gamma_steps: int
    quantity: str = "negativity"
    region_filter: RegionLabel | None = None

    def __post_init__(self):
        if self.n < 3:
            raise UsageError(f"n must be >= 3, got {self.n}")
        if self.alpha_steps < 2 or self.gamma_steps < 2:
            raise UsageError("alpha_steps and gamma_steps must be >= 2")
        if self.quantity not in QUANTITIES:
            raise UsageError(f"unknown quantity {self.quantity!r}")


def sweep_rows(spec: SweepSpec):
    """Yield ``(alpha, gamma, value)`` over the admissible part of the grid.

    alpha runs over ``[0, 1/(2(n-2))]`` in the outer loop and gamma over
    ``[0, 1]`` in the inner loop. Points with beta < 0, points outside the
    region filter and (for ``eof_upper``) PPT points are skipped.
    """
    n = spec.n
    amax = 1.0 / (2 * (n - 2))
    for i in range(spec.alpha_steps):
        alpha = amax * i / (spec.alpha_steps - 1)
        for j in range(spec.gamma_steps):
            gamma = j / (spec.gamma_steps - 1)
            if 2 * (n - 2) * alpha + gamma > 1.0 + PARAM_SLACK:
                continue
            region = classify_region(n, alpha, gamma)
            if spec.region_filter is not None and region is not spec.region_filter:
                continue
            if spec.quantity == "negativity":
                value = negativity_closed_form(n, alpha, gamma)
            elif spec.quantity == "eof_lower":
                value = eof_lower_bound(n, alpha, gamma)
            elif spec.quantity == "eof_upper":
                if region is RegionLabel.PPT_SEPARABLE:
                    continue
                value = eof_upper_bound(n, alpha, gamma)
            else:
                value = region.value
            yield alpha, gamma, value


def sweep_csv(spec: SweepSpec) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha", "gamma", "value"])
    for alpha, gamma, value in sweep_rows(spec):
        w.writerow([fmt(alpha), fmt(gamma), value if isinstance(value, str) else fmt(value)])
    return buf.getvalue()


def _read_matrix(path: str) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
    try:
        return matrix_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _matrix_json(A) -> dict:
    d = matrix_to_json(A)
    d["entries"] = [[_f17(re), _f17(im)] for re, im in d["entries"]]
    return d


def cmd_sweep(args) -> int:
    region = RegionLabel(args.region) if args.region else None
    spec = SweepSpec(args.n, args.alpha_steps, args.gamma_steps, args.quantity, region)
    _emit(sweep_csv(spec), args.out)
    return EXIT_OK


def cmd_measure(args) -> int:
    if args.oracles and args.seed is None:
        raise UsageError("--seed is required with --oracles")
    rep = report(
        args.n, args.alpha, args.gamma,
        with_oracles=args.oracles, restarts=args.restarts, seed=args.seed or 0,
    )
    out = {k: (_f17(v) if isinstance(v, float) else v) for k, v in rep.to_dict().items()}
    _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    if args.params:
        try:
            params = json.loads(Path(args.params).read_text())
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.params}: malformed JSON: {exc}") from exc
    else:
        params = {"n": args.n, "alpha": args.alpha, "gamma": args.gamma}
        if args.m is not None:
            params["m"] = args.m
    try:
        n, alpha, gamma = int(params["n"]), float(params["alpha"]), float(params["gamma"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError('parameters need "n", "alpha" and "gamma"') from exc
    if params.get("m") is not None:
        rho = build_higher_dim_state(HigherDimParams(int(params["m"]), n, alpha, gamma))
    else:
        rho = build_two_param_state(n, alpha, gamma)
    _emit(_dump(_matrix_json(rho)), args.out)
    return EXIT_OK


def cmd_twirl(args) -> int:
    rho = _read_matrix(args.input)
    if rho.shape[0] != 2 * args.n:
        raise UsageError(f"matrix dimension {rho.shape[0]} does not match 2 x {args.n}")
    out, alpha, gamma, resid = twirl_summary(rho, args.n)
    result = _matrix_json(out)
    result.update(alpha=_f17(alpha), gamma=_f17(gamma), class_residual=_f17(resid))
    if args.mc_samples is not None:
        if args.seed is None:
            raise UsageError("--seed is required with --mc-samples")
        mc = monte_carlo_twirl(rho, args.mc_samples, args.seed)
        result["monte_carlo"] = {
            "samples": args.mc_samples,
            "seed": args.seed,
            "trace_distance": _f17(trace_distance(mc, out)),
        }
    _emit(_dump(result), args.out)
    return EXIT_OK


def cmd_roof(args) -> int:
    rho = _read_matrix(args.input)
    dims = tuple(args.dims) if args.dims else (2, rho.shape[0] // 2)
    cfg = ConvexRoofConfig(
        K=args.k,
        restarts=args.restarts,
        max_iterations=args.max_iterations,
        step_tolerance=args.step_tolerance,
        rng_seed=args.seed,
    )
    res = optimize_convex_roof(rho, cfg, dims)
    _emit(_dump({"estimate": _f17(res.estimate), "iterations": res.iterations}), args.out)
    return EXIT_OK


def cmd_invariance(args) -> int:
    if args.input:
        rho = check_density_matrix(_read_matrix(args.input))
    elif None not in (args.n, args.alpha, args.gamma):
        rho = build_two_param_state(args.n, args.alpha, args.gamma)
    else:
        raise UsageError("give --input or all of --n, --alpha, --gamma")
    dev = check_uu_invariance(rho, args.samples, args.seed)
    _emit(_dump({"max_deviation": _f17(dev), "invariant": dev <= 1e-10, "samples": args.samples}), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bipartite2n", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sweep", help="grid of a closed-form quantity as CSV (alpha,gamma,value)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--alpha-steps", type=int, default=41)
    s.add_argument("--gamma-steps", type=int, default=41)
    s.add_argument("--quantity", choices=QUANTITIES, default="negativity")
    s.add_argument("--region", choices=[r.value for r in RegionLabel], help="keep only this region")
    s.add_argument("--out", help="output file (default stdout)")
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("measure", help="entanglement report for one family member as JSON")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--alpha", type=float, required=True)
    m.add_argument("--gamma", type=float, required=True)
    m.add_argument("--oracles", action="store_true", help="also run spectral and convex-roof checks")
    m.add_argument("--restarts", type=int, default=20)
    m.add_argument("--seed", type=int, default=None, help="required with --oracles")
    m.add_argument("--out")
    m.set_defaults(func=cmd_measure)

    b = sub.add_parser("build", help="density matrix of a family member as matrix JSON")
    b.add_argument("--params", help='JSON file {"n":..,"alpha":..,"gamma":..[,"m":..]}')
    b.add_argument("--n", type=int)
    b.add_argument("--alpha", type=float)
    b.add_argument("--gamma", type=float)
    b.add_argument("--m", type=int, help="leading block size for the m x n class")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    t = sub.add_parser("twirl", help="run the exact LOCC twirl on a matrix JSON file")
    t.add_argument("--input", required=True)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--mc-samples", type=int, help="also compare with a Haar Monte-Carlo twirl")
    t.add_argument("--seed", type=int)
    t.add_argument("--out")
    t.set_defaults(func=cmd_twirl)

    r = sub.add_parser("roof", help="convex-roof estimate of the entanglement of formation")
    r.add_argument("--input", required=True)
    r.add_argument("--k", type=int, required=True, help="ensemble size, at least the rank")
    r.add_argument("--restarts", type=int, default=20)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--max-iterations", type=int, default=200)
    r.add_argument("--step-tolerance", type=float, default=1e-6)
    r.add_argument("--dims", type=int, nargs=2, metavar=("DA", "DB"))
    r.add_argument("--out")
    r.set_defaults(func=cmd_roof)

    v = sub.add_parser("invariance", help="max deviation under Haar-random bilateral unitaries")
    v.add_argument("--input")
    v.add_argument("--n", type=int)
    v.add_argument("--alpha", type=float)
    v.add_argument("--gamma", type=float)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--out")
    v.set_defaults(func=cmd_invariance)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
