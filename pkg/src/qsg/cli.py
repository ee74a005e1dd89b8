"""Command line front end.

Matrices travel as JSON files (see ``qsg.io``); every subcommand prints a
JSON result on stdout.  Exit codes: 0 when all checks pass (or a value
was computed), 1 when a verification check fails, 2 on malformed input.
The default random seed is 0; the ``QSG_SEED`` environment variable
overrides it, and an explicit ``--seed`` flag wins over both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import composite, io, strata, tensors, verify
from .errors import InputError, QsgError
from .roof import RoofConfig, convex_roof

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _default_seed() -> int:
    env = os.environ.get("QSG_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"QSG_SEED must be an integer, got {env!r}") from exc
    return 0


def _emit(obj, out_path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_index_set(spec: str) -> strata.IndexSet:
    try:
        return strata.IndexSet(tuple(int(s) for s in spec.split(",")))
    except ValueError as exc:
        raise InputError(f"bad index set {spec!r}: {exc}") from exc


def _cmd_tensors_eval(args) -> int:
    xi = io.load_matrix(args.point)
    A = io.load_matrix(args.a)
    B = io.load_matrix(args.b)
    result = {"kind": args.kind, "point": args.point}
    if args.kind == "lambda":
        result["value"] = tensors.lambda_eval(xi, A, B)
    elif args.kind == "r":
        result["value"] = tensors.r_eval(xi, A, B)
    else:
        value = tensors.complex_tensor_eval(xi, A, B)
        result["value"] = {"re": value.real, "im": value.imag}
    _emit(result, args.out)
    return EXIT_OK


def _cmd_strata_chart(args) -> int:
    base = io.load_matrix(args.base)
    chart = strata.ChartPhi(J=_parse_index_set(args.J), base=base, cond_bound=args.cond_bound)
    if args.forward:
        X = io.load_matrix(args.forward)
        coords = strata.chart_forward(chart, X)
        _emit(io.coords_to_json(coords), args.out)
    else:
        coords = io.load_coords(args.inverse)
        X = strata.chart_inverse(chart, coords)
        _emit(io.matrix_to_json(X), args.out)
    return EXIT_OK


def _cmd_strata_tangency(args) -> int:
    samples = io.load_curve(args.curve)
    report = strata.curve_tangency_report(samples, tol=args.tol, stratum=args.stratum)
    _emit(
        {
            "tol": report.tol,
            "max_residual": report.max_residual,
            "all_tangent": report.all_tangent,
            "samples": [
                {"t": r.t, "rank": r.rank, "residual": r.residual, "tangent": r.tangent}
                for r in report.records
            ],
        },
        args.out,
    )
    return EXIT_OK if report.all_tangent else EXIT_CHECK_FAILED


def _cmd_strata_dim(args) -> int:
    print(strata.stratum_dim(args.n, args.k, args.stratum))
    return EXIT_OK


def _cmd_kahler_verify(args) -> int:
    started = time.monotonic()
    xi = io.load_matrix(args.point)
    seed = args.seed if args.seed is not None else _default_seed()
    checks = verify.kahler_point_checks(xi.shape[0], seed, args.trials, xi=xi)
    report = verify.make_report(f"kahler verify --point {args.point}", checks, started)
    _emit(report.to_json(), args.out)
    return EXIT_OK if report.overall_passed else EXIT_CHECK_FAILED


def _cmd_entangle_estimate(args) -> int:
    rho = io.load_matrix(args.state)
    ps = composite.ProductSpace(args.n1, args.n2)
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = RoofConfig(seed=seed, restarts=args.restarts, max_iter=args.max_iter)
    est = convex_roof(ps, rho, cfg)
    _emit(
        {
            "value": est.value,
            "decomposition": {
                "weights": est.best_decomposition.weights.tolist(),
                "vectors": [io.vector_to_json(v) for v in est.best_decomposition.vectors],
            },
            "trace": {
                "iterations": est.optimizer_trace.iterations,
                "restarts": est.optimizer_trace.restarts,
                "final_grad_norm": est.optimizer_trace.final_grad_norm,
            },
        },
        args.out,
    )
    return EXIT_OK


def _cmd_entangle_sample(args) -> int:
    ps = composite.ProductSpace(args.n1, args.n2)
    seed = args.seed if args.seed is not None else _default_seed()
    rho = composite.sample_separable(ps, terms=args.terms, seed=seed)
    _emit(io.matrix_to_json(rho), args.out)
    return EXIT_OK


def _cmd_entangle_ppt(args) -> int:
    rho = io.load_matrix(args.state)
    ps = composite.ProductSpace(args.n1, args.n2)
    ok = composite.ppt_test(ps, rho, tol=args.tol)
    _emit({"ppt": ok, "n1": args.n1, "n2": args.n2, "tol": args.tol}, args.out)
    return EXIT_OK


def _cmd_verify_all(args) -> int:
    started = time.monotonic()
    seed = args.seed if args.seed is not None else _default_seed()
    checks = verify.run_battery(
        n=args.n,
        seed=seed,
        trials=args.trials,
        include_roof=not args.skip_roof,
        roof_restarts=args.restarts,
    )
    report = verify.make_report(f"verify all --n {args.n} --seed {seed}", checks, started)
    _emit(report.to_json(), args.out)
    return EXIT_OK if report.overall_passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_tensors = sub.add_parser("tensors", help="tensor evaluation").add_subparsers(
        dest="subcommand", required=True
    )
    p_eval = p_tensors.add_parser("eval", help="evaluate a tensor at a point")
    p_eval.add_argument("--kind", choices=["lambda", "r", "complex"], required=True)
    p_eval.add_argument("--point", required=True)
    p_eval.add_argument("--a", required=True)
    p_eval.add_argument("--b", required=True)
    p_eval.add_argument("--out")
    p_eval.set_defaults(func=_cmd_tensors_eval)

    p_strata = sub.add_parser("strata", help="rank-stratum operations").add_subparsers(
        dest="subcommand", required=True
    )
    p_chart = p_strata.add_parser("chart", help="chart forward/inverse at a base point")
    p_chart.add_argument("--base", required=True)
    p_chart.add_argument("--J", required=True, help="comma-separated 1-based indices, e.g. 1,3")
    p_chart.add_argument("--cond-bound", type=float, default=1e6)
    group = p_chart.add_mutually_exclusive_group(required=True)
    group.add_argument("--forward", help="matrix file to map to coordinates")
    group.add_argument("--inverse", help="coordinates file to map to a matrix")
    p_chart.add_argument("--out")
    p_chart.set_defaults(func=_cmd_strata_chart)
    p_tan = p_strata.add_parser("tangency", help="tangency report along a sampled curve")
    p_tan.add_argument("--curve", required=True, help="JSON-lines file of {t, matrix} records")
    p_tan.add_argument("--tol", type=float, default=1e-6)
    p_tan.add_argument("--stratum", choices=["cone", "density"], default="cone")
    p_tan.add_argument("--out")
    p_tan.set_defaults(func=_cmd_strata_tangency)
    p_dim = p_strata.add_parser("dim", help="stratum dimension")
    p_dim.add_argument("n", type=int)
    p_dim.add_argument("k", type=int)
    p_dim.add_argument("stratum", choices=["cone", "density"])
    p_dim.set_defaults(func=_cmd_strata_dim)

    p_kahler = sub.add_parser("kahler", help="orbit geometry").add_subparsers(
        dest="subcommand", required=True
    )
    p_kv = p_kahler.add_parser("verify", help="invariant battery at a point")
    p_kv.add_argument("--point", required=True)
    p_kv.add_argument("--seed", type=int)
    p_kv.add_argument("--trials", type=int, default=20)
    p_kv.add_argument("--out")
    p_kv.set_defaults(func=_cmd_kahler_verify)

    p_ent = sub.add_parser("entangle", help="bipartite entanglement tools").add_subparsers(
        dest="subcommand", required=True
    )
    p_est = p_ent.add_parser("estimate", help="convex-roof upper bound")
    p_est.add_argument("--state", required=True)
    p_est.add_argument("--n1", type=int, required=True)
    p_est.add_argument("--n2", type=int, required=True)
    p_est.add_argument("--seed", type=int)
    p_est.add_argument("--restarts", type=int, default=32)
    p_est.add_argument("--max-iter", type=int, default=2000)
    p_est.add_argument("--out")
    p_est.set_defaults(func=_cmd_entangle_estimate)
    p_sep = p_ent.add_parser("sample-separable", help="random certified-separable state")
    p_sep.add_argument("--n1", type=int, required=True)
    p_sep.add_argument("--n2", type=int, required=True)
    p_sep.add_argument("--terms", type=int, required=True)
    p_sep.add_argument("--seed", type=int)
    p_sep.add_argument("--out")
    p_sep.set_defaults(func=_cmd_entangle_sample)
    p_ppt = p_ent.add_parser("ppt", help="partial-transpose positivity test")
    p_ppt.add_argument("--state", required=True)
    p_ppt.add_argument("--n1", type=int, required=True)
    p_ppt.add_argument("--n2", type=int, required=True)
    p_ppt.add_argument("--tol", type=float, default=1e-9)
    p_ppt.add_argument("--out")
    p_ppt.set_defaults(func=_cmd_entangle_ppt)

    p_verify = sub.add_parser("verify", help="cross-module verification").add_subparsers(
        dest="subcommand", required=True
    )
    p_all = p_verify.add_parser("all", help="run the full invariant battery")
    p_all.add_argument("--n", type=int, default=4)
    p_all.add_argument("--seed", type=int)
    p_all.add_argument("--trials", type=int, default=20)
    p_all.add_argument("--restarts", type=int, default=8)
    p_all.add_argument("--skip-roof", action="store_true")
    p_all.add_argument("--out")
    p_all.set_defaults(func=_cmd_verify_all)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except QsgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
