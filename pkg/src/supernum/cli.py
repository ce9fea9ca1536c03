"""Command-line surface: evaluation, verification sweeps, fixtures.

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.
All sampling flows from the --seed flag, so identical invocations emit
byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import expbch, formats, presets, sampling, supergroup
from .errors import ParseError, SupernumError
from .expbch import FlowConfig, bch_flow, exp_matrix
from .fixtures import default_base_point, fixture_by_name
from .grassmann import default_budget
from .superdiff import check_g_multilinear
from .superlie import check_graded_jacobi, grassmann_shell, is_conventional
from .supergroup import Chart, GroupElement, chart_apply, chart_inverse, transition


def _load_json_arg(s, what):
    if s.startswith("@"):
        path = s[1:]
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = s
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: {exc.msg} at line {exc.lineno} column {exc.colno}",
                         pos=exc.pos) from exc


def _flow_config(args):
    return FlowConfig(
        steps=args.steps,
        series_tol=args.series_tol,
        series_max_terms=args.max_terms,
        radius_guard=args.guard,
    )


def _emit(report, args):
    text = formats.dumps_report(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.get("pass", True) else 1


def _random_pair(alg, budget, field, norm_cap, rng):
    p, q = presets.matrix_shape(alg)
    X = sampling.random_even_matrix(rng, p, q, budget, field, norm_cap=norm_cap)
    Y = sampling.random_even_matrix(rng, p, q, budget, field, norm_cap=norm_cap)
    return X, Y


# -- verbs ----------------------------------------------------------------


def cmd_eval(args):
    z = formats.parse_supernumber(args.expr, args.budget, args.field)
    body = complex(z.body)
    report = {
        "value": formats.sn_to_json(z),
        "norm": z.norm(),
        "parity": z.parity.name,
        "body": {"re": body.real, "im": body.imag},
        "soul_norm": z.soul_norm(),
    }
    return _emit(report, args)


def cmd_exp(args):
    M = formats.mat_from_json(_load_json_arg(args.matrix, "--matrix"))
    cfg = _flow_config(args)
    E = exp_matrix(M, cfg)
    return _emit({"exp": formats.mat_to_json(E), "norm": E.norm()}, args)


def cmd_bch(args):
    cfg = _flow_config(args)
    rng = np.random.default_rng(args.seed)
    if args.X and args.Y:
        X = formats.mat_from_json(_load_json_arg(args.X, "--X"))
        Y = formats.mat_from_json(_load_json_arg(args.Y, "--Y"))
    elif args.alg:
        X, Y = _random_pair(args.alg, args.budget, args.field, args.norm_cap, rng)
    else:
        raise ParseError("bch needs --X/--Y or --alg for random sampling")
    mu = bch_flow(X, Y, cfg)
    resid = (exp_matrix(mu, cfg) - exp_matrix(X, cfg) @ exp_matrix(Y, cfg)).norm()
    report = {
        "mu": formats.mat_to_json(mu),
        "residual_exp_identity": resid,
        "steps": cfg.steps,
        "guard": cfg.radius_guard,
        "pass": resid <= args.tol,
    }
    return _emit(report, args)


def cmd_jacobi(args):
    obj = _load_json_arg(args.constants, "--constants")
    L = formats.algebra_from_json(obj, jacobi_tol=float("inf"))
    rep = check_graded_jacobi(L, args.tol)
    report = {
        "max_residual": rep["max_residual"],
        "worst_triple": list(rep["worst_triple"]) if rep["worst_triple"] else None,
        "pass": rep["pass"],
        "conventional": is_conventional(L),
    }
    return _emit(report, args)


def cmd_shell(args):
    obj = _load_json_arg(args.constants, "--constants")
    try:
        f0 = {}
        for t in obj["f0"]:
            val = complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))
            f0[(int(t["M"]), int(t["N"]), int(t["K"]))] = val
        p, q = int(obj["p"]), int(obj["q"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad f0 JSON: {exc}") from exc
    field = obj.get("field", "C")
    L = grassmann_shell(f0, p, q, args.budget, field)
    rep = check_graded_jacobi(L, args.tol)
    report = {
        "algebra": formats.algebra_to_json(L),
        "conventional": is_conventional(L),
        "jacobi_residual": rep["max_residual"],
        "pass": rep["pass"] and is_conventional(L),
    }
    return _emit(report, args)


def cmd_verify_exp_identity(args):
    cfg = _flow_config(args)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.samples):
        X, Y = _random_pair(args.alg, args.budget, args.field, args.norm_cap, rng)
        mu = bch_flow(X, Y, cfg)
        resid = (exp_matrix(mu, cfg) - exp_matrix(X, cfg) @ exp_matrix(Y, cfg)).norm()
        worst = max(worst, resid)
    report = {
        "alg": args.alg,
        "samples": args.samples,
        "max_residual": worst,
        "steps": cfg.steps,
        "guard": cfg.radius_guard,
        "seed": args.seed,
        "pass": worst <= args.tol,
    }
    return _emit(report, args)


def cmd_check_gsmooth(args):
    f = fixture_by_name(args.fixture, args.budget, args.field)
    x = default_base_point(f, args.fixture)
    rng = np.random.default_rng(args.seed)
    report = check_g_multilinear(f, x, args.order, samples=args.samples,
                                 tol=args.tol, rng=rng)
    report["fixture"] = args.fixture
    return _emit(report, args)


def cmd_livf(args):
    rng = np.random.default_rng(args.seed)
    p, q = presets.matrix_shape(args.alg)
    worst = 0.0
    for _ in range(args.samples):
        M = sampling.random_pure_matrix(rng, p, q, args.budget, args.field,
                                        parity=int(rng.integers(0, 2)))
        N = sampling.random_pure_matrix(rng, p, q, args.budget, args.field,
                                        parity=int(rng.integers(0, 2)))
        A = sampling.random_even_matrix(rng, p, q, args.budget, args.field)
        rep = supergroup.livf_bracket_check(M, N, [A], tol=args.tol)
        worst = max(worst, rep["max_residual"])
    report = {"alg": args.alg, "samples": args.samples,
              "max_residual": worst, "pass": worst <= args.tol}
    return _emit(report, args)


def cmd_transition(args):
    cfg = _flow_config(args)
    rng = np.random.default_rng(args.seed)
    p, q = presets.matrix_shape(args.alg)
    worst_tr, worst_op = 0.0, 0.0
    for _ in range(args.samples):
        U = sampling.random_even_matrix(rng, p, q, args.budget, args.field, norm_cap=0.08)
        V = sampling.random_even_matrix(rng, p, q, args.budget, args.field, norm_cap=0.08)
        x = GroupElement.from_algebra(U, cfg)
        y = GroupElement.from_algebra(V, cfg)
        cx, cy = Chart(x, cfg=cfg), Chart(y, cfg=cfg)
        S = sampling.random_even_matrix(rng, p, q, args.budget, args.field, norm_cap=0.05)
        X = chart_apply(cx, GroupElement(x.matrix @ exp_matrix(S, cfg)))
        direct = chart_apply(cy, chart_inverse(cx, X))
        via_mu = transition(cx, cy, X, cfg)
        worst_tr = max(worst_tr, (direct - via_mu).norm())
        Xc = sampling.random_even_matrix(rng, p, q, args.budget, args.field, norm_cap=0.1)
        Yc = sampling.random_even_matrix(rng, p, q, args.budget, args.field, norm_cap=0.1)
        worst_op = max(worst_op, supergroup.group_op_chart_residual(x, y, Xc, Yc, cfg))
    report = {
        "alg": args.alg,
        "samples": args.samples,
        "max_transition_residual": worst_tr,
        "max_group_op_residual": worst_op,
        "pass": worst_tr <= args.tol and worst_op <= args.tol,
    }
    return _emit(report, args)


# -- parser ----------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int,
                        default=int(os.environ.get("SUPERNUM_BUDGET", default_budget())))
    common.add_argument("--field", choices=("R", "C"), default="R")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", default=None, help="write the JSON report here")
    common.add_argument("--steps", type=int, default=200)
    common.add_argument("--series-tol", type=float, default=1e-14)
    common.add_argument("--max-terms", type=int, default=64)
    common.add_argument("--guard", type=float, default=0.5)
    common.add_argument("--norm-cap", type=float, default=0.2)

    ap = argparse.ArgumentParser(prog="supernum",
                                 description="supernumber / super Lie group toolkit")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("eval", parents=[common], help="parse and report a supernumber")
    p.add_argument("--expr", required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("exp", parents=[common], help="matrix exponential")
    p.add_argument("--matrix", required=True, help="supermatrix JSON or @file")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(fn=cmd_exp)

    p = sub.add_parser("bch", parents=[common], help="BCH flow mu(X, Y)")
    p.add_argument("--alg", choices=("gl11", "gl21", "heisenberg"), default=None)
    p.add_argument("--X", default=None, help="supermatrix JSON or @file")
    p.add_argument("--Y", default=None, help="supermatrix JSON or @file")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_bch)

    p = sub.add_parser("jacobi", parents=[common], help="graded Jacobi check")
    p.add_argument("--constants", required=True, help="structure-constant JSON or @file")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(fn=cmd_jacobi)

    p = sub.add_parser("shell", parents=[common], help="Grassmann shell of field constants")
    p.add_argument("--constants", required=True, help='{"p","q","f0":[...]} JSON or @file')
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(fn=cmd_shell)

    p = sub.add_parser("verify-exp-identity", parents=[common],
                       help="exp(mu(X,Y)) = exp(X)exp(Y) sweep")
    p.add_argument("--alg", choices=("gl11", "gl21"), default="gl11")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_verify_exp_identity)

    p = sub.add_parser("check-gsmooth", parents=[common],
                       help="multilinearity check on a fixture map")
    p.add_argument("--fixture", required=True,
                   help="poly1..poly5, body, or mu-chart")
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(fn=cmd_check_gsmooth)

    p = sub.add_parser("livf", parents=[common],
                       help="left-invariant field bracket check")
    p.add_argument("--alg", choices=("gl11", "gl21", "heisenberg"), default="gl11")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(fn=cmd_livf)

    p = sub.add_parser("transition", parents=[common],
                       help="chart transition consistency sweep")
    p.add_argument("--alg", choices=("gl11", "gl21"), default="gl11")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_transition)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        pos = f" (position {exc.pos})" if exc.pos is not None else ""
        print(f"error: {exc}{pos}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SupernumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
