"""Batch command line front-end.

Exit codes: 0 success, 1 usage error, 2 domain error (poles, unsupported
growth, bad preconditions), 3 internal cross-check disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import NevsumError, PoleHit
from .jordanchains import build_prop8, prop6_decompose, prop8_separation_test
from .linalg import hermitian_signature
from .ratfun import (RationalMatrixFunction, SamplePlan, gram_matrix,
                     negative_squares_lower_bound)
from .realize import canonical_model, kappa
from .relations import check_reduction
from .scalars import ExactScalar
from .serialize import (dumps, function_from_json, matrix_from_json,
                        matrix_to_json, realization_from_json,
                        relation_instance_from_json, scalar_from_json,
                        scalar_to_decimal, scalar_to_json)
from .sums import theorem8_verdict


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def _load(path):
    with open(path) as fh:
        return json.load(fh)


def _parse_point(text: str) -> ExactScalar:
    """Points like '1/2+3i', 'i', '-2', '3-1/2i'."""
    t = text.strip().replace(" ", "")
    if t in ("i", "+i"):
        return ExactScalar(0, 1)
    if t == "-i":
        return ExactScalar(0, -1)
    re = Fraction(0)
    im = Fraction(0)
    # split additive pieces keeping signs
    pieces = []
    cur = ""
    for k, ch in enumerate(t):
        if ch in "+-" and k > 0 and t[k - 1] not in "/+-":
            pieces.append(cur)
            cur = ch
        else:
            cur += ch
    pieces.append(cur)
    for piece in pieces:
        if piece.endswith("i"):
            body = piece[:-1]
            if body in ("", "+"):
                im += 1
            elif body == "-":
                im -= 1
            else:
                im += Fraction(body)
        else:
            re += Fraction(piece)
    return ExactScalar(re, im)


def cmd_eval(args) -> int:
    Q = function_from_json(_load(args.fn))
    z = _parse_point(args.at)
    try:
        value = Q.eval(z)
    except PoleHit as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    out = {"at": scalar_to_json(z), "value": matrix_to_json(value)}
    if args.decimals:
        out["value_decimal_nonauthoritative"] = [
            [scalar_to_decimal(value[i, j], args.decimals)
             for j in range(value.cols)] for i in range(value.rows)]
    print(dumps(out))
    return 0


def cmd_kappa(args) -> int:
    Q = function_from_json(_load(args.fn))
    out = {"method": args.method}
    bound = None
    exact = None
    if args.method in ("sample", "both"):
        bound = negative_squares_lower_bound(Q)
        out["sample_lower_bound"] = bound
    if args.method in ("model", "both"):
        R = canonical_model(Q)
        exact = kappa(R)
        out["model_kappa"] = exact
        out["model_dim"] = R.space.dim
    if args.method == "both":
        if bound > exact:
            print("cross-check failure: sample bound exceeds exact index",
                  file=sys.stderr)
            return 3
        out["agree"] = bound == exact
    print(dumps(out))
    return 0


def _solution_json(s):
    return {
        "z1": scalar_to_json(s.z1), "z2": scalar_to_json(s.z2),
        "h1": [scalar_to_json(x) for x in s.h1],
        "h2": [scalar_to_json(x) for x in s.h2],
        "kind": s.kind, "sign": s.sign,
        "E": scalar_to_json(s.E_value) if s.E_value is not None else None,
        "kills_sum_symbol": s.kills_sum_symbol,
        "provenance": s.provenance,
    }


def cmd_sum_analyze(args) -> int:
    Q1 = function_from_json(_load(args.fn1))
    Q2 = function_from_json(_load(args.fn2))
    V = theorem8_verdict(Q1, Q2, scan=args.scan)
    report = {
        "kappa": V.kappa, "kappa1": V.kappa1, "kappa2": V.kappa2,
        "preserved": V.preserved, "minimal_36": V.minimal_36,
        "dim_L0": V.dim_L0, "inertia_L2": list(V.inertia_L2),
        "structure_case": V.structure_case,
        "solutions": [_solution_json(s) for s in V.solutions],
        "cross_check": {
            "analytic": V.cross_check.get("kappa_analytic"),
            "geometric": V.cross_check.get("kappa_geometric"),
            "agree": V.agree,
            "details": {k: v for k, v in V.cross_check.items()
                        if k not in ("kappa_analytic", "kappa_geometric")},
        },
    }
    print(dumps(report))
    return 0 if V.agree else 3


def cmd_reduce_check(args) -> int:
    rel, K1 = relation_instance_from_json(_load(args.instance))
    if K1 is None:
        print("error: instance file needs a K1 block", file=sys.stderr)
        return 1
    rep = check_reduction(rel, K1, permissive=args.permissive)
    out = {
        "e1_preserves_domain": rep.e1_preserves_domain,
        "a_maps_K1_into_K1": rep.a_maps_K1_into_K1,
        "hypotheses_hold": rep.hypotheses_hold,
        "reduced": rep.reduced,
        "clauses": {k: {"passed": v.passed, "detail": v.detail}
                    for k, v in rep.clauses.items()},
    }
    print(dumps(out))
    return 0


def cmd_decompose(args) -> int:
    R = realization_from_json(_load(args.realization))
    alpha = _parse_point(args.alpha)
    dec = prop6_decompose(R, alpha)
    from .serialize import realization_to_json
    out = {
        "labels": dec.labels,
        "r": dec.r,
        "remainder_dim": dec.remainder_dim,
        "kappas": [kappa(b) for b in dec.blocks],
        "kappa_total": kappa(R),
        "other_eigenvalues": [scalar_to_json(a) for a in dec.other_eigenvalues],
        "blocks": [realization_to_json(b) for b in dec.blocks],
    }
    if sum(kappa(b) for b in dec.blocks) != kappa(R):
        print("cross-check failure: negative index not additive",
              file=sys.stderr)
        return 3
    print(dumps(out))
    return 0


def cmd_prop8(args) -> int:
    spec = _load(args.params)
    A11 = matrix_from_json(spec["A11"])
    model = build_prop8(
        n=spec["n"], A11=A11,
        a1=[scalar_from_json(x) for x in spec["a1"]],
        a2=[scalar_from_json(x) for x in spec["a2"]],
        alpha1=scalar_from_json(spec["alpha1"]),
        alpha2=scalar_from_json(spec["alpha2"]))
    rep = prop8_separation_test(model)
    out = {
        "verified": ["self-adjoint", "neutral eigenvectors", "f = J x0"],
        "eigenvalues": [scalar_to_json(a) for a in rep.eigenvalues],
        "a11_eigenvalues": [scalar_to_json(a) for a in rep.a11_eigenvalues],
        "zero_only_eigenvalue": rep.zero_only_eigenvalue,
        "nonzero_spectrum_lifts": rep.nonzero_spectrum_lifts,
        "closure_dim": rep.closure_dim,
        "closure_degenerate": rep.closure_degenerate,
        "closure_contains_partner": rep.closure_contains_partner,
        "a2_orthogonality_violated": rep.a2_orthogonality_violated,
        "separation_possible": rep.separation_possible,
        "obstruction_present": rep.closure_degenerate or
                               rep.a2_orthogonality_violated,
    }
    print(dumps(out))
    return 0


def cmd_kersym(args) -> int:
    from .sums import singular_directions
    Q = function_from_json(_load(args.fn))
    dirs = singular_directions(Q)
    plan = SamplePlan.default(Q)
    G = gram_matrix(Q, list(plan.symbols))
    sig = hermitian_signature(G)
    out = {
        "singular_directions": [[scalar_to_json(x) for x in h] for h in dirs],
        "sampled_kernel_signature": {"n_plus": sig[0], "n_zero": sig[1],
                                     "n_minus": sig[2]},
        "note": "signature computed from the default sample plan; "
                "see documentation for the class-label discrepancy flag",
    }
    print(dumps(out))
    return 0


def build_parser() -> _Parser:
    ap = _Parser(prog="nevsum",
                 description="Exact analysis of rational matrix functions "
                             "with symmetry, their realizations, and sums.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a function at a point")
    p.add_argument("--fn", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--decimals", type=int, default=0)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("kappa", help="negative index of a function")
    p.add_argument("--fn", required=True)
    p.add_argument("--method", choices=["sample", "model", "both"],
                   default="both")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("sum-analyze",
                       help="decide preservation of the negative index")
    p.add_argument("--fn1", required=True)
    p.add_argument("--fn2", required=True)
    p.add_argument("--scan", choices=["auto", "grid", "algebraic"],
                   default="auto")
    p.set_defaults(func=cmd_sum_analyze)

    p = sub.add_parser("reduce-check",
                       help="reducibility clauses for a relation instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--permissive", action="store_true")
    p.set_defaults(func=cmd_reduce_check)

    p = sub.add_parser("decompose",
                       help="split a realization along Jordan chains")
    p.add_argument("--realization", required=True)
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("prop8",
                       help="two-neutral-eigenvector model and separation test")
    p.add_argument("--params", required=True)
    p.set_defaults(func=cmd_prop8)

    p = sub.add_parser("kersym",
                       help="identically annihilated directions of the kernel")
    p.add_argument("--fn", required=True)
    p.set_defaults(func=cmd_kersym)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: bad JSON input: {exc}", file=sys.stderr)
        return 1
    except NevsumError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
