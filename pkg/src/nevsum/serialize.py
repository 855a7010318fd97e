"""JSON wire formats: exact rationals as strings, complex as {re, im}.

All numbers cross the boundary as exact strings "num/den", never floats;
an optional decimal rendering for humans is produced separately and
clearly labeled non-authoritative.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Sequence

from .linalg import ExactMatrix
from .polys import Poly, RatFunc
from .ratfun import RationalMatrixFunction
from .realize import Realization
from .relations import LinearRelation
from .scalars import ExactScalar
from .spaces import KreinSpace, Subspace


def frac_to_str(x: Fraction) -> str:
    return str(x)


def scalar_to_json(s: ExactScalar) -> Dict[str, str]:
    return {"re": frac_to_str(s.re), "im": frac_to_str(s.im)}


def scalar_from_json(d) -> ExactScalar:
    if isinstance(d, str):
        return ExactScalar(Fraction(d))
    if isinstance(d, int):
        return ExactScalar(d)
    return ExactScalar(Fraction(str(d.get("re", "0"))),
                       Fraction(str(d.get("im", "0"))))


def matrix_to_json(M: ExactMatrix) -> List[List[Dict[str, str]]]:
    return [[scalar_to_json(M[i, j]) for j in range(M.cols)]
            for i in range(M.rows)]


def matrix_from_json(rows, expect_cols=None) -> ExactMatrix:
    data = [[scalar_from_json(c) for c in row] for row in rows]
    if not data:
        return ExactMatrix.zero(0, expect_cols or 0)
    return ExactMatrix(data, len(data), len(data[0]))


def function_to_json(Q: RationalMatrixFunction) -> Dict:
    entries = []
    for i in range(Q.size):
        row = []
        for j in range(Q.size):
            e = Q.entries[i][j]
            row.append({
                "num": [scalar_to_json(c) for c in e.num.coeffs],
                "den": [scalar_to_json(c) for c in e.den.coeffs],
            })
        entries.append(row)
    return {"size": Q.size, "entries": entries}


def function_from_json(d) -> RationalMatrixFunction:
    p = d["size"]
    rows = []
    for i in range(p):
        row = []
        for j in range(p):
            cell = d["entries"][i][j]
            num = Poly([scalar_from_json(c) for c in cell["num"]])
            den = Poly([scalar_from_json(c) for c in cell.get("den", [1])])
            row.append(RatFunc(num, den))
        rows.append(row)
    return RationalMatrixFunction(rows)


def realization_to_json(R: Realization) -> Dict:
    return {
        "J": matrix_to_json(R.space.gram),
        "A_graph": [[scalar_to_json(x) for x in col]
                    for col in R.A.graph.columns()],
        "Gamma": matrix_to_json(R.Gamma),
        "z0": scalar_to_json(R.z0),
        "const": matrix_to_json(R.const_term),
    }


def realization_from_json(d) -> Realization:
    J = matrix_from_json(d["J"])
    space = KreinSpace(J)
    n = space.dim
    cols = [[scalar_from_json(x) for x in col] for col in d["A_graph"]]
    A = LinearRelation.from_graph_columns(space, space, cols) if cols else \
        LinearRelation(space, space, ExactMatrix.zero(2 * n, 0))
    gamma = matrix_from_json(d["Gamma"])
    z0 = scalar_from_json(d["z0"])
    const = matrix_from_json(d["const"])
    return Realization(space, A, gamma, z0, const)


def relation_instance_from_json(d):
    """{J, graph, K1?} -> (relation, optional K1 subspace)."""
    J = matrix_from_json(d["J"])
    space = KreinSpace(J)
    cols = [[scalar_from_json(x) for x in col] for col in d["graph"]]
    rel = LinearRelation.from_graph_columns(space, space, cols) if cols else \
        LinearRelation(space, space, ExactMatrix.zero(2 * space.dim, 0))
    K1 = None
    if "K1" in d:
        k1cols = [[scalar_from_json(x) for x in col] for col in d["K1"]]
        K1 = Subspace.from_columns(space, k1cols)
    return rel, K1


def scalar_to_decimal(s: ExactScalar, digits: int = 6) -> str:
    c = s.to_complex()
    if c.imag == 0:
        return f"{c.real:.{digits}g}"
    return f"{c.real:.{digits}g}{c.imag:+.{digits}g}i"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
