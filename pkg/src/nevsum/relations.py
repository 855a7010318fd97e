"""Linear relations in Krein spaces as graph subspaces.

A relation T from (H, J_H) to (K, J_K) is stored as the column span of a
graph matrix in C^(dim H + dim K).  Every operation here - domains, mul
parts, adjoints, component relations, resolvents - is a linear-algebra
slice of that graph, which keeps multivalued parts first class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (DegenerateSubspace, DimensionMismatch, NotInResolventSet,
                     PreconditionFailed, SingularMatrix)
from .linalg import (ExactMatrix, column_echelon, det, inverse, kernel_basis,
                     rank, solve)
from .polys import Poly, poly_gcd
from .polyroots import RootReport, roots_over_gaussian_rationals
from .scalars import ONE, ZERO, ExactScalar
from .spaces import (KreinSpace, Subspace, annihilator_rows, ortho_complement,
                     product)


class LinearRelation:
    """Graph subspace of (domain space) x (range space)."""

    __slots__ = ("domain_space", "range_space", "graph")

    def __init__(self, domain_space: KreinSpace, range_space: KreinSpace,
                 graph: ExactMatrix, canonicalize: bool = True):
        if graph.rows != domain_space.dim + range_space.dim:
            raise DimensionMismatch("graph rows must be dim(dom) + dim(ran)")
        if canonicalize:
            graph = column_echelon(graph)
        object.__setattr__(self, "domain_space", domain_space)
        object.__setattr__(self, "range_space", range_space)
        object.__setattr__(self, "graph", graph)

    def __setattr__(self, name, value):
        raise AttributeError("LinearRelation is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_matrix(space: KreinSpace, M: ExactMatrix) -> "LinearRelation":
        """Graph of an everywhere-defined operator x -> Mx in one space."""
        if M.rows != space.dim or M.cols != space.dim:
            raise DimensionMismatch("operator matrix must be dim x dim")
        cols = []
        for j in range(space.dim):
            e = [ONE if i == j else ZERO for i in range(space.dim)]
            cols.append(e + M.col(j))
        return LinearRelation(space, space,
                              ExactMatrix.from_columns(cols, 2 * space.dim))

    @staticmethod
    def from_graph_columns(domain_space: KreinSpace, range_space: KreinSpace,
                           cols: Sequence[Sequence]) -> "LinearRelation":
        n = domain_space.dim + range_space.dim
        return LinearRelation(domain_space, range_space,
                              ExactMatrix.from_columns(list(cols), n))

    @staticmethod
    def purely_multivalued(space: KreinSpace, image: Subspace) -> "LinearRelation":
        """The relation {0} x image."""
        cols = [[ZERO] * space.dim + list(c) for c in image.basis.columns()]
        return LinearRelation.from_graph_columns(space, space, cols)

    # -- basic structure ------------------------------------------------------

    @property
    def graph_dim(self) -> int:
        return self.graph.cols

    def first_components(self) -> ExactMatrix:
        d = self.domain_space.dim
        return self.graph.submatrix(range(d), range(self.graph.cols))

    def second_components(self) -> ExactMatrix:
        d = self.domain_space.dim
        r = self.range_space.dim
        return self.graph.submatrix(range(d, d + r), range(self.graph.cols))

    def __eq__(self, other):
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return (self.domain_space.gram == other.domain_space.gram and
                self.range_space.gram == other.range_space.gram and
                self.graph == other.graph)

    def __repr__(self):
        return (f"LinearRelation(dim_dom={self.domain_space.dim}, "
                f"dim_ran={self.range_space.dim}, graph_dim={self.graph_dim})")

    def includes(self, other: "LinearRelation") -> bool:
        if other.graph.cols == 0:
            return True
        stacked = self.graph.hstack(other.graph)
        return rank(stacked) == self.graph.cols


def part(T: LinearRelation, which: str) -> Subspace:
    """Slices of the graph: domain, range, kernel, or mul."""
    G1 = T.first_components()
    G2 = T.second_components()
    if which == "domain":
        return Subspace.from_matrix(T.domain_space, G1)
    if which == "range":
        return Subspace.from_matrix(T.range_space, G2)
    if which == "kernel":
        ker = kernel_basis(G2)
        cols = [G1.mul_vec(c) for c in ker.columns()]
        B = ExactMatrix.from_columns(cols, T.domain_space.dim) if cols else \
            ExactMatrix.zero(T.domain_space.dim, 0)
        return Subspace.from_matrix(T.domain_space, B)
    if which == "mul":
        ker = kernel_basis(G1)
        cols = [G2.mul_vec(c) for c in ker.columns()]
        B = ExactMatrix.from_columns(cols, T.range_space.dim) if cols else \
            ExactMatrix.zero(T.range_space.dim, 0)
        return Subspace.from_matrix(T.range_space, B)
    raise ValueError(f"unknown part {which!r}")


def infty_part(T: LinearRelation) -> LinearRelation:
    """T_infty = {0} x T(0) as a relation."""
    cols = [[ZERO] * T.domain_space.dim + list(c)
            for c in part(T, "mul").basis.columns()]
    return LinearRelation.from_graph_columns(T.domain_space, T.range_space, cols) \
        if cols else LinearRelation(T.domain_space, T.range_space,
                                    ExactMatrix.zero(T.graph.rows, 0))


def apply_to_subspace(T: LinearRelation, S: Subspace) -> Subspace:
    """T(S) = {g : {f, g} in T for some f in S}."""
    sub = restrict_domain(T, S)
    return part(sub, "range")


def restrict_domain(T: LinearRelation, S: Subspace) -> LinearRelation:
    """The subrelation {(f, g) in T : f in S}."""
    C = annihilator_rows(S.basis)
    if C.rows == 0:
        return T
    constraint = C @ T.first_components()
    coords = kernel_basis(constraint)
    cols = [T.graph.mul_vec(c) for c in coords.columns()]
    B = ExactMatrix.from_columns(cols, T.graph.rows) if cols else \
        ExactMatrix.zero(T.graph.rows, 0)
    return LinearRelation(T.domain_space, T.range_space, B)


def adjoint(T: LinearRelation) -> LinearRelation:
    """Indefinite adjoint T+ as a relation from range space to domain space.

    {k, h} belongs to T+ iff [k, g] = [h, f] for every {f, g} in T; the
    graph is the exact kernel of the induced pairing matrix.
    """
    G1 = T.first_components()
    G2 = T.second_components()
    W_left = G2.conj_transpose() @ T.range_space.gram
    W_right = (G1.conj_transpose() @ T.domain_space.gram).scale(ExactScalar(-1))
    W = W_left.hstack(W_right)
    return LinearRelation(T.range_space, T.domain_space, kernel_basis(W))


def is_symmetric(A: LinearRelation) -> bool:
    _require_endorelation(A)
    return adjoint(A).includes(A)


def is_self_adjoint(A: LinearRelation) -> bool:
    _require_endorelation(A)
    return adjoint(A) == A


def _require_endorelation(A: LinearRelation):
    if A.domain_space.gram != A.range_space.gram:
        raise PreconditionFailed("relation must live in a single space")


def direct_orthogonal_sum(A1: LinearRelation, A2: LinearRelation) -> LinearRelation:
    """A1 [+] A2 in the orthogonal direct sum of the two spaces."""
    _require_endorelation(A1)
    _require_endorelation(A2)
    n1, n2 = A1.domain_space.dim, A2.domain_space.dim
    space = KreinSpace(ExactMatrix.block_diag(
        [A1.domain_space.gram, A2.domain_space.gram]))
    cols = []
    for c in A1.graph.columns():
        f, g = c[:n1], c[n1:]
        cols.append(f + [ZERO] * n2 + g + [ZERO] * n2)
    for c in A2.graph.columns():
        f, g = c[:n2], c[n2:]
        cols.append([ZERO] * n1 + f + [ZERO] * n1 + g)
    return LinearRelation.from_graph_columns(space, space, cols)


# --------------------------------------------------------------------------
# Component relations with respect to a splitting K = K1 [+] K2.
# --------------------------------------------------------------------------


@dataclass
class Splitting:
    """A nondegenerate subspace K1, its complement, and the projections."""

    ambient: KreinSpace
    K1: Subspace
    K2: Subspace
    E1: ExactMatrix
    E2: ExactMatrix

    @staticmethod
    def around(K1: Subspace) -> "Splitting":
        if K1.dim == 0:
            raise DegenerateSubspace("K1 must be nontrivial")
        if not K1.is_nondegenerate():
            raise DegenerateSubspace("K1 must be nondegenerate")
        space = K1.space
        B = K1.basis
        G = B.conj_transpose() @ space.gram @ B
        E1 = B @ inverse(G) @ B.conj_transpose() @ space.gram
        E2 = ExactMatrix.identity(space.dim) - E1
        K2 = ortho_complement(K1)
        return Splitting(space, K1, K2, E1, E2)

    def sub(self, i: int) -> Subspace:
        return self.K1 if i == 1 else self.K2

    def proj(self, j: int) -> ExactMatrix:
        return self.E1 if j == 1 else self.E2


def component_relation(A: LinearRelation, K1: Subspace, i: int, j: int,
                       split: Optional[Splitting] = None) -> LinearRelation:
    """A_i^j = {(h_i, E_j A(h_i)) : h_i in D(A) cap K_i} from K_i to K_j.

    The result lives in basis coordinates of the two subspaces, whose Gram
    matrices make them Krein spaces in their own right.
    """
    _require_endorelation(A)
    sp = split or Splitting.around(K1)
    Ki, Kj = sp.sub(i), sp.sub(j)
    if Ki.dim == 0 or Kj.dim == 0:
        raise DegenerateSubspace("component subspace is trivial")
    sub = restrict_domain(A, Ki)
    Ej = sp.proj(j)
    dom_space = Ki.as_krein_space()
    ran_space = Kj.as_krein_space()
    cols = []
    for c in sub.graph.columns():
        f = c[: A.domain_space.dim]
        g = c[A.domain_space.dim:]
        f_coords = Ki.coords_of(f)
        g_proj = Ej.mul_vec(g)
        g_coords = Kj.coords_of(g_proj)
        cols.append(f_coords + g_coords)
    B = ExactMatrix.from_columns(cols, Ki.dim + Kj.dim) if cols else \
        ExactMatrix.zero(Ki.dim + Kj.dim, 0)
    return LinearRelation(dom_space, ran_space, B)


def embed_relation(T: LinearRelation, dom_sub: Subspace, ran_sub: Subspace,
                   ambient: KreinSpace) -> LinearRelation:
    """Push a coordinate relation back into the ambient space."""
    cols = []
    nd = dom_sub.dim
    for c in T.graph.columns():
        f = dom_sub.to_ambient(c[:nd])
        g = ran_sub.to_ambient(c[nd:])
        cols.append(f + g)
    B = ExactMatrix.from_columns(cols, 2 * ambient.dim) if cols else \
        ExactMatrix.zero(2 * ambient.dim, 0)
    return LinearRelation(ambient, ambient, B)


def operator_like_sum(B: LinearRelation, C: LinearRelation) -> LinearRelation:
    """B + C = {(f, g + k) : (f, g) in B, (f, k) in C}."""
    GB1, GB2 = B.first_components(), B.second_components()
    GC1, GC2 = C.first_components(), C.second_components()
    # coordinates (b, c) with GB1 b = GC1 c
    constraint = GB1.hstack(GC1.scale(ExactScalar(-1)))
    ker = kernel_basis(constraint)
    cols = []
    for v in ker.columns():
        b, c = v[: GB1.cols], v[GB1.cols:]
        f = GB1.mul_vec(b)
        g = [x + y for x, y in zip(GB2.mul_vec(b), GC2.mul_vec(c))]
        cols.append(f + g)
    Bm = ExactMatrix.from_columns(cols, B.graph.rows) if cols else \
        ExactMatrix.zero(B.graph.rows, 0)
    return LinearRelation(B.domain_space, B.range_space, Bm)


def relation_subspace_sum(B: LinearRelation, C: LinearRelation) -> LinearRelation:
    """B +hat C: the (not necessarily direct) sum of the graphs."""
    return LinearRelation(B.domain_space, B.range_space,
                          B.graph.hstack(C.graph))


def eq22_check(B: LinearRelation) -> bool:
    """Verify mul B = D(B+)^[perp] (both sides inside the range space)."""
    mul = part(B, "mul")
    dom_adj = part(adjoint(B), "domain")
    return mul == ortho_complement(dom_adj)


# --------------------------------------------------------------------------
# Theorem-style reduction checker.
# --------------------------------------------------------------------------


@dataclass
class ClauseResult:
    passed: bool
    detail: str = ""


@dataclass
class ReductionReport:
    e1_preserves_domain: bool
    a_maps_K1_into_K1: bool
    clauses: Dict[str, ClauseResult] = field(default_factory=dict)
    reduced: bool = False

    @property
    def hypotheses_hold(self) -> bool:
        return self.e1_preserves_domain and self.a_maps_K1_into_K1


def check_reduction(A: LinearRelation, K1: Subspace,
                    permissive: bool = False) -> ReductionReport:
    """Evaluate the reducibility clauses of A against the splitting at K1.

    Requires A self-adjoint (unless permissive) and K1 nontrivial and
    nondegenerate.  The two standing hypotheses are checked first; the
    clause map is only filled in when they hold.
    """
    _require_endorelation(A)
    sp = Splitting.around(K1)
    if K1.dim == A.domain_space.dim:
        raise PreconditionFailed("K1 must be a proper subspace")
    if not permissive and not is_self_adjoint(A):
        raise PreconditionFailed("A must be self-adjoint")

    dom = part(A, "domain")
    e1_dom = Subspace.from_matrix(A.domain_space, sp.E1 @ dom.basis)
    hyp1 = dom.includes(e1_dom)
    k1_cap_dom = K1.intersect(dom)
    image = apply_to_subspace(A, k1_cap_dom)
    hyp2 = K1.includes(image)

    report = ReductionReport(e1_preserves_domain=hyp1, a_maps_K1_into_K1=hyp2)
    if not (hyp1 and hyp2):
        return report

    A11 = component_relation(A, K1, 1, 1, sp)
    A12 = component_relation(A, K1, 1, 2, sp)
    A21 = component_relation(A, K1, 2, 1, sp)
    A22 = component_relation(A, K1, 2, 2, sp)

    ambient = A.domain_space

    # (i) A = A11 +hat (A21 + A22), operator-like inner sum taken in ambient
    inner = operator_like_sum(
        embed_relation(A21, sp.K2, sp.K1, ambient),
        embed_relation(A22, sp.K2, sp.K2, ambient))
    lhs = relation_subspace_sum(embed_relation(A11, sp.K1, sp.K1, ambient), inner)
    report.clauses["(i)"] = ClauseResult(lhs == A)

    # (ii) A22 single-valued and self-adjoint in K2
    a22_single = part(A22, "mul").dim == 0
    a22_sa = is_self_adjoint(A22)
    report.clauses["(ii)"] = ClauseResult(
        a22_single and a22_sa,
        f"single_valued={a22_single}, self_adjoint={a22_sa}")

    # (iii) A22 and A21 defined on all of K2 (finite-dim reading of dense)
    d22 = part(A22, "domain").dim == sp.K2.dim
    d21 = part(A21, "domain").dim == sp.K2.dim
    report.clauses["(iii)"] = ClauseResult(
        d22 and d21, "domain equals subspace" if d22 and d21 else
        f"dom(A22) full={d22}, dom(A21) full={d21}")

    # (iv) A(0) = A11(0) = D(A)^[perp]
    mulA = part(A, "mul")
    mulA11 = Subspace.from_matrix(
        ambient, ExactMatrix.from_columns(
            [sp.K1.to_ambient(c) for c in part(A11, "mul").basis.columns()],
            ambient.dim))
    dperp = ortho_complement(dom)
    report.clauses["(iv)"] = ClauseResult(
        mulA == mulA11 == dperp,
        f"dim mulA={mulA.dim}, dim mulA11={mulA11.dim}, dim D(A)perp={dperp.dim}")

    # (v) (A21)+ single-valued
    report.clauses["(v)"] = ClauseResult(part(adjoint(A21), "mul").dim == 0)

    # (vi) A11 self-adjoint <=> R(A21) included in A11(0)
    a11_sa = is_self_adjoint(A11)
    ran21 = part(A21, "range")
    incl = part(A11, "mul").includes(ran21)
    report.clauses["(vi)"] = ClauseResult(
        a11_sa == incl, f"A11 self-adjoint={a11_sa}, R(A21) in A11(0)={incl}")

    # (vii) A = A11 [+] A22 iff A11 self-adjoint
    recon = relation_subspace_sum(
        embed_relation(A11, sp.K1, sp.K1, ambient),
        embed_relation(A22, sp.K2, sp.K2, ambient))
    equal = recon == A
    report.clauses["(vii)"] = ClauseResult(
        equal == a11_sa, f"reconstruction equal={equal}, A11 self-adjoint={a11_sa}")
    report.reduced = equal

    # (viii) if D(A) cap K1 spans K1 (finite-dim density) then A11 is a
    # self-adjoint operator.  The premise is domain density: the image
    # reading is false for relations whose mul part fills K1.
    premise = k1_cap_dom == K1
    if premise:
        ok = part(A11, "mul").dim == 0 and a11_sa
        report.clauses["(viii)"] = ClauseResult(ok, "premise holds")
    else:
        report.clauses["(viii)"] = ClauseResult(True, "premise not triggered")

    return report


# --------------------------------------------------------------------------
# Resolvents and eigenvalues.
# --------------------------------------------------------------------------


def resolvent(A: LinearRelation, z: ExactScalar) -> ExactMatrix:
    """Matrix of (A - z)^(-1) when it is an everywhere-defined operator."""
    _require_endorelation(A)
    z = ExactScalar.of(z)
    n = A.domain_space.dim
    G1, G2 = A.first_components(), A.second_components()
    if A.graph_dim != n:
        raise NotInResolventSet(f"graph dimension {A.graph_dim} != {n}")
    M = G2 - G1.scale(z)
    try:
        C = solve(M, ExactMatrix.identity(n))
    except SingularMatrix:
        raise NotInResolventSet(f"{z} is not in the resolvent set")
    return G1 @ C


@dataclass
class EigenReport:
    """Finite eigenvalues of a relation.

    `pairs` holds exact Gaussian-rational eigenvalues with eigenspaces;
    `whole_plane` flags the degenerate pencil whose kernel is nontrivial
    for every point; `root_report` keeps non-splitting factors, flagged
    non-exact with isolating intervals for their real roots.
    """

    pairs: List[Tuple[ExactScalar, Subspace]] = field(default_factory=list)
    whole_plane: bool = False
    root_report: Optional[RootReport] = None


def finite_eigenvalues(A: LinearRelation) -> EigenReport:
    """Exact eigenvalues of the pencil second - alpha * first components.

    alpha is a finite eigenvalue iff the pencil loses column rank; the gcd
    of all maximal minors (found by interpolation) carries these points.
    Rational roots are exact; other factors are reported unresolved.
    """
    _require_endorelation(A)
    n = A.domain_space.dim
    m = A.graph_dim
    G1, G2 = A.first_components(), A.second_components()
    report = EigenReport()
    if m == 0:
        return report
    if m > n:
        report.whole_plane = True
        return report

    # interpolate all m x m minors as polynomials in alpha (degree <= m)
    sample_points = [ExactScalar(t) for t in range(m + 1)]
    sampled = [G2 - G1.scale(t) for t in sample_points]
    minors: List[Poly] = []
    for row_idx in itertools.combinations(range(n), m):
        values = [det(Mt.submatrix(row_idx, range(m))) for Mt in sampled]
        minors.append(_lagrange(sample_points, values))
    g = None
    for p in minors:
        if p.is_zero():
            continue
        g = p if g is None else poly_gcd(g, p)
    if g is None:
        report.whole_plane = True
        return report
    if g.degree() == 0:
        return report
    roots = roots_over_gaussian_rationals(g)
    report.root_report = roots
    for alpha, _mult in roots.exact:
        Ma = G2 - G1.scale(alpha)
        ker = kernel_basis(Ma)
        cols = [G1.mul_vec(c) for c in ker.columns()]
        eig = Subspace.from_matrix(
            A.domain_space,
            ExactMatrix.from_columns(cols, n) if cols else ExactMatrix.zero(n, 0))
        if eig.dim > 0:
            report.pairs.append((alpha, eig))
    return report


def _lagrange(xs: List[ExactScalar], ys: List[ExactScalar]) -> Poly:
    """Interpolating polynomial through exact sample points."""
    total = Poly.constant(ZERO)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi.is_zero():
            continue
        num = Poly.constant(ONE)
        denom = ONE
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * Poly([-xj, ONE])
            denom = denom * (xi - xj)
        total = total + num.scale(yi / denom)
    return total


def operator_matrix(A: LinearRelation) -> ExactMatrix:
    """The matrix of A when it is an everywhere-defined operator."""
    _require_endorelation(A)
    n = A.domain_space.dim
    if A.graph_dim != n or part(A, "mul").dim != 0 or part(A, "domain").dim != n:
        raise PreconditionFailed("relation is not an everywhere-defined operator")
    G1, G2 = A.first_components(), A.second_components()
    return G2 @ inverse(G1)
