"""State-space realizations Q(z) = C + (z - conj z0) G+ (I + (z - z0)(A - z)^-1) G.

Two independent construction routes are provided on purpose:

* `canonical_model` samples the difference-quotient kernel, quotients the
  isotropic part of the sampled symbol space, and reads the representing
  relation off difference generators;
* `realization_from_partial_fractions` assembles classical per-pole
  Jordan-type blocks with Hankel Gram matrices plus a purely multivalued
  block for a linear term.

Each one verifies the reproducing identity symbolically before returning,
and they cross-check each other in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (BudgetExhausted, DimensionMismatch, NotInResolventSet,
                     PoleHit, PreconditionFailed, SymmetryViolation,
                     UnsupportedPolynomialGrowth)
from .linalg import (ExactMatrix, column_echelon, congruence_diagonalize,
                     det, hermitian_signature, inverse, kernel_basis)
from .polys import Poly, RatFunc, lagrange_basis, lagrange_interpolate
from .ratfun import (RationalMatrixFunction, default_h_vectors,
                     nevanlinna_kernel, partial_fractions, upper_lattice)
from .relations import (LinearRelation, direct_orthogonal_sum,
                        is_self_adjoint, resolvent)
from .scalars import ONE, ZERO, ExactScalar, sc
from .spaces import KreinSpace, Subspace


class Realization:
    """Triple (state space, representing relation, input map) plus base data."""

    __slots__ = ("space", "A", "Gamma", "z0", "const_term")

    def __init__(self, space: KreinSpace, A: LinearRelation, Gamma: ExactMatrix,
                 z0: ExactScalar, const_term: ExactMatrix, verify: bool = True):
        if Gamma.rows != space.dim:
            raise DimensionMismatch("Gamma must map into the state space")
        if const_term.rows != const_term.cols or const_term.rows != Gamma.cols:
            raise DimensionMismatch("constant term must be p x p")
        if verify and space.dim > 0:
            if not is_self_adjoint(A):
                raise PreconditionFailed("representing relation must be self-adjoint")
            resolvent(A, z0)  # raises NotInResolventSet if z0 is bad
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "Gamma", Gamma)
        object.__setattr__(self, "z0", ExactScalar.of(z0))
        object.__setattr__(self, "const_term", const_term)

    def __setattr__(self, name, value):
        raise AttributeError("Realization is immutable")

    @property
    def input_dim(self) -> int:
        return self.Gamma.cols

    def gamma_plus(self) -> ExactMatrix:
        """The indefinite adjoint of the input map: Gamma* J."""
        return self.Gamma.conj_transpose() @ self.space.gram

    def __repr__(self):
        return (f"Realization(dim={self.space.dim}, p={self.input_dim}, "
                f"z0={self.z0})")


def eval_eq2(R: Realization, z: ExactScalar) -> ExactMatrix:
    """Exact value of the represented function at a resolvent point."""
    z = ExactScalar.of(z)
    p = R.input_dim
    if R.space.dim == 0:
        return R.const_term
    Rz = resolvent(R.A, z)
    inner = R.Gamma + (Rz @ R.Gamma).scale(z - R.z0)
    return R.const_term + (R.gamma_plus() @ inner).scale(z - R.z0.conj())


def gamma_z(R: Realization, z: ExactScalar) -> ExactMatrix:
    """The field z -> (I + (z - z0)(A - z)^-1) Gamma."""
    z = ExactScalar.of(z)
    if R.space.dim == 0:
        return R.Gamma
    Rz = resolvent(R.A, z)
    return R.Gamma + (Rz @ R.Gamma).scale(z - R.z0)


@dataclass(frozen=True)
class GammaField:
    """Callable view of z -> Gamma_z for a fixed realization."""

    realization: Realization

    def at(self, z: ExactScalar) -> ExactMatrix:
        return gamma_z(self.realization, z)


def symbolic_q(R: Realization) -> RationalMatrixFunction:
    """The represented function as an exact rational identity in z.

    The pencil inverse is recovered by interpolation: the adjugate entries
    of (second - z * first) are polynomials of degree below the state
    dimension, so n+1 exact point inversions determine them, avoiding
    rational-function elimination entirely.
    """
    p = R.input_dim
    if R.space.dim == 0:
        return RationalMatrixFunction(
            [[RatFunc.of(R.const_term[i, j]) for j in range(p)]
             for i in range(p)])
    n = R.space.dim
    G1 = R.A.first_components()
    G2 = R.A.second_components()
    if R.A.graph_dim != n:
        raise PreconditionFailed("self-adjoint relation must have graph dim n")

    # sample n+1 regular points of the pencil
    pts: List[ExactScalar] = []
    dets: List[ExactScalar] = []
    invs: List[ExactMatrix] = []
    t = 0
    while len(pts) < n + 1:
        z = ExactScalar(t)
        t += 1
        if t > 3 * n + 4:
            raise PreconditionFailed("pencil is singular everywhere")
        M = G2 - G1.scale(z)
        d = det(M)
        if d.is_zero():
            continue
        pts.append(z)
        dets.append(d)
        invs.append(inverse(M))
    basis = lagrange_basis(pts)
    det_poly = lagrange_interpolate(pts, dets, basis)
    # adjugate entries: det(M(z)) * (M(z)^-1)[i][j], degree <= n-1
    adj = [[lagrange_interpolate(pts, [dets[k] * invs[k][i, j]
                                       for k in range(n + 1)], basis)
            for j in range(n)] for i in range(n)]

    # numerators of Q - const: (z - conj z0) Gp (Gamma det + (z - z0) G1 adj Gamma)
    gp = R.gamma_plus()
    zpoly = Poly.variable()
    # W = G1 @ adj @ Gamma as polynomial matrix (n x p)
    AG = [[_poly_dot(adj[i], R.Gamma.col(j)) for j in range(p)]
          for i in range(n)]
    W = [[_scalar_rows_dot(G1.row(i), [AG[k][j] for k in range(n)])
          for j in range(p)] for i in range(n)]
    shift0 = Poly([-R.z0, ONE])
    shift0bar = Poly([-R.z0.conj(), ONE])
    entries = []
    for i in range(p):
        row = []
        for j in range(p):
            inner = _scalar_rows_dot(
                gp.row(i),
                [det_poly.scale(R.Gamma[k, j]) + shift0 * W[k][j]
                 for k in range(n)])
            num = Poly.constant(R.const_term[i, j]) * det_poly + \
                shift0bar * inner
            row.append(RatFunc(num, det_poly))
        entries.append(row)
    return RationalMatrixFunction(entries)


def _poly_dot(polys: Sequence[Poly], scalars: Sequence[ExactScalar]) -> Poly:
    acc = Poly.constant(ZERO)
    for pl, s in zip(polys, scalars):
        if not ExactScalar.of(s).is_zero():
            acc = acc + pl.scale(s)
    return acc


def _scalar_rows_dot(scalars: Sequence[ExactScalar],
                     polys: Sequence[Poly]) -> Poly:
    acc = Poly.constant(ZERO)
    for s, pl in zip(scalars, polys):
        if not ExactScalar.of(s).is_zero():
            acc = acc + pl.scale(s)
    return acc


def state_span(R: Realization) -> Subspace:
    """Smallest resolvent-invariant subspace containing ran Gamma.

    In finite dimension this Krylov closure equals the span of all
    Gamma_z images, so it decides minimality.
    """
    if R.space.dim == 0:
        return Subspace.zero(R.space)
    S = column_echelon(R.Gamma)
    R0 = resolvent(R.A, R.z0)
    while True:
        S_next = column_echelon(S.hstack(R0 @ S))
        if S_next.cols == S.cols:
            return Subspace(R.space, S_next)
        S = S_next


def is_minimal(R: Realization) -> bool:
    return state_span(R).dim == R.space.dim


def kappa(R: Realization) -> int:
    """Negative index of the minimal compression of the realization."""
    span = state_span(R)
    if span.dim == R.space.dim:
        return R.space.neg_index
    return span.inertia()[2]


def rebase(R: Realization, new_z0: ExactScalar) -> Realization:
    """Move the base point along the resolvent chain rule."""
    new_z0 = ExactScalar.of(new_z0)
    if new_z0 == R.z0:
        return R
    gamma_new = gamma_z(R, new_z0)
    const_new = eval_eq2(R, new_z0).conj_transpose()
    return Realization(R.space, R.A, gamma_new, new_z0, const_new)


def from_resolvent_form(space: KreinSpace, A: LinearRelation,
                        gamma_res: ExactMatrix, z0: ExactScalar,
                        poly_const: Optional[ExactMatrix] = None) -> Realization:
    """Import a presentation Q(z) = B0 + G+ (A - z)^-1 G.

    The base-form input map is the resolvent image of the raw one, and the
    constant term is the adjoint value at the base point.
    """
    z0 = ExactScalar.of(z0)
    p = gamma_res.cols
    B0 = poly_const if poly_const is not None else ExactMatrix.zero(p, p)
    R0 = resolvent(A, z0)
    gamma = R0 @ gamma_res
    gp = gamma_res.conj_transpose() @ space.gram
    val = B0 + (gp @ (R0 @ gamma_res))
    return Realization(space, A, gamma, z0, val.conj_transpose())


# --------------------------------------------------------------------------
# Canonical sampled model.
# --------------------------------------------------------------------------


def _default_base_point(Q: RationalMatrixFunction) -> ExactScalar:
    for z in upper_lattice():
        if Q.in_domain(z):
            return z
    raise PoleHit("no usable base point found")  # pragma: no cover


def _check_growth(Q: RationalMatrixFunction):
    for i in range(Q.size):
        for j in range(Q.size):
            r = Q.entries[i][j]
            quo, _ = divmod(r.num, r.den)
            if quo.degree() > 1:
                raise UnsupportedPolynomialGrowth(
                    "polynomial part of degree >= 2 is not realizable on a "
                    "finite-dimensional state space")


class _SymbolTable:
    """Incrementally grown symbol list with cached kernel Gram."""

    def __init__(self, Q: RationalMatrixFunction):
        self.Q = Q
        self.symbols: List[Tuple[ExactScalar, Tuple[ExactScalar, ...]]] = []
        self.gram_rows: List[List[ExactScalar]] = []
        self._kernel_cache = {}

    def _kernel(self, z, w) -> ExactMatrix:
        key = (z, w)
        if key not in self._kernel_cache:
            self._kernel_cache[key] = nevanlinna_kernel(self.Q, z, w)
        return self._kernel_cache[key]

    def add_symbol(self, z: ExactScalar, h: Sequence[ExactScalar]):
        h = tuple(ExactScalar.of(x) for x in h)
        new_idx = len(self.symbols)
        self.symbols.append((z, h))
        # J[a][b] = [sigma_b, sigma_a] = (N(z_b, z_a) h_b, h_a)
        for a in range(new_idx):
            za, ha = self.symbols[a]
            v = self._kernel(z, za).mul_vec(h)
            val = sum((ha[k].conj() * v[k] for k in range(len(ha))), ZERO)
            self.gram_rows[a].append(val)
        row = []
        for b in range(new_idx + 1):
            zb, hb = self.symbols[b]
            v = self._kernel(zb, z).mul_vec(hb)
            val = sum((h[k].conj() * v[k] for k in range(len(h))), ZERO)
            row.append(val)
        self.gram_rows.append(row)

    def gram(self) -> ExactMatrix:
        n = len(self.symbols)
        return ExactMatrix(self.gram_rows, n, n)


def canonical_model(Q: RationalMatrixFunction,
                    z0: Optional[ExactScalar] = None,
                    max_batches: int = 12) -> Realization:
    """Build a minimal realization by sampling the kernel.

    Symbols are added batch by batch until the quotient dimension and
    inertia are unchanged for two consecutive batches; the candidate model
    is then verified against Q as a rational identity (and sampling
    continues if the verification fails, which guards against premature
    stabilization).
    """
    _check_growth(Q)
    p = Q.size
    z0 = ExactScalar.of(z0) if z0 is not None else _default_base_point(Q)
    if not Q.in_domain(z0):
        raise NotInResolventSet(f"base point {z0} is a pole of the function")
    hs = default_h_vectors(p)
    points_per_batch = max(1, (4 * p) // len(hs))

    table = _SymbolTable(Q)
    lattice = upper_lattice()
    used_points = [z0]
    for h in hs:
        table.add_symbol(z0, h)

    history: List[Tuple[int, Tuple[int, int, int]]] = []
    last_error = None
    for _batch in range(max_batches):
        added = 0
        while added < points_per_batch:
            z = next(lattice)
            if any(z == q for q in used_points) or not Q.in_domain(z):
                continue
            used_points.append(z)
            for h in hs:
                table.add_symbol(z, h)
            added += 1
        J_full = table.gram()
        P, D = congruence_diagonalize(J_full)
        pivots = [k for k in range(D.rows) if not D[k, k].is_zero()]
        dim = len(pivots)
        n_plus = sum(1 for k in pivots if D[k, k].sign_real() > 0)
        history.append((dim, n_plus, dim - n_plus))
        # stable across two consecutive batches; the rational-identity
        # verification below makes this a soundness check, not a leap
        if len(history) >= 2 and history[-1] == history[-2]:
            try:
                return _assemble_model(Q, table, P, D, pivots, z0, hs)
            except (PreconditionFailed, SymmetryViolation,
                    NotInResolventSet) as exc:
                last_error = exc  # keep sampling
    raise BudgetExhausted(
        f"model did not stabilize: history={history[-2:]}, "
        f"last_error={last_error}")


def _assemble_model(Q, table, P, D, pivots, z0, hs) -> Realization:
    p = Q.size
    n = len(pivots)
    const = Q.eval(z0).conj_transpose()
    if n == 0:
        space = _zero_space()
        A = LinearRelation(space, space, ExactMatrix.zero(0, 0))
        return Realization(space, A, ExactMatrix.zero(0, p), z0, const,
                           verify=False)
    J_model = ExactMatrix.diag([D[k, k] for k in pivots])
    space = KreinSpace(J_model)
    J_full = table.gram()
    # coords of symbol u: c_k = [sigma_u, b_k] / d_k with b_k = P[:, pivot_k]
    PJ = P.conj_transpose() @ J_full
    inv_d = [D[k, k].inv() for k in pivots]

    def coords(u: int) -> List[ExactScalar]:
        return [inv_d[t] * PJ[k, u] for t, k in enumerate(pivots)]

    sym_index = {}
    for idx, (z, h) in enumerate(table.symbols):
        sym_index[(z, h)] = idx
    gamma_cols = []
    for j in range(p):
        e = tuple(ONE if i == j else ZERO for i in range(p))
        # columns of Gamma: the class of the base symbol with h = e_j;
        # e_j is always among the default h vectors
        gamma_cols.append(coords(sym_index[(z0, e)]))
    Gamma = ExactMatrix.from_columns(gamma_cols, n)

    graph_cols = []
    base_coords = {}
    for h in hs:
        base_coords[tuple(h)] = coords(sym_index[(z0, tuple(h))])
    for (z, h) in table.symbols:
        if z == z0:
            continue
        cz = coords(sym_index[(z, h)])
        cb = base_coords[tuple(h)]
        first = [a - b for a, b in zip(cz, cb)]
        second = [z * a - z0 * b for a, b in zip(cz, cb)]
        graph_cols.append(first + second)
    A = LinearRelation.from_graph_columns(space, space, graph_cols) \
        if graph_cols else LinearRelation(space, space,
                                          ExactMatrix.zero(2 * n, 0))
    model = Realization(space, A, Gamma, z0, const)
    if symbolic_q(model) != Q:
        raise SymmetryViolation("sampled model does not reproduce the function")
    if not is_minimal(model):
        raise PreconditionFailed("sampled model unexpectedly non-minimal")
    return model


def _zero_space() -> KreinSpace:
    return KreinSpace(ExactMatrix([], 0, 0))


# --------------------------------------------------------------------------
# Partial-fraction block oracle.
# --------------------------------------------------------------------------


def _real_pole_block(alpha: ExactScalar, coeffs: Sequence[ExactMatrix], p: int):
    """Jordan tower with block-Hankel Gram for a real pole."""
    m = len(coeffs)
    dim = m * p
    W = ExactMatrix.build(
        dim, dim,
        lambda r, c: _hankel_entry(coeffs, m, p, r, c))
    A_big = ExactMatrix.build(
        dim, dim,
        lambda r, c: (alpha if r == c else ZERO) +
        (ONE if c == r + p else ZERO))
    gamma_big = ExactMatrix.build(
        dim, p, lambda r, c: ONE if r == (m - 1) * p + c else ZERO)
    return W, A_big, gamma_big


def _hankel_entry(coeffs, m, p, r, c):
    i, a = divmod(r, p)
    j, b = divmod(c, p)
    t = i + j + 2  # 1-based block anti-diagonal index
    if t <= m:
        return ZERO
    k = 2 * m - t + 1
    return -coeffs[k - 1][a, b]


def _conjugate_pair_block(alpha: ExactScalar, coeffs: Sequence[ExactMatrix], p: int):
    """Two coupled Jordan towers for a pole pair alpha, conj(alpha)."""
    m = len(coeffs)
    half = m * p
    dim = 2 * half
    P_blk = ExactMatrix.build(
        half, half,
        lambda r, c: _hankel_entry([C.conj_transpose() for C in coeffs],
                                   m, p, r, c))
    W = ExactMatrix.build(
        dim, dim,
        lambda r, c: P_blk[r, c - half] if (r < half and c >= half) else
        (P_blk.conj_transpose()[r - half, c] if (r >= half and c < half)
         else ZERO))
    def a_entry(r, c):
        if r < half and c < half:
            return (alpha if r == c else ZERO) + (ONE if c == r + p else ZERO)
        if r >= half and c >= half:
            rr, cc = r - half, c - half
            return (alpha.conj() if rr == cc else ZERO) + \
                (ONE if cc == rr + p else ZERO)
        return ZERO
    A_big = ExactMatrix.build(dim, dim, a_entry)
    def g_entry(r, c):
        if r == (m - 1) * p + c:
            return ONE
        if r == half + (m - 1) * p + c:
            return ONE
        return ZERO
    gamma_big = ExactMatrix.build(dim, p, g_entry)
    return W, A_big, gamma_big


def _quotient_block(W: ExactMatrix, A_big: ExactMatrix, gamma_big: ExactMatrix):
    """Factor out the radical of W; A_big must preserve it (checked)."""
    P, D = congruence_diagonalize(W)
    pivots = [k for k in range(D.rows) if not D[k, k].is_zero()]
    if not pivots:
        return None
    J_blk = ExactMatrix.diag([D[k, k] for k in pivots])
    space = KreinSpace(J_blk)
    PJ = P.conj_transpose() @ W
    inv_d = [D[k, k].inv() for k in pivots]

    def coords_of(vec):
        pr = PJ.mul_vec(vec)
        return [inv_d[t] * pr[k] for t, k in enumerate(pivots)]

    basis_cols = [P.col(k) for k in pivots]
    A_cols = [coords_of(A_big.mul_vec(b)) for b in basis_cols]
    A_blk = ExactMatrix.from_columns(A_cols, len(pivots))
    gamma_cols = [coords_of(gamma_big.col(j)) for j in range(gamma_big.cols)]
    gamma_blk = ExactMatrix.from_columns(gamma_cols, len(pivots))
    # the quotient is well-defined only if the tower maps rad(W) into itself
    for r in kernel_basis(W).columns():
        image = A_big.mul_vec(r)
        if not all(x.is_zero() for x in W.mul_vec(image)):
            raise PreconditionFailed("radical not invariant under the tower")
    return space, A_blk, gamma_blk


def realization_from_partial_fractions(Q: RationalMatrixFunction,
                                       z0: Optional[ExactScalar] = None) -> Realization:
    """Classical pole-block realization; independent of the sampled route."""
    form = partial_fractions(Q)
    p = Q.size
    z0 = ExactScalar.of(z0) if z0 is not None else _default_base_point(Q)

    blocks = []  # (space, relation, gamma, resolvent_form: bool)
    seen_conjugates = set()
    for pole in form.poles:
        alpha = pole.alpha
        if alpha.is_real():
            W, A_big, gamma_big = _real_pole_block(alpha, pole.coefficients, p)
        else:
            if alpha in seen_conjugates:
                continue
            seen_conjugates.add(alpha.conj())
            if alpha.im < 0:
                alpha = alpha.conj()
                pole = next(pl for pl in form.poles if pl.alpha == alpha)
            W, A_big, gamma_big = _conjugate_pair_block(
                alpha, pole.coefficients, p)
        quot = _quotient_block(W, A_big, gamma_big)
        if quot is None:
            continue
        space, A_blk, gamma_blk = quot
        rel = LinearRelation.from_matrix(space, A_blk)
        blocks.append((space, rel, gamma_blk, True))

    if not form.linear.is_zero():
        Pl, Dl = congruence_diagonalize(form.linear)
        pivs = [k for k in range(Dl.rows) if not Dl[k, k].is_zero()]
        U = inverse(Pl)
        V = U.submatrix(pivs, range(p))
        space = KreinSpace(ExactMatrix.diag([Dl[k, k] for k in pivs]))
        rel = LinearRelation.purely_multivalued(space, Subspace.full(space))
        blocks.append((space, rel, V, False))

    if not blocks:
        space = _zero_space()
        A = LinearRelation(space, space, ExactMatrix.zero(0, 0))
        return Realization(space, A, ExactMatrix.zero(0, p), z0,
                           Q.eval(z0).conj_transpose(), verify=False)

    total_rel = blocks[0][1]
    for blk in blocks[1:]:
        total_rel = direct_orthogonal_sum(total_rel, blk[1])
    total_space = total_rel.domain_space

    gamma_parts = []
    for space, rel, gamma, res_form in blocks:
        if res_form:
            gamma_parts.append(resolvent(rel, z0) @ gamma)
        else:
            gamma_parts.append(gamma)
    big_gamma = gamma_parts[0]
    for g in gamma_parts[1:]:
        big_gamma = big_gamma.vstack(g)

    const = Q.eval(z0).conj_transpose()
    R = Realization(total_space, total_rel, big_gamma, z0, const)
    if symbolic_q(R) != Q:
        raise SymmetryViolation("partial fraction model does not reproduce Q")
    return R

