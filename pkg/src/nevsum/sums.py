"""Negative-index analysis of sums of two rational matrix functions.

Everything here runs twice, on purpose: a geometric route through stacked
realizations (state span, four-part splitting, inertia counts) and an
analytic route through the cancellation equations on the difference
quotients.  The verdict reports both and refuses to pick a winner when
they disagree, which turns internal bugs into loud failures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import CrossCheckError, DimensionMismatch, PoleHit
from .linalg import ExactMatrix, column_echelon, hermitian_signature, kernel_basis, rank
from .polys import Poly, RatFunc, poly_gcd
from .polyroots import roots_over_gaussian_rationals
from .ratfun import (RationalMatrixFunction, nevanlinna_kernel,
                     upper_lattice)
from .realize import (Realization, canonical_model, eval_eq2, gamma_z,
                      is_minimal, kappa, rebase, state_span, symbolic_q)
from .relations import direct_orthogonal_sum, resolvent
from .scalars import ONE, ZERO, ExactScalar, sc
from .spaces import (Decomposition44, KreinSpace, Subspace, decompose_44,
                     isotropic_part, ortho_complement, product)

# --------------------------------------------------------------------------
# Orthogonal sum representation.
# --------------------------------------------------------------------------


@dataclass
class SumRepresentation:
    R1: Realization
    R2: Realization
    tilde_space: KreinSpace
    tilde_A: object
    tilde_Gamma: ExactMatrix
    realization: Realization
    L: Subspace
    decomposition: Decomposition44

    @property
    def inertia_bookkeeping(self) -> Tuple[int, int]:
        """(kappa1 + kappa2, neg(L1) + dim L0 + neg(L2)); equal when the
        inputs are minimal."""
        lhs = self.R1.space.neg_index + self.R2.space.neg_index
        d = self.decomposition
        rhs = d.L1.inertia()[2] + d.L0.dim + d.L2.inertia()[2]
        return lhs, rhs


def build_sum(R1: Realization, R2: Realization) -> SumRepresentation:
    """Stack two realizations on the orthogonal direct sum of their spaces."""
    if R1.input_dim != R2.input_dim:
        raise DimensionMismatch("input dimensions differ")
    if R2.z0 != R1.z0:
        R2 = rebase(R2, R1.z0)
    tilde_A = direct_orthogonal_sum(R1.A, R2.A)
    tilde_space = tilde_A.domain_space
    if R1.space.dim == 0:
        gamma = R2.Gamma
    elif R2.space.dim == 0:
        gamma = R1.Gamma
    else:
        gamma = R1.Gamma.vstack(R2.Gamma)
    const = R1.const_term + R2.const_term
    total = Realization(tilde_space, tilde_A, gamma, R1.z0, const)
    # identity check: the stacked model represents the sum of the functions
    if symbolic_q(total) != symbolic_q(R1) + symbolic_q(R2):
        raise CrossCheckError("stacked realization does not represent Q1 + Q2")
    L = state_span(total)
    dec = decompose_44(tilde_space, L)
    return SumRepresentation(R1=R1, R2=R2, tilde_space=tilde_space,
                             tilde_A=tilde_A, tilde_Gamma=gamma,
                             realization=total, L=L, decomposition=dec)


# --------------------------------------------------------------------------
# Cancellation equations.
# --------------------------------------------------------------------------


@dataclass
class CriterionSolution:
    """One solution family of the cancellation equation.

    kind: 'trivial' | 'singular' | 'nontrivial' (singular means both
    vectors already annihilate their own kernels, Lemma-12 style).
    `kills_sum_symbol` marks directions that the summed function's own
    kernel annihilates identically (the zero-symbol criterion), i.e. the
    class of the sampled vector vanishes in the minimal state space.
    """

    z1: ExactScalar
    z2: ExactScalar
    h1: Tuple[ExactScalar, ...]
    h2: Tuple[ExactScalar, ...]
    kind: str
    sign: str = "n/a"
    E_value: Optional[ExactScalar] = None
    kills_sum_symbol: bool = False
    provenance: str = ""


def singular_directions(Q: RationalMatrixFunction) -> List[Tuple[ExactScalar, ...]]:
    """All h with the kernel identity N_Q(., .) h == 0.

    Equivalent to Q(z) h being constant in z, i.e. h in the common kernel
    of the derivative's coefficient matrices after clearing denominators.
    """
    p = Q.size
    Qd = Q.derivative()
    rows: List[List[ExactScalar]] = []
    for i in range(p):
        den_lcm = Poly([ONE])
        for j in range(p):
            from .polys import poly_lcm
            den_lcm = poly_lcm(den_lcm, Qd.entries[i][j].den)
        cleared = []
        max_deg = 0
        for j in range(p):
            e = Qd.entries[i][j]
            mult = den_lcm // e.den
            cleared.append(e.num * mult)
            max_deg = max(max_deg, cleared[-1].degree())
        for k in range(max_deg + 1):
            rows.append([cleared[j][k] for j in range(p)])
    if not rows:
        return []
    M = ExactMatrix(rows, len(rows), p)
    ker = kernel_basis(M)
    return [tuple(c) for c in ker.columns()]


def _in_span(vectors: Sequence[Tuple[ExactScalar, ...]],
             v: Sequence[ExactScalar]) -> bool:
    if all(ExactScalar.of(x).is_zero() for x in v):
        return True
    if not vectors:
        return False
    B = ExactMatrix.from_columns([list(c) for c in vectors], len(v))
    return rank(B.hstack(ExactMatrix.column(list(v)))) == rank(B)


def _diag_kernel_value(Q: RationalMatrixFunction, z: ExactScalar,
                       h: Sequence[ExactScalar]) -> ExactScalar:
    N = nevanlinna_kernel(Q, z, z)
    v = N.mul_vec([ExactScalar.of(x) for x in h])
    return sum((ExactScalar.of(h[k]).conj() * v[k] for k in range(len(h))), ZERO)


def classify_E(Q1: RationalMatrixFunction, Q2: RationalMatrixFunction,
               sol: CriterionSolution) -> CriterionSolution:
    """Attach the indefinite self-product value and its sign to a solution."""
    if sol.kind == "trivial":
        sol.E_value = ZERO
        sol.sign = "n/a"
        return sol
    E = _diag_kernel_value(Q1, sol.z1, sol.h1) + \
        _diag_kernel_value(Q2, sol.z2, sol.h2)
    if not E.is_real():
        raise CrossCheckError(f"self-product value not real: {E}")
    sol.E_value = E
    s = E.sign_real()
    sol.sign = "positive" if s > 0 else ("negative" if s < 0 else "neutral")
    return sol


def _make_solution(Q1, Q2, z1, z2, h1, h2, provenance,
                   sing1=None, sing2=None, sing_sum=None,
                   Qsum=None) -> CriterionSolution:
    h1 = tuple(ExactScalar.of(x) for x in h1)
    h2 = tuple(ExactScalar.of(x) for x in h2)
    if all(x.is_zero() for x in h1) and all(x.is_zero() for x in h2):
        kind = "trivial"
    else:
        if sing1 is None:
            sing1 = singular_directions(Q1)
        if sing2 is None:
            sing2 = singular_directions(Q2)
        kind = "singular" if (_in_span(sing1, h1) and _in_span(sing2, h2)) \
            else "nontrivial"
    sol = CriterionSolution(z1=ExactScalar.of(z1), z2=ExactScalar.of(z2),
                            h1=h1, h2=h2, kind=kind, provenance=provenance)
    if h1 == h2 and sol.z1 == sol.z2:
        if sing_sum is None:
            Qs = Qsum if Qsum is not None else Q1 + Q2
            sing_sum = singular_directions(Qs)
        sol.kills_sum_symbol = _in_span(sing_sum, h1)
    return classify_E(Q1, Q2, sol)


def solve_eq52_at(Q1: RationalMatrixFunction, Q2: RationalMatrixFunction,
                  z1: ExactScalar, z2: ExactScalar) -> List[CriterionSolution]:
    """All (h1, h2) cancelling the two kernels at fixed points z1, z2.

    The for-all-w condition is cleared into a finite stack of coefficient
    matrices; the exact kernel of the stack is the complete solution set.
    """
    z1, z2 = ExactScalar.of(z1), ExactScalar.of(z2)
    for Q, z in ((Q1, z1), (Q2, z2)):
        if not Q.in_domain(z):
            raise PoleHit(f"{z} is a pole")
    p = Q1.size
    if Q2.size != p:
        raise DimensionMismatch("size mismatch")
    rows: List[List[ExactScalar]] = []
    u = Poly.variable()
    for i in range(p):
        entries: List[RatFunc] = []
        from .polys import poly_lcm
        den_lcm = Poly([ONE])
        for Q, z in ((Q1, z1), (Q2, z2)):
            val = Q.eval(z)
            for j in range(p):
                e = Q.entries[i][j]
                numer = Poly.constant(val[i, j]) * e.den - e.num
                denom = e.den * Poly([z, -ONE])
                rf = RatFunc(numer, denom)
                entries.append(rf)
                den_lcm = poly_lcm(den_lcm, rf.den)
        cleared = [e.num * (den_lcm // e.den) for e in entries]
        max_deg = max(c.degree() for c in cleared)
        for k in range(max_deg + 1):
            rows.append([c[k] for c in cleared])
    M = ExactMatrix(rows, len(rows), 2 * p)
    ker = kernel_basis(M)
    sing1 = singular_directions(Q1)
    sing2 = singular_directions(Q2)
    out = []
    for c in ker.columns():
        out.append(_make_solution(Q1, Q2, z1, z2, c[:p], c[p:],
                                  provenance="fixed-point",
                                  sing1=sing1, sing2=sing2))
    return out


@dataclass
class Eq53Result:
    solutions: List[CriterionSolution]
    complete: bool
    notes: List[str] = field(default_factory=list)


def solve_eq53(Q1: RationalMatrixFunction,
               Q2: RationalMatrixFunction) -> Eq53Result:
    """Solutions (z, h) of the summed-kernel cancellation equation.

    Returns the z-independent directions (the summed function's singular
    directions) plus isolated rational points where the cleared coefficient
    stack loses rank.  Non-splitting factors are reported as incomplete.
    """
    p = Q1.size
    Qs = Q1 + Q2
    notes: List[str] = []
    sing_sum = singular_directions(Qs)
    sing1 = singular_directions(Q1)
    sing2 = singular_directions(Q2)
    rep_z = _first_domain_point(Qs)
    sols: List[CriterionSolution] = []
    for h in sing_sum:
        sols.append(_make_solution(Q1, Q2, rep_z, rep_z, h, h,
                                   provenance="identity",
                                   sing1=sing1, sing2=sing2,
                                   sing_sum=sing_sum))

    # cleared coefficient stack S(z) with entries rational in z
    zvar = RatFunc.variable()
    rows: List[List[RatFunc]] = []
    from .polys import poly_lcm
    for i in range(p):
        den_lcm = Poly([ONE])
        for j in range(p):
            den_lcm = poly_lcm(den_lcm, Qs.entries[i][j].den)
        cleared: List[Poly] = []
        for j in range(p):
            e = Qs.entries[i][j]
            cleared.append(e.num * (den_lcm // e.den))
        # entry of the condition after multiplying by (z - u) * den_lcm(u):
        # Q_ij(z) * den_lcm(u) - cleared_ij(u); coefficients of u are
        # rational in z
        max_deg = max(max(c.degree() for c in cleared), den_lcm.degree())
        for k in range(max_deg + 1):
            row = []
            for j in range(p):
                qij = Qs.entries[i][j]
                dk = den_lcm[k] if k <= den_lcm.degree() else ZERO
                ck = cleared[j][k] if k <= cleared[j].degree() else ZERO
                row.append(qij * RatFunc.of(dk) - RatFunc.of(ck))
            rows.append(row)

    # generic rank over the function field
    generic_rank = _field_rank([list(r) for r in rows])
    if p - generic_rank > len(sing_sum):
        notes.append("kernel varies with the point: continuum of solutions")
        # sample a few points to materialize representatives
        for z in _domain_points(Qs, 3):
            for sol in _eq53_at_point(Q1, Q2, Qs, z, sing1, sing2, sing_sum):
                sols.append(sol)
        return Eq53Result(solutions=sols, complete=True, notes=notes)

    # isolated rank drops: gcd of all maximal minors
    complete = True
    minors = _all_minors(rows, generic_rank)
    g: Optional[Poly] = None
    for m in minors:
        if m.is_zero():
            continue
        g = m.num if g is None else poly_gcd(g, m.num)
    if g is not None and g.degree() > 0:
        report = roots_over_gaussian_rationals(g)
        if not report.fully_split:
            complete = False
            notes.append("rank-drop polynomial has non-rational factors")
        for z_star, _m in report.exact:
            if not Qs.in_domain(z_star):
                continue
            for sol in _eq53_at_point(Q1, Q2, Qs, z_star, sing1, sing2,
                                      sing_sum):
                sols.append(sol)
    return Eq53Result(solutions=sols, complete=complete, notes=notes)


def eq53_kernel_at(Q: RationalMatrixFunction, z: ExactScalar) -> List[Tuple[ExactScalar, ...]]:
    """Exact kernel of h -> N_Q(z, .) h (identically in the second slot)."""
    z = ExactScalar.of(z)
    p = Q.size
    from .polys import poly_lcm
    rows: List[List[ExactScalar]] = []
    val = Q.eval(z)
    for i in range(p):
        entries = []
        den_lcm = Poly([ONE])
        for j in range(p):
            e = Q.entries[i][j]
            numer = Poly.constant(val[i, j]) * e.den - e.num
            denom = e.den * Poly([z, -ONE])
            rf = RatFunc(numer, denom)
            entries.append(rf)
            den_lcm = poly_lcm(den_lcm, rf.den)
        cleared = [e.num * (den_lcm // e.den) for e in entries]
        max_deg = max(c.degree() for c in cleared)
        for k in range(max_deg + 1):
            rows.append([c[k] for c in cleared])
    M = ExactMatrix(rows, len(rows), p)
    return [tuple(c) for c in kernel_basis(M).columns()]


def _eq53_at_point(Q1, Q2, Qs, z, sing1, sing2, sing_sum):
    """Directions solving the summed condition at z, beyond the
    z-independent kernel."""
    out = []
    for h in eq53_kernel_at(Qs, z):
        if _in_span(sing_sum, h):
            continue
        sol = _make_solution(Q1, Q2, z, z, h, h,
                             provenance="isolated-point",
                             sing1=sing1, sing2=sing2, sing_sum=sing_sum)
        out.append(sol)
    return out


def _first_domain_point(Q: RationalMatrixFunction) -> ExactScalar:
    for z in upper_lattice():
        if Q.in_domain(z):
            return z
    raise PoleHit("no sample point available")  # pragma: no cover


def _domain_points(Q: RationalMatrixFunction, k: int) -> List[ExactScalar]:
    pts = []
    for z in upper_lattice():
        if Q.in_domain(z):
            pts.append(z)
            if len(pts) == k:
                break
    return pts


def _field_rank(rows: List[List[RatFunc]]) -> int:
    if not rows:
        return 0
    n_cols = len(rows[0])
    work = [list(r) for r in rows]
    r = 0
    for c in range(n_cols):
        pivot = None
        for i in range(r, len(work)):
            if not work[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        piv = work[r][c]
        for i in range(r + 1, len(work)):
            if not work[i][c].is_zero():
                f = work[i][c] / piv
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def _all_minors(rows: List[List[RatFunc]], size: int) -> List[RatFunc]:
    from .polys import fm_det
    if size == 0:
        return []
    n_cols = len(rows[0])
    out = []
    for ridx in itertools.combinations(range(len(rows)), size):
        for cidx in itertools.combinations(range(n_cols), size):
            sub = [[rows[i][j] for j in cidx] for i in ridx]
            out.append(fm_det(sub))
    return out


# --------------------------------------------------------------------------
# Scanning strategies for the two-point equation.
# --------------------------------------------------------------------------


@dataclass
class ScanResult:
    solutions: List[CriterionSolution]
    strategy: str
    complete: bool
    notes: List[str] = field(default_factory=list)

    @property
    def nontrivial(self) -> List[CriterionSolution]:
        return [s for s in self.solutions if s.kind == "nontrivial"]


def solve_eq52_scan(Q1: RationalMatrixFunction, Q2: RationalMatrixFunction,
                    strategy: str = "grid", grid_points: int = 4) -> ScanResult:
    if strategy == "grid":
        return _scan_grid(Q1, Q2, grid_points)
    if strategy == "algebraic":
        if Q1.size != 1:
            raise ValueError("algebraic strategy is implemented for scalars")
        return _scan_algebraic_scalar(Q1, Q2)
    raise ValueError(f"unknown strategy {strategy!r}")


def _scan_grid(Q1, Q2, grid_points) -> ScanResult:
    pts1 = _domain_points(Q1, grid_points)
    pts2 = _domain_points(Q2, grid_points)
    sols = []
    for z1 in pts1:
        for z2 in pts2:
            for s in solve_eq52_at(Q1, Q2, z1, z2):
                s.provenance = "grid"
                sols.append(s)
    return ScanResult(solutions=sols, strategy="grid", complete=False,
                      notes=["grid scan is sound but not exhaustive"])


def _separated_columns(Q: RationalMatrixFunction) -> List[RatFunc]:
    """For a scalar function, the u-coefficient column of the cleared
    one-sided kernel, with entries rational in the function's own point.

    (Q(z) - Q(u))/(z - u) * den(u) is a polynomial in u whose coefficients
    are rational in z; the division by (u - z) is synthetic, with an exact
    zero remainder check.
    """
    q = Q.entries[0][0]
    zq = RatFunc(q.num, q.den)  # the function of z itself
    den, num = q.den, q.num
    deg = max(den.degree(), num.degree())
    coeffs = [zq * RatFunc.of(den[k]) - RatFunc.of(num[k])
              for k in range(deg + 1)]
    # divide the u-polynomial sum(coeffs[k] u^k) by (u - z): Horner scheme
    zvar = RatFunc.variable()
    quotient: List[RatFunc] = [RatFunc.of(0)] * max(deg, 1)
    carry = coeffs[deg]
    for k in range(deg - 1, -1, -1):
        quotient[k] = carry
        carry = coeffs[k] + zvar * carry
    if not carry.is_zero():
        raise CrossCheckError("synthetic division left a remainder")
    # negate: (Q(z) - Q(u)) den(u) = -(u - z) * quotient adjustments fold in
    return [-qk for qk in quotient[:deg]] if deg > 0 else []


def _scan_algebraic_scalar(Q1, Q2) -> ScanResult:
    """Complete description of the two-point cancellation set for scalars.

    With separated variables the cleared condition is c1(z1) h1 + c2(z2) h2
    = 0 coefficient-wise; nontrivial solutions exist exactly where the
    2-column stack loses rank.  Vanishing loci and the parallelism variety
    are resolved by gcds and resultants over the Gaussian rationals, with
    explicit completeness bookkeeping.
    """
    notes: List[str] = []
    complete = True
    sols: List[CriterionSolution] = []

    c1 = _separated_columns(Q1)  # entries rational in z1
    c2raw = _separated_columns(Q2)
    d1 = Q1.entries[0][0].den
    d2 = Q2.entries[0][0].den
    # multiply by the other denominator (constant coefficients in u)
    c1 = _poly_vector_times(c1, d2)
    c2 = _poly_vector_times(c2raw, d1)
    K = max(len(c1), len(c2))
    c1 += [RatFunc.of(0)] * (K - len(c1))
    c2 += [RatFunc.of(0)] * (K - len(c2))

    zero1 = all(e.is_zero() for e in c1)
    zero2 = all(e.is_zero() for e in c2)
    if zero1 or zero2:
        # a constant summand: one-sided directions solve everywhere
        for z1 in _domain_points(Q1, 2):
            for z2 in _domain_points(Q2, 2):
                h = ((ONE,), (ZERO,)) if zero1 else ((ZERO,), (ONE,))
                sols.append(_make_solution(Q1, Q2, z1, z2, h[0], h[1],
                                           provenance="algebraic:constant-side"))
        return ScanResult(sols, "algebraic", True, ["one summand is constant"])

    # numerators after clearing each column's own denominators
    n1, den1 = _clear_column(c1)
    n2, den2 = _clear_column(c2)

    # vanishing loci of whole columns
    for (nvec, Q, side) in ((n1, Q1, 1), (n2, Q2, 2)):
        g = None
        for e in nvec:
            if e.is_zero():
                continue
            g = e if g is None else poly_gcd(g, e)
        if g is not None and g.degree() > 0:
            rep = roots_over_gaussian_rationals(g)
            if not rep.fully_split:
                complete = False
                notes.append(f"column {side} vanishing locus not fully split")
            for z_star, _m in rep.exact:
                if not (Q1.in_domain(z_star) if side == 1 else Q2.in_domain(z_star)):
                    continue
                other_pts = _domain_points(Q2 if side == 1 else Q1, 1)
                z_other = other_pts[0]
                pair = (z_star, z_other) if side == 1 else (z_other, z_star)
                for s in solve_eq52_at(Q1, Q2, pair[0], pair[1]):
                    s.provenance = f"algebraic:column-{side}-vanishes"
                    sols.append(s)

    # parallelism variety: minors n1_a(z1) n2_b(z2) - n1_b(z1) n2_a(z2),
    # stored as polynomials in z2 whose coefficients are rational in z1
    minors: List[Poly] = []
    for a in range(K):
        for b in range(a + 1, K):
            pol = Poly(_minor_as_poly_in_z2(n1[a], n1[b], n2[a], n2[b]))
            if not pol.is_zero():
                minors.append(pol)
    if not minors:
        # rank <= 1 for every pair of points: a full two-parameter family
        notes.append("parallelism holds identically: solutions at every pair")
        for z1 in _domain_points(Q1, 2):
            for z2 in _domain_points(Q2, 2):
                for s in solve_eq52_at(Q1, Q2, z1, z2):
                    s.provenance = "algebraic:everywhere"
                    sols.append(s)
        return ScanResult(sols, "algebraic", complete, notes)

    gpoly = None  # common factor in z2 over Q(i)(z1)
    for pol in minors:
        gpoly = pol if gpoly is None else poly_gcd(gpoly, pol)
    if gpoly is not None and gpoly.degree() > 0:
        notes.append("common curve component of degree "
                     f"{gpoly.degree()} in the second variable")
        curve_sols, curve_complete = _solutions_on_curve(Q1, Q2, gpoly)
        sols.extend(curve_sols)
        complete = complete and curve_complete
        minors = [_poly_divide_coeffs(pl, gpoly) for pl in minors]

    # vertical lines: z1 killing all remaining minors identically
    content = None
    for pol in minors:
        for c in pol.coeffs:
            if c.is_zero():
                continue
            content = c.num if content is None else poly_gcd(content, c.num)
    candidates: List[ExactScalar] = []
    if content is not None and content.degree() > 0:
        rep = roots_over_gaussian_rationals(content)
        if not rep.fully_split:
            complete = False
            notes.append("vertical-line content not fully split")
        candidates.extend(r for r, _ in rep.exact)

    # isolated points: z1 must zero out the constant-in-z2 minors and give
    # the positive-degree ones a common z2 root (eliminated by resultants)
    deg0 = [pl for pl in minors if pl.degree() == 0 and not pl.is_zero()]
    nonconst = [pl for pl in minors if pl.degree() >= 1]
    for pl in deg0:
        g0 = pl.coeffs[0].num
        if g0.degree() > 0:
            rep = roots_over_gaussian_rationals(g0)
            if not rep.fully_split:
                complete = False
                notes.append("degree-0 minor not fully split")
            candidates.extend(r for r, _ in rep.exact)
    if len(nonconst) == 1 and not deg0:
        curve_sols, curve_complete = _solutions_on_curve(Q1, Q2, nonconst[0])
        if curve_sols:
            notes.append("residual curve component")
        sols.extend(curve_sols)
        complete = complete and curve_complete
    elif len(nonconst) >= 2:
        from .polys import resultant
        res_gcd = None
        saw_pair = False
        for i in range(len(nonconst)):
            for j in range(i + 1, len(nonconst)):
                r = resultant(nonconst[i], nonconst[j])
                if r.is_zero():
                    continue
                saw_pair = True
                res_gcd = r.num if res_gcd is None else poly_gcd(res_gcd, r.num)
        if not saw_pair:
            complete = False
            notes.append("all pairwise resultants vanish: shared components "
                         "not fully resolved")
        if res_gcd is not None and res_gcd.degree() > 0:
            rep = roots_over_gaussian_rationals(res_gcd)
            if not rep.fully_split:
                complete = False
                notes.append("resultant not fully split")
            candidates.extend(r for r, _ in rep.exact)

    for z_star in candidates:
        if not Q1.in_domain(z_star):
            continue
        # solve the univariate remainder system in z2 at z1 = z_star
        univ = None
        all_vanish = True
        skip = False
        for pol in minors:
            try:
                ev = [c.eval(z_star) for c in pol.coeffs]
            except ZeroDivisionError:
                complete = False
                notes.append(f"coefficient pole at candidate {z_star}")
                skip = True
                break
            upoly = Poly(ev)
            if upoly.is_zero():
                continue
            all_vanish = False
            univ = upoly if univ is None else poly_gcd(univ, upoly)
        if skip:
            continue
        if all_vanish:
            for z2 in _domain_points(Q2, 2):
                for s in solve_eq52_at(Q1, Q2, z_star, z2):
                    s.provenance = "algebraic:line"
                    sols.append(s)
            continue
        if univ is None or univ.degree() < 1:
            continue
        rep = roots_over_gaussian_rationals(univ)
        if not rep.fully_split:
            complete = False
            notes.append("point system not fully split")
        for z2_star, _m in rep.exact:
            if not Q2.in_domain(z2_star):
                continue
            for s in solve_eq52_at(Q1, Q2, z_star, z2_star):
                s.provenance = "algebraic:point"
                sols.append(s)

    return ScanResult(_dedupe(sols), "algebraic", complete, notes)


def _poly_vector_times(vec: List[RatFunc], mult: Poly) -> List[RatFunc]:
    """Multiply the u-polynomial with RatFunc coefficients by an exact
    u-polynomial with scalar coefficients."""
    if not vec:
        return [RatFunc.of(c) for c in mult.coeffs]
    out = [RatFunc.of(0)] * (len(vec) + mult.degree())
    for i, v in enumerate(vec):
        if v.is_zero():
            continue
        for k, c in enumerate(mult.coeffs):
            if not c.is_zero():
                out[i + k] = out[i + k] + v * RatFunc.of(c)
    return out


def _clear_column(col: List[RatFunc]) -> Tuple[List[Poly], Poly]:
    from .polys import poly_lcm
    den = Poly([ONE])
    for e in col:
        den = poly_lcm(den, e.den)
    return [e.num * (den // e.den) for e in col], den


def _minor_as_poly_in_z2(n1a: Poly, n1b: Poly, n2a: Poly, n2b: Poly) -> List[RatFunc]:
    """n1a(z1) n2b(z2) - n1b(z1) n2a(z2) as a z2-polynomial over
    rational functions of z1."""
    deg = max(n2b.degree(), n2a.degree(), 0)
    out = []
    ra = RatFunc(n1a)
    rb = RatFunc(n1b)
    for k in range(deg + 1):
        cb = RatFunc.of(n2b[k]) if k <= n2b.degree() else RatFunc.of(0)
        ca = RatFunc.of(n2a[k]) if k <= n2a.degree() else RatFunc.of(0)
        out.append(ra * cb - rb * ca)
    return out


def _poly_divide_coeffs(pl: Poly, g: Poly) -> Poly:
    quo, rem = divmod(pl, g)
    if not rem.is_zero():
        return pl
    return quo


def _solutions_on_curve(Q1, Q2, gpoly: Poly) -> Tuple[List[CriterionSolution], bool]:
    """Sample concrete solutions on a curve component g(z1, z2) = 0.

    gpoly is a polynomial in z2 with coefficients rational in z1; for a few
    z1 sample points its exact z2-roots give verified solution pairs.
    """
    sols = []
    complete = True
    for z1 in _domain_points(Q1, 3):
        try:
            ev = [c.eval(z1) for c in gpoly.coeffs]
        except ZeroDivisionError:
            continue
        upoly = Poly(ev)
        if upoly.is_zero():
            for z2 in _domain_points(Q2, 2):
                for s in solve_eq52_at(Q1, Q2, z1, z2):
                    s.provenance = "algebraic:curve"
                    sols.append(s)
            continue
        if upoly.degree() < 1:
            continue
        rep = roots_over_gaussian_rationals(upoly)
        if not rep.fully_split:
            complete = False
        for z2_star, _m in rep.exact:
            if not Q2.in_domain(z2_star):
                continue
            for s in solve_eq52_at(Q1, Q2, z1, z2_star):
                s.provenance = "algebraic:curve"
                sols.append(s)
    return sols, complete


def _dedupe(sols: List[CriterionSolution]) -> List[CriterionSolution]:
    seen = set()
    out = []
    for s in sols:
        key = (s.z1, s.z2, s.h1, s.h2)
        if key in seen:
            continue
        seen.add(key)
        out.append(s)
    return out


# --------------------------------------------------------------------------
# The verdict.
# --------------------------------------------------------------------------


@dataclass
class Verdict:
    kappa: int
    kappa1: int
    kappa2: int
    preserved: bool
    minimal_36: bool
    dim_L0: int
    inertia_L2: Tuple[int, int, int]
    structure_case: str
    solutions: List[CriterionSolution]
    cross_check: Dict[str, object]
    sum_representation: SumRepresentation

    @property
    def agree(self) -> bool:
        return bool(self.cross_check.get("agree", False))


def theorem8_verdict(Q1: RationalMatrixFunction, Q2: RationalMatrixFunction,
                     scan: str = "auto") -> Verdict:
    """Full two-route analysis of whether the negative index adds up.

    Geometric route: canonical realizations, stacked sum, state span,
    four-part splitting; the negative index of the sum is the negative
    index of the nondegenerate closure part.  Analytic route: an
    independent canonical model of Q1 + Q2, plus the cancellation-equation
    scans.  Both land in `cross_check`, and `agree` must be True for the
    result to be trusted.
    """
    R1 = canonical_model(Q1)
    R2 = canonical_model(Q2)
    k1, k2 = kappa(R1), kappa(R2)
    S = build_sum(R1, R2)
    dec = S.decomposition
    dim_L0 = dec.L0.dim
    inertia_L2 = dec.L2.inertia()
    kappa_geometric = dec.L1.inertia()[2]
    minimal_36 = is_minimal(S.realization)

    Qsum = Q1 + Q2
    kappa_analytic = kappa(canonical_model(Qsum))

    preserved = (kappa_geometric == k1 + k2)
    corollary5 = (dim_L0 == 0 and inertia_L2[2] == 0)

    if dim_L0 > 0:
        case = "d"
    elif dec.L2.dim == 0:
        case = "a"
    elif inertia_L2[2] == 0:
        case = "c"
    else:
        case = "b"

    strategy = scan
    if scan == "auto":
        strategy = "algebraic" if Q1.size == 1 else "grid"
    scan_result = solve_eq52_scan(Q1, Q2, strategy=strategy)
    eq53_result = solve_eq53(Q1, Q2)

    solutions = list(scan_result.solutions) + list(eq53_result.solutions)

    nontrivial = [s for s in scan_result.nontrivial]
    has_nontrivial_52 = bool(nontrivial)
    nonpositive = [s for s in nontrivial if s.sign in ("neutral", "negative")]
    eq53_nontrivial = [s for s in eq53_result.solutions
                       if s.kind == "nontrivial"]

    checks = {
        "kappa_geometric": kappa_geometric,
        "kappa_analytic": kappa_analytic,
        "corollary5_ii": corollary5 == preserved,
        "scan_strategy": scan_result.strategy,
        "scan_complete": scan_result.complete,
        "eq53_complete": eq53_result.complete,
    }
    consistent = (kappa_geometric == kappa_analytic) and checks["corollary5_ii"]

    # Theorem-8 style implications as live cross-checks.  Solutions imply a
    # non-minimal stack; the converse can fail (a nonzero orthogonal
    # complement need not contain any single stacked vector), as the
    # canonical scalar counterexample of the worked-example suite shows.
    checks["thm8_i"] = (not has_nontrivial_52) or (not minimal_36)
    consistent = consistent and checks["thm8_i"]
    if nonpositive:
        checks["thm8_iii"] = not preserved
        consistent = consistent and checks["thm8_iii"]
    if scan_result.complete and has_nontrivial_52 and not nonpositive:
        # all nontrivial solutions exist and are positive: the orthogonal
        # complement carries no negative vectors and preservation reduces
        # to nondegeneracy of the sampled manifold
        checks["thm8_iv"] = (inertia_L2[2] == 0) and \
            (preserved == (dim_L0 == 0))
        consistent = consistent and checks["thm8_iv"]
    if preserved:
        checks["thm8_v"] = not eq53_nontrivial
        consistent = consistent and checks["thm8_v"]
    # (ii): nontrivial eq53 solutions correspond to isotropic sampled vectors
    iso = isotropic_part(S.L)
    for s in eq53_nontrivial:
        vec = gamma_z(S.realization, s.z1).mul_vec(list(s.h1))
        member = iso.contains(vec)
        checks.setdefault("thm8_ii", True)
        checks["thm8_ii"] = bool(checks["thm8_ii"]) and member
        consistent = consistent and member

    checks["agree"] = consistent
    return Verdict(kappa=kappa_geometric, kappa1=k1, kappa2=k2,
                   preserved=preserved, minimal_36=minimal_36,
                   dim_L0=dim_L0, inertia_L2=inertia_L2,
                   structure_case=case, solutions=solutions,
                   cross_check=checks, sum_representation=S)


# --------------------------------------------------------------------------
# The limit probe (heuristic by design).
# --------------------------------------------------------------------------


@dataclass
class ProbeStep:
    index: int
    z: ExactScalar
    b_value: ExactScalar
    c_max_abs2: object  # Fraction: largest |c(w,g)|^2 over the probe set


@dataclass
class ProbeReport:
    """Trend data along a path; explicitly heuristic, never certifying."""

    steps: List[ProbeStep]
    gaps: List[int]
    classification: str
    c_trend_to_zero: bool
    heuristic: bool = True


def theorem10_probe(Q1: RationalMatrixFunction, Q2: RationalMatrixFunction,
                    path: Iterable[Tuple[ExactScalar, Sequence[ExactScalar]]],
                    steps: int,
                    probes: Optional[List[Tuple[ExactScalar, Sequence]]] = None
                    ) -> ProbeReport:
    """Evaluate the three limit expressions step by step along a path.

    Each step is computed exactly; only the trend interpretation (growth,
    decay, sign of the limit) is numeric.  Poles on the path are skipped
    and recorded as gaps.
    """
    p = Q1.size
    if probes is None:
        pts = _domain_points(Q1 + Q2, 2)
        basis = [[ONE if i == j else ZERO for i in range(p)] for j in range(p)]
        probes = [(w, g) for w in pts for g in basis]
    recorded: List[ProbeStep] = []
    gaps: List[int] = []
    for n, (z, h) in enumerate(itertools.islice(path, steps)):
        z = ExactScalar.of(z)
        if not (Q1.in_domain(z) and Q2.in_domain(z)):
            gaps.append(n)
            continue
        h = [ExactScalar.of(x) for x in h]
        b = _diag_kernel_value(Q1, z, h) + _diag_kernel_value(Q2, z, h)
        worst = None
        for (w, g) in probes:
            w = ExactScalar.of(w)
            gvec = [ExactScalar.of(x) for x in g]
            N = nevanlinna_kernel(Q1, z, w) + nevanlinna_kernel(Q2, z, w)
            v = N.mul_vec(h)
            c = sum((gvec[k].conj() * v[k] for k in range(p)), ZERO)
            a2 = c.abs2()
            worst = a2 if worst is None or a2 > worst else worst
        recorded.append(ProbeStep(index=n, z=z, b_value=b, c_max_abs2=worst))
    if not recorded:
        return ProbeReport(steps=[], gaps=gaps, classification="no data",
                           c_trend_to_zero=False)
    tail = recorded[-min(3, len(recorded)):]
    c_zero = all(s.c_max_abs2 == 0 for s in tail)
    c_trend = c_zero or all(
        tail[i + 1].c_max_abs2 < tail[i].c_max_abs2
        for i in range(len(tail) - 1))
    b_last = tail[-1].b_value
    if all(s.b_value.is_zero() for s in tail):
        cls = "neutral"
    elif b_last.sign_real() > 0:
        cls = "positive"
    elif b_last.sign_real() < 0:
        cls = "negative"
    else:
        cls = "neutral"
    if c_trend and cls == "neutral":
        cls = "isotropic-candidate"
    return ProbeReport(steps=recorded, gaps=gaps, classification=cls,
                       c_trend_to_zero=c_trend)
