"""Rational matrix-valued functions with exact coefficients.

A `RationalMatrixFunction` is a p x p grid of exact rational functions
satisfying the reflection symmetry Q(conj z)* = Q(z), checked at
construction as an identity on coefficients.  The difference-quotient
kernel, sample Gram matrices, the negative-squares lower bound, and exact
partial fractions all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import (PoleHit, SymmetryViolation, UnsupportedFieldExtension,
                     UnsupportedPolynomialGrowth)
from .linalg import ExactMatrix, hermitian_signature
from .polys import Poly, RatFunc, poly_conj_flip, poly_gcd
from .polyroots import roots_over_gaussian_rationals
from .scalars import ONE, ZERO, ExactScalar, sc


def _ratfunc_conj_flip(r: RatFunc) -> RatFunc:
    """r#(z) := conj(r(conj z)) on the level of coefficients."""
    return RatFunc(poly_conj_flip(r.num), poly_conj_flip(r.den))


class RationalMatrixFunction:
    """Matrix function z -> Q(z) with Gaussian-rational coefficients."""

    __slots__ = ("size", "entries",)

    def __init__(self, entries: Sequence[Sequence[RatFunc]], check: bool = True):
        p = len(entries)
        grid = tuple(tuple(RatFunc.of(entries[i][j]) for j in range(p))
                     for i in range(p))
        object.__setattr__(self, "size", p)
        object.__setattr__(self, "entries", grid)
        if check:
            self._check_symmetry()

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrixFunction is immutable")

    def _check_symmetry(self):
        for i in range(self.size):
            for j in range(self.size):
                if self.entries[i][j] != _ratfunc_conj_flip(self.entries[j][i]):
                    raise SymmetryViolation(
                        f"entry ({i},{j}) breaks Q(conj z)* = Q(z)")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def scalar(r: RatFunc) -> "RationalMatrixFunction":
        return RationalMatrixFunction([[r]])

    @staticmethod
    def zero(p: int) -> "RationalMatrixFunction":
        z = RatFunc.of(0)
        return RationalMatrixFunction([[z] * p for _ in range(p)], check=False)

    @staticmethod
    def from_constant(M: ExactMatrix) -> "RationalMatrixFunction":
        return RationalMatrixFunction(
            [[RatFunc.of(M[i, j]) for j in range(M.cols)]
             for i in range(M.rows)])

    def __add__(self, other: "RationalMatrixFunction") -> "RationalMatrixFunction":
        if self.size != other.size:
            raise ValueError("size mismatch")
        return RationalMatrixFunction(
            [[self.entries[i][j] + other.entries[i][j]
              for j in range(self.size)] for i in range(self.size)],
            check=False)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrixFunction):
            return NotImplemented
        if self.size != other.size:
            return False
        return all(self.entries[i][j] == other.entries[i][j]
                   for i in range(self.size) for j in range(self.size))

    def __repr__(self):
        return f"RationalMatrixFunction(p={self.size})"

    # -- evaluation -----------------------------------------------------------

    def in_domain(self, z: ExactScalar) -> bool:
        z = ExactScalar.of(z)
        return all(not self.entries[i][j].den.eval(z).is_zero()
                   for i in range(self.size) for j in range(self.size))

    def eval(self, z: ExactScalar) -> ExactMatrix:
        z = ExactScalar.of(z)
        if not self.in_domain(z):
            raise PoleHit(f"{z} is a pole")
        return ExactMatrix([[self.entries[i][j].eval(z)
                             for j in range(self.size)]
                            for i in range(self.size)])

    def derivative(self) -> "RationalMatrixFunction":
        return RationalMatrixFunction(
            [[self.entries[i][j].derivative() for j in range(self.size)]
             for i in range(self.size)], check=False)

    def real_poles_present(self) -> bool:
        """True if any denominator has a real root (flagged domain cuts)."""
        for i in range(self.size):
            for j in range(self.size):
                den = self.entries[i][j].den
                rep = roots_over_gaussian_rationals(den)
                if any(r.is_real() for r, _ in rep.exact) or rep.isolated_real:
                    return True
        return False


def nevanlinna_kernel(Q: RationalMatrixFunction, z: ExactScalar,
                      w: ExactScalar) -> ExactMatrix:
    """Difference-quotient kernel (Q(z) - Q(w)*)/(z - conj w).

    On the diagonal z = conj(w) the quotient is replaced by the exact
    derivative Q'(z), matching the limit value.
    """
    z, w = ExactScalar.of(z), ExactScalar.of(w)
    denom = z - w.conj()
    if denom.is_zero():
        return Q.derivative().eval(z)
    Qz = Q.eval(z)
    Qw_star = Q.eval(w).conj_transpose()
    return (Qz - Qw_star).scale(denom.inv())


def gram_matrix(Q: RationalMatrixFunction,
                points: Sequence[Tuple[ExactScalar, Sequence]]) -> ExactMatrix:
    """Hermitian matrix with (i,j) entry (N_Q(z_i, z_j) h_i, h_j)."""
    n = len(points)
    kernels: Dict[Tuple[int, int], ExactMatrix] = {}
    for i in range(n):
        for j in range(n):
            kernels[(i, j)] = nevanlinna_kernel(Q, points[i][0], points[j][0])
    G = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            hi = [ExactScalar.of(x) for x in points[i][1]]
            hj = [ExactScalar.of(x) for x in points[j][1]]
            v = kernels[(i, j)].mul_vec(hi)
            G[i][j] = sum((hj[k].conj() * v[k] for k in range(len(hj))), ZERO)
    M = ExactMatrix(G, n, n)
    if not M.is_hermitian():
        raise SymmetryViolation("sample Gram not Hermitian")
    return M


def symbol_gram(Q: RationalMatrixFunction,
                symbols: Sequence[Tuple[ExactScalar, Sequence]]) -> ExactMatrix:
    """Gram J with [x, y] = y* J x for coordinates in the symbol basis.

    J is the conjugate of `gram_matrix` (same inertia), laid out so that
    the state-model code can use it directly as a (possibly degenerate)
    inner-product matrix.
    """
    return gram_matrix(Q, symbols).conj()


def upper_lattice() -> Iterator[ExactScalar]:
    """Deterministic enumeration of upper half-plane sample points.

    Starts i, 2i, 1+i, -1+i, 1+2i, then continues shell by shell
    (|re| + im, then im, then positive re first).
    """
    prefix = [sc(0, 1), sc(0, 2), sc(1, 1), sc(-1, 1), sc(1, 2)]
    for z in prefix:
        yield z
    seen = {(z.re, z.im) for z in prefix}
    shell = 2
    while True:
        batch = []
        for b in range(1, shell + 1):
            a_abs = shell - b
            cands = [(a_abs, b), (-a_abs, b)] if a_abs else [(0, b)]
            for a, bb in cands:
                if (Fraction(a), Fraction(bb)) not in seen:
                    batch.append(sc(a, bb))
                    seen.add((Fraction(a), Fraction(bb)))
        batch.sort(key=lambda s: (s.im, -s.re))
        for z in batch:
            yield z
        shell += 1


def default_h_vectors(p: int) -> List[List[ExactScalar]]:
    """Standard basis plus the all-ones and alternating-sign probes."""
    vecs = [[ONE if i == j else ZERO for i in range(p)] for j in range(p)]
    if p > 1:
        vecs.append([ONE] * p)
        vecs.append([ONE if i % 2 == 0 else -ONE for i in range(p)])
    return vecs


@dataclass(frozen=True)
class SamplePlan:
    """A finite list of (point, vector) symbols used to sample the kernel."""

    symbols: Tuple[Tuple[ExactScalar, Tuple[ExactScalar, ...]], ...]

    @staticmethod
    def default(Q: RationalMatrixFunction, n_points: int = 6,
                base_point: Optional[ExactScalar] = None) -> "SamplePlan":
        points: List[ExactScalar] = []
        if base_point is not None and Q.in_domain(base_point):
            points.append(ExactScalar.of(base_point))
        for z in upper_lattice():
            if len(points) >= n_points:
                break
            if any(z == q for q in points):
                continue
            if Q.in_domain(z):
                points.append(z)
        hs = default_h_vectors(Q.size)
        syms = tuple((z, tuple(h)) for z in points for h in hs)
        return SamplePlan(symbols=syms)

    def __len__(self):
        return len(self.symbols)


def negative_squares_lower_bound(Q: RationalMatrixFunction,
                                 plan: Optional[SamplePlan] = None) -> int:
    """Certified lower bound for the negative index from one sample Gram.

    Monotone in the plan: adding symbols never decreases the count, by
    eigenvalue interlacing for principal submatrices.
    """
    plan = plan or SamplePlan.default(Q)
    if len(plan) == 0:
        return 0
    G = gram_matrix(Q, list(plan.symbols))
    return hermitian_signature(G)[2]


# --------------------------------------------------------------------------
# Partial fractions.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PoleData:
    alpha: ExactScalar
    coefficients: Tuple[ExactMatrix, ...]  # orders 1..m for (z-alpha)^-k

    @property
    def order(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class PartialFractionForm:
    size: int
    poles: Tuple[PoleData, ...]
    const: ExactMatrix   # B0
    linear: ExactMatrix  # B1 (coefficient of z)

    def reassemble(self) -> RationalMatrixFunction:
        p = self.size
        entries = [[RatFunc(Poly([self.const[i, j], self.linear[i, j]]))
                    for j in range(p)] for i in range(p)]
        for pole in self.poles:
            base = Poly([-pole.alpha, ONE])
            for k, C in enumerate(pole.coefficients, start=1):
                denpow = base ** k
                for i in range(p):
                    for j in range(p):
                        if not C[i, j].is_zero():
                            entries[i][j] = entries[i][j] + \
                                RatFunc(Poly.constant(C[i, j]), denpow)
        return RationalMatrixFunction(
            [[e for e in row] for row in entries], check=False)


def partial_fractions(Q: RationalMatrixFunction) -> PartialFractionForm:
    """Exact pole data of Q; requires polynomial part of degree <= 1.

    Denominators must split over the Gaussian rationals (the library's
    scalar field); a non-splitting factor raises rather than approximating.
    """
    p = Q.size
    B0 = [[ZERO] * p for _ in range(p)]
    B1 = [[ZERO] * p for _ in range(p)]
    pole_coeffs: Dict[ExactScalar, Dict[int, List[List[ExactScalar]]]] = {}

    for i in range(p):
        for j in range(p):
            r = Q.entries[i][j]
            quo, rem = divmod(r.num, r.den)
            if quo.degree() > 1:
                raise UnsupportedPolynomialGrowth(
                    f"entry ({i},{j}) has polynomial part degree {quo.degree()}")
            B0[i][j] = quo[0]
            B1[i][j] = quo[1]
            if rem.is_zero():
                continue
            roots = roots_over_gaussian_rationals(r.den)
            if not roots.fully_split:
                raise UnsupportedFieldExtension(
                    f"denominator of entry ({i},{j}) does not split over Q(i)")
            for alpha, mult in roots.exact:
                base = Poly([-alpha, ONE])
                den_rest = r.den
                for _ in range(mult):
                    den_rest = den_rest // base
                # Taylor coefficients of g = rem/den_rest at alpha give the
                # residues: c_{m-t} = g^(t)(alpha)/t!
                g = RatFunc(rem, den_rest)
                fact = 1
                for t in range(mult):
                    if t > 0:
                        g = g.derivative()
                        fact *= t
                    val = g.eval(alpha) / ExactScalar(fact)
                    order = mult - t
                    slot = pole_coeffs.setdefault(alpha, {})
                    mat = slot.setdefault(order,
                                          [[ZERO] * p for _ in range(p)])
                    mat[i][j] = val

    poles = []
    for alpha in sorted(pole_coeffs, key=lambda a: (a.re, a.im)):
        by_order = pole_coeffs[alpha]
        m = max(by_order)
        coeffs = tuple(ExactMatrix(by_order.get(k, [[ZERO] * p for _ in range(p)]),
                                   p, p) for k in range(1, m + 1))
        poles.append(PoleData(alpha=alpha, coefficients=coeffs))

    form = PartialFractionForm(size=p, poles=tuple(poles),
                               const=ExactMatrix(B0, p, p),
                               linear=ExactMatrix(B1, p, p))
    if form.reassemble() != Q:
        raise SymmetryViolation("partial fraction reassembly mismatch")
    _check_pf_symmetry(form)
    return form


def _check_pf_symmetry(form: PartialFractionForm):
    """Consistency of pole data with the reflection symmetry of Q."""
    if form.const != form.const.conj_transpose():
        raise SymmetryViolation("constant term not Hermitian")
    if form.linear != form.linear.conj_transpose():
        raise SymmetryViolation("linear term not Hermitian")
    by_alpha = {pole.alpha: pole for pole in form.poles}
    for pole in form.poles:
        conj_alpha = pole.alpha.conj()
        partner = by_alpha.get(conj_alpha)
        if partner is None:
            raise SymmetryViolation(f"pole {pole.alpha} lacks conjugate partner")
        if partner.order != pole.order:
            raise SymmetryViolation("conjugate pole orders differ")
        for k in range(pole.order):
            if partner.coefficients[k] != pole.coefficients[k].conj_transpose():
                raise SymmetryViolation(
                    f"coefficients at {pole.alpha} break the symmetry")


# --------------------------------------------------------------------------
# Convenience constructors for tests and demos.
# --------------------------------------------------------------------------


def ratfunc_from_coeffs(num: Sequence, den: Sequence = (1,)) -> RatFunc:
    return RatFunc(Poly([ExactScalar.of(c) for c in num]),
                   Poly([ExactScalar.of(c) for c in den]))


def function_from_entries(rows: Sequence[Sequence[RatFunc]]) -> RationalMatrixFunction:
    return RationalMatrixFunction(rows)
