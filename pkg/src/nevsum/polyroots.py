"""Exact root extraction over the Gaussian rationals, backed by sympy.

Factorization over QQ(i) is the one primitive bought from sympy: linear
factors give exact roots, anything of higher degree is reported as an
unresolved factor together with real-root isolation intervals so callers
can flag non-exact spectrum honestly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

import sympy

from .polys import Poly
from .scalars import ExactScalar

_X = sympy.Symbol("x")


def _to_sympy(c: ExactScalar):
    return sympy.Rational(c.re.numerator, c.re.denominator) + \
        sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)


def _from_sympy(v) -> ExactScalar:
    v = sympy.nsimplify(v, rational=False)
    re, im = v.as_real_imag()
    if not (re.is_rational and im.is_rational):
        raise ValueError(f"not a Gaussian rational: {v}")
    re = sympy.Rational(re)
    im = sympy.Rational(im)
    return ExactScalar(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def poly_to_sympy(p: Poly):
    expr = sympy.Integer(0)
    for k, c in enumerate(p.coeffs):
        if not c.is_zero():
            expr += _to_sympy(c) * _X ** k
    return sympy.Poly(expr, _X, domain="QQ_I")


@dataclass
class IsolatedRealRoot:
    """A real root of an unresolved factor, bracketed by rationals."""

    low: Fraction
    high: Fraction
    factor_degree: int


@dataclass
class RootReport:
    """Roots of a polynomial over QQ(i).

    `exact` holds Gaussian-rational roots with multiplicities; factors
    that do not split over QQ(i) land in `unresolved` (their real roots
    isolated in `isolated_real`), flagged non-exact.
    """

    exact: List[Tuple[ExactScalar, int]] = field(default_factory=list)
    unresolved: List[Tuple[Poly, int]] = field(default_factory=list)
    isolated_real: List[IsolatedRealRoot] = field(default_factory=list)

    @property
    def fully_split(self) -> bool:
        return not self.unresolved


def roots_over_gaussian_rationals(p: Poly) -> RootReport:
    """All roots of p in QQ(i), plus isolation data for what remains."""
    report = RootReport()
    if p.degree() <= 0:
        return report
    sp = poly_to_sympy(p)
    _, factors = sp.factor_list()
    for fac, mult in factors:
        if fac.degree() == 1:
            a1, a0 = fac.all_coeffs()
            root = _from_sympy(sympy.together(-sympy.sympify(a0) / sympy.sympify(a1)))
            report.exact.append((root, int(mult)))
        elif fac.degree() >= 2:
            coeffs = [_from_sympy(c) for c in reversed(fac.all_coeffs())]
            report.unresolved.append((Poly(coeffs), int(mult)))
            if all(c.is_real() for c in coeffs):
                ratpoly = sympy.Poly(fac.as_expr(), _X, domain="QQ")
                for (lo, hi), _m in ratpoly.intervals():
                    report.isolated_real.append(IsolatedRealRoot(
                        low=Fraction(int(lo.p), int(lo.q)),
                        high=Fraction(int(hi.p), int(hi.q)),
                        factor_degree=fac.degree(),
                    ))
    report.exact.sort(key=lambda t: (t[0].re, t[0].im))
    return report
