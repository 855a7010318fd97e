"""Univariate polynomials and rational functions over an exact field.

`Poly` is duck-typed over its coefficient field: any type with +, -, *, /,
==, and an `is_zero()` method works.  In practice the coefficients are
either `ExactScalar` (Gaussian rationals) or `RatFunc` (rational functions
in another variable), which is what the two-variable elimination in the
criteria solver relies on.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .scalars import ONE, ZERO, ExactScalar


class Poly:
    """Dense polynomial c0 + c1 x + ... over an exact coefficient field."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("Poly needs at least one coefficient")
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- helpers ---------------------------------------------------------

    @property
    def _zero(self):
        c = self.coeffs[0]
        return c - c

    @staticmethod
    def constant(c) -> "Poly":
        return Poly([c])

    @staticmethod
    def variable() -> "Poly":
        """The monomial z over ExactScalar coefficients."""
        return Poly([ZERO, ONE])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def leading(self):
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        return self.coeffs[k] if k < len(self.coeffs) else self._zero

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] - other[k] for k in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly([self._zero])
        z = self._zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    def scale(self, s) -> "Poly":
        return Poly([c * s for c in self.coeffs])

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        z = self._zero
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Poly([z]), self
        quo = [z] * (dq + 1)
        lead = other.leading()
        for k in range(dq, -1, -1):
            top = rem[k + other.degree()] if k + other.degree() < len(rem) else z
            c = top / lead
            quo[k] = c
            if not c.is_zero():
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(quo), Poly(rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(self._one())
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _one(self):
        z = self._zero
        c = self.coeffs[0]
        if not c.is_zero():
            return c / c
        # fall back for zero polys over ExactScalar-like fields
        for cand in self.coeffs:
            if not cand.is_zero():
                return cand / cand
        if isinstance(z, ExactScalar):
            return ONE
        raise ValueError("cannot derive unit from zero polynomial")

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly([c / lead for c in self.coeffs])

    def derivative(self) -> "Poly":
        if self.degree() <= 0:
            return Poly([self._zero])
        out = []
        for k in range(1, len(self.coeffs)):
            acc = self.coeffs[k]
            term = acc + acc
            for _ in range(k - 2):
                term = term + acc
            out.append(term if k >= 2 else acc)
        return Poly(out)

    def eval(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def shift_mul(self, k: int) -> "Poly":
        """Multiply by x^k."""
        z = self._zero
        return Poly([z] * k + list(self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"({c})x^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(terms) if terms else "0"


def lagrange_basis(xs: Sequence[ExactScalar]) -> List[Poly]:
    """Normalized Lagrange basis polynomials for the given nodes."""
    basis = []
    for i, xi in enumerate(xs):
        num = Poly.constant(ONE)
        denom = ONE
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * Poly([-xj, ONE])
            denom = denom * (xi - xj)
        basis.append(num.scale(denom.inv()))
    return basis


def lagrange_interpolate(xs: Sequence[ExactScalar],
                         ys: Sequence[ExactScalar],
                         basis: Sequence[Poly] = None) -> Poly:
    """Exact interpolating polynomial through (xs[i], ys[i])."""
    if basis is None:
        basis = lagrange_basis(xs)
    total = Poly.constant(ZERO)
    for yi, b in zip(ys, basis):
        if not yi.is_zero():
            total = total + b.scale(yi)
    return total


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return a if a.is_zero() else b
    g = poly_gcd(a, b)
    return ((a * b) // g).monic()


def poly_conj_flip(p: Poly) -> Poly:
    """p#(z) := conj(p(conj(z))): conjugate the coefficients.

    Only meaningful for ExactScalar coefficients.
    """
    return Poly([c.conj() for c in p.coeffs])


def poly_from_roots(roots: Sequence[ExactScalar]) -> Poly:
    p = Poly([ONE])
    for r in roots:
        p = p * Poly([-ExactScalar.of(r), ONE])
    return p


class RatFunc:
    """Quotient num/den of two polynomials, kept reduced with monic den."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None, reduce: bool = True):
        if den is None:
            den = Poly.constant(num._one() if not num.is_zero() else ONE)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = num // g
                den = den // g
            lead = den.leading()
            num = Poly([c / lead for c in num.coeffs])
            den = Poly([c / lead for c in den.coeffs])
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def of(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc(x)
        return RatFunc(Poly.constant(ExactScalar.of(x)))

    @staticmethod
    def variable() -> "RatFunc":
        return RatFunc(Poly.variable())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def __add__(self, other):
        o = RatFunc.of(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = RatFunc.of(other)
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return RatFunc.of(other) - self

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        o = RatFunc.of(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.of(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc.of(other) / self

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval(self, z):
        dv = self.den.eval(z)
        if dv.is_zero():
            raise ZeroDivisionError("pole of rational function")
        return self.num.eval(z) / dv

    def __eq__(self, other):
        if not isinstance(other, (RatFunc, Poly, ExactScalar, int)):
            return NotImplemented
        o = RatFunc.of(other)
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree() == 0 and self.den.coeffs[0] == ONE:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


# --------------------------------------------------------------------------
# Dense matrices over an arbitrary exact field (used with RatFunc entries
# for symbolic resolvents; the field only needs +,-,*,/,is_zero).
# --------------------------------------------------------------------------


def fm_mul(A: List[List], B: List[List]):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                term = A[i][t] * B[t][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def fm_solve(A: List[List], B: List[List]):
    """Solve A X = B over a field by Gauss-Jordan; A must be square invertible."""
    n = len(A)
    m = len(B[0])
    aug = [list(A[i]) + list(B[i]) for i in range(n)]
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, n):
            if not aug[i][c].is_zero():
                pr = i
                break
        if pr is None:
            raise ZeroDivisionError("singular matrix over function field")
        aug[r], aug[pr] = aug[pr], aug[r]
        inv_piv = aug[r][c]
        aug[r] = [x / inv_piv for x in aug[r]]
        for i in range(n):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        r += 1
    return [row[n:n + m] for row in aug]


def fm_det(A: List[List]):
    n = len(A)
    if n == 0:
        raise ValueError("empty determinant")
    work = [list(row) for row in A]
    sign = 1
    acc = None
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not work[i][c].is_zero():
                pr = i
                break
        if pr is None:
            z = work[0][0] - work[0][0]
            return z
        if pr != c:
            work[c], work[pr] = work[pr], work[c]
            sign = -sign
        piv = work[c][c]
        acc = piv if acc is None else acc * piv
        for i in range(c + 1, n):
            if not work[i][c].is_zero():
                f = work[i][c] / piv
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    if sign < 0:
        acc = -acc
    return acc


def resultant(p: Poly, q: Poly) -> "object":
    """Resultant of two polynomials via the Sylvester determinant.

    Works over any exact coefficient field; returns a field element.
    """
    n, m = p.degree(), q.degree()
    if n < 0 or m < 0:
        return p._zero if n >= 0 else q._zero

    def power(c, k):
        out = c / c
        for _ in range(k):
            out = out * c
        return out

    if n == 0:
        return power(p.coeffs[0], m)
    if m == 0:
        return power(q.coeffs[0], n)
    z = p._zero
    size = n + m
    rows = []
    for i in range(m):
        row = [z] * size
        for k, c in enumerate(reversed(p.coeffs)):
            row[i + k] = c
        rows.append(row)
    for i in range(n):
        row = [z] * size
        for k, c in enumerate(reversed(q.coeffs)):
            row[i + k] = c
        rows.append(row)
    return fm_det(rows)
