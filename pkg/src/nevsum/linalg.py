"""Exact dense linear algebra over the Gaussian rationals.

Rank, kernels, solving, and Hermitian inertia, all with `ExactScalar`
entries and deterministic pivoting (leftmost column, then smallest row
index).  Kernel bases are returned in reduced column-echelon form so two
computations of the same subspace produce identical matrices.
"""

from __future__ import annotations

from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, NotHermitian, SingularMatrix
from .scalars import ONE, ZERO, ExactScalar


class ExactMatrix:
    """Immutable dense matrix of ExactScalar entries."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Sequence[Sequence], rows: Optional[int] = None,
                 cols: Optional[int] = None):
        if rows is None:
            rows = len(entries)
            cols = len(entries[0]) if rows else 0
        grid = tuple(
            tuple(ExactScalar.of(entries[i][j]) for j in range(cols))
            for i in range(rows)
        )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_e", grid)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # --- constructors ---------------------------------------------------

    @staticmethod
    def build(rows: int, cols: int, f: Callable[[int, int], ExactScalar]) -> "ExactMatrix":
        return ExactMatrix([[f(i, j) for j in range(cols)] for i in range(rows)],
                           rows, cols)

    @staticmethod
    def zero(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix.build(rows, cols, lambda i, j: ZERO)

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix.build(n, n, lambda i, j: ONE if i == j else ZERO)

    @staticmethod
    def diag(values: Sequence) -> "ExactMatrix":
        vals = [ExactScalar.of(v) for v in values]
        n = len(vals)
        return ExactMatrix.build(n, n, lambda i, j: vals[i] if i == j else ZERO)

    @staticmethod
    def column(values: Sequence) -> "ExactMatrix":
        return ExactMatrix([[ExactScalar.of(v)] for v in values], len(values), 1)

    @staticmethod
    def from_columns(columns: Sequence[Sequence], dim: Optional[int] = None) -> "ExactMatrix":
        """Matrix whose j-th column is columns[j]; dim used when empty."""
        if not columns:
            if dim is None:
                raise ValueError("need dim for empty column list")
            return ExactMatrix.zero(dim, 0)
        n = len(columns[0])
        return ExactMatrix.build(n, len(columns),
                                 lambda i, j: ExactScalar.of(columns[j][i]))

    # --- access ----------------------------------------------------------

    def __getitem__(self, idx: Tuple[int, int]) -> ExactScalar:
        return self._e[idx[0]][idx[1]]

    def row(self, i: int) -> List[ExactScalar]:
        return list(self._e[i])

    def col(self, j: int) -> List[ExactScalar]:
        return [self._e[i][j] for i in range(self.rows)]

    def columns(self) -> List[List[ExactScalar]]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> List[List[ExactScalar]]:
        return [list(r) for r in self._e]

    # --- algebra -----------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix.build(self.rows, self.cols,
                                 lambda i, j: self._e[i][j] + other._e[i][j])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix.build(self.rows, self.cols,
                                 lambda i, j: self._e[i][j] - other._e[i][j])

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix.build(self.rows, self.cols, lambda i, j: -self._e[i][j])

    def scale(self, s) -> "ExactMatrix":
        s = ExactScalar.of(s)
        return ExactMatrix.build(self.rows, self.cols, lambda i, j: s * self._e[i][j])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        def entry(i, j):
            acc = ZERO
            for k in range(self.cols):
                a = self._e[i][k]
                if a.is_zero():
                    continue
                acc = acc + a * other._e[k][j]
            return acc
        return ExactMatrix.build(self.rows, other.cols, entry)

    def mul_vec(self, v: Sequence[ExactScalar]) -> List[ExactScalar]:
        if len(v) != self.cols:
            raise DimensionMismatch("matrix-vector size mismatch")
        out = []
        for i in range(self.rows):
            acc = ZERO
            for k in range(self.cols):
                a = self._e[i][k]
                if not a.is_zero():
                    acc = acc + a * ExactScalar.of(v[k])
            out.append(acc)
        return out

    def conj_transpose(self) -> "ExactMatrix":
        return ExactMatrix.build(self.cols, self.rows,
                                 lambda i, j: self._e[j][i].conj())

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.build(self.cols, self.rows, lambda i, j: self._e[j][i])

    def conj(self) -> "ExactMatrix":
        return ExactMatrix.build(self.rows, self.cols, lambda i, j: self._e[i][j].conj())

    # --- structure -----------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self._e for e in r)

    def is_hermitian(self) -> bool:
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            for j in range(i, self.cols):
                if self._e[i][j] != self._e[j][i].conj():
                    return False
        return True

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self._e[i][j] for j in col_idx] for i in row_idx],
                           len(row_idx), len(col_idx))

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return ExactMatrix.build(self.rows, self.cols + other.cols,
                                 lambda i, j: self._e[i][j] if j < self.cols
                                 else other._e[i][j - self.cols])

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack col mismatch")
        return ExactMatrix.build(self.rows + other.rows, self.cols,
                                 lambda i, j: self._e[i][j] if i < self.rows
                                 else other._e[i - self.rows][j])

    @staticmethod
    def block_diag(blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[ZERO] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b._e[i][j]
            r0 += b.rows
            c0 += b.cols
        return ExactMatrix(out, rows, cols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in row) for row in self._e)
        return f"ExactMatrix[{body}]"

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")


# --------------------------------------------------------------------------
# Elimination-based operations.
# --------------------------------------------------------------------------


def _rref(mat: List[List[ExactScalar]], ncols: int) -> Tuple[List[List[ExactScalar]], List[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list).

    Pivot selection is deterministic: scan columns left to right, take the
    first row (smallest index) with a nonzero entry.
    """
    nrows = len(mat)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not mat[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][c].inv()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(nrows):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat, pivots


def rank(M: ExactMatrix) -> int:
    """Exact rank via fraction-free forward elimination (Bareiss).

    Pivots: leftmost column first, then smallest row index with a nonzero
    entry, as required for reproducibility.
    """
    m = M.tolist()
    nrows, ncols = M.rows, M.cols
    r = 0
    prev = ONE
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            fi = m[i][c]
            for j in range(c, ncols):
                m[i][j] = (piv * m[i][j] - fi * m[r][j]) / prev
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


def rref(M: ExactMatrix) -> Tuple[ExactMatrix, List[int]]:
    mat, pivots = _rref(M.tolist(), M.cols)
    return ExactMatrix(mat, M.rows, M.cols), pivots


def kernel_basis(M: ExactMatrix) -> ExactMatrix:
    """Exact null-space basis, canonicalized to reduced column-echelon form.

    Returns a matrix whose columns span ker(M); dimension cols - rank(M).
    """
    mat, pivots = _rref(M.tolist(), M.cols)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * M.cols
        v[fc] = ONE
        for r_i, pc in enumerate(pivots):
            v[pc] = -mat[r_i][fc]
        basis.append(v)
    if not basis:
        return ExactMatrix.zero(M.cols, 0)
    return column_echelon(ExactMatrix.from_columns(basis, M.cols))


def column_echelon(B: ExactMatrix) -> ExactMatrix:
    """Canonical reduced column-echelon basis of the column span of B.

    Two matrices have equal column spans iff their canonical forms are
    identical, which is how subspace equality is decided everywhere.
    """
    mat, pivots = _rref(B.transpose().tolist(), B.rows)
    rows = [mat[i] for i in range(len(pivots))]
    if not rows:
        return ExactMatrix.zero(B.rows, 0)
    return ExactMatrix(rows, len(rows), B.rows).transpose()


def solve(M: ExactMatrix, rhs: ExactMatrix) -> ExactMatrix:
    """One exact solution X of M X = rhs; raises SingularMatrix if none."""
    if M.rows != rhs.rows:
        raise DimensionMismatch("solve: row mismatch")
    aug = M.hstack(rhs)
    mat, pivots = _rref(aug.tolist(), aug.cols)
    for c in pivots:
        if c >= M.cols:
            raise SingularMatrix("inconsistent linear system")
    sol = [[ZERO] * rhs.cols for _ in range(M.cols)]
    for r_i, pc in enumerate(pivots):
        for k in range(rhs.cols):
            sol[pc][k] = mat[r_i][M.cols + k]
    return ExactMatrix(sol, M.cols, rhs.cols)


def inverse(M: ExactMatrix) -> ExactMatrix:
    if M.rows != M.cols:
        raise DimensionMismatch("inverse of non-square matrix")
    return solve(M, ExactMatrix.identity(M.rows))


def det(M: ExactMatrix) -> ExactScalar:
    """Exact determinant by fraction-free elimination."""
    if M.rows != M.cols:
        raise DimensionMismatch("determinant of non-square matrix")
    n = M.rows
    if n == 0:
        return ONE
    m = M.tolist()
    prev = ONE
    sign = 1
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            return ZERO
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            fi = m[i][c]
            for j in range(c, n):
                m[i][j] = (piv * m[i][j] - fi * m[c][j]) / prev
        prev = piv
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


# --------------------------------------------------------------------------
# Hermitian inertia.
# --------------------------------------------------------------------------


def congruence_diagonalize(H: ExactMatrix) -> Tuple[ExactMatrix, ExactMatrix]:
    """Return (P, D) with P invertible and P* H P = D exactly diagonal.

    H must be Hermitian.  Works by recursive congruence: a nonzero diagonal
    entry is used as a pivot; if the diagonal is all zero but H is not, a
    hyperbolic substitution x = u + v, y = u - v (or its i-twisted variant
    when the coupling entry is purely imaginary) exposes nonzero pivots.
    """
    if not H.is_hermitian():
        raise NotHermitian("congruence_diagonalize needs a Hermitian matrix")
    n = H.rows
    work = H.tolist()
    P = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]

    def apply_col_op(j_target, j_src, coef):
        # col_t += coef * col_s on work (and P), then row_t += conj(coef) * row_s
        for i in range(n):
            work[i][j_target] = work[i][j_target] + coef * work[i][j_src]
        for i in range(n):
            P[i][j_target] = P[i][j_target] + coef * P[i][j_src]
        cc = coef.conj()
        for j in range(n):
            work[j_target][j] = work[j_target][j] + cc * work[j_src][j]

    def swap_cols(a, b):
        for i in range(n):
            work[i][a], work[i][b] = work[i][b], work[i][a]
            P[i][a], P[i][b] = P[i][b], P[i][a]
        work[a], work[b] = work[b], work[a]

    k = 0
    while k < n:
        # find a nonzero diagonal entry at position >= k
        pivot = None
        for i in range(k, n):
            if not work[i][i].is_zero():
                pivot = i
                break
        if pivot is None:
            # all-zero diagonal in the trailing block: find coupling entry
            pair = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if not work[i][j].is_zero():
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break  # trailing block is zero; remaining pivots are 0
            i, j = pair
            t = ONE if work[i][j].re != 0 else ExactScalar(0, 1)
            # col_i += t * col_j makes the (i,i) entry 2*Re(t*H[i][j]) != 0
            apply_col_op(i, j, t)
            continue
        if pivot != k:
            swap_cols(k, pivot)
        d = work[k][k]
        for j in range(k + 1, n):
            c = work[k][j]
            if not c.is_zero():
                apply_col_op(j, k, -(c / d))
        k += 1

    return ExactMatrix(P, n, n), ExactMatrix(work, n, n)


def hermitian_signature(H: ExactMatrix) -> Tuple[int, int, int]:
    """Exact inertia (n_plus, n_zero, n_minus) of a Hermitian matrix."""
    _, D = congruence_diagonalize(H)
    n_plus = n_zero = n_minus = 0
    for i in range(H.rows):
        d = D[i, i]
        if not d.is_real():
            raise NotHermitian("non-real diagonal after congruence")
        s = d.sign_real()
        if s > 0:
            n_plus += 1
        elif s < 0:
            n_minus += 1
        else:
            n_zero += 1
    return (n_plus, n_zero, n_minus)
