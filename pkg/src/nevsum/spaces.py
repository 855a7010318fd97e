"""Finite-dimensional Krein/Pontryagin space geometry.

A space is a pair (C^n, J) with J an invertible Hermitian Gram matrix;
the indefinite product is [x, y] = y* J x (linear in the first slot,
conjugate-linear in the second).  Subspaces are stored with canonical
reduced column-echelon bases so equality of subspaces is equality of
basis matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import DegenerateAmbient, DimensionMismatch, NotHermitian
from .linalg import (ExactMatrix, column_echelon, hermitian_signature, inverse,
                     kernel_basis, rank, solve)
from .scalars import ONE, ZERO, ExactScalar


class KreinSpace:
    """C^dim with an invertible Hermitian Gram matrix."""

    __slots__ = ("dim", "gram", "_inertia")

    def __init__(self, gram: ExactMatrix):
        if not gram.is_hermitian():
            raise NotHermitian("Gram matrix must be Hermitian")
        inertia = hermitian_signature(gram)
        if inertia[1] != 0:
            raise DegenerateAmbient("Gram matrix must be invertible")
        object.__setattr__(self, "dim", gram.rows)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "_inertia", inertia)

    def __setattr__(self, name, value):
        raise AttributeError("KreinSpace is immutable")

    @property
    def neg_index(self) -> int:
        return self._inertia[2]

    @property
    def pos_index(self) -> int:
        return self._inertia[0]

    @property
    def inertia(self) -> Tuple[int, int, int]:
        return self._inertia

    def __eq__(self, other):
        return isinstance(other, KreinSpace) and self.gram == other.gram

    def __repr__(self):
        return f"KreinSpace(dim={self.dim}, neg_index={self.neg_index})"


def product(space: KreinSpace, x: Sequence, y: Sequence) -> ExactScalar:
    """Indefinite product [x, y] = y* J x."""
    if len(x) != space.dim or len(y) != space.dim:
        raise DimensionMismatch("vector length does not match space dimension")
    jx = space.gram.mul_vec([ExactScalar.of(v) for v in x])
    acc = ZERO
    for yj, jxj in zip(y, jx):
        acc = acc + ExactScalar.of(yj).conj() * jxj
    return acc


@dataclass(frozen=True)
class Subspace:
    """Subspace of a Krein space, basis columns in canonical echelon form."""

    space: KreinSpace
    basis: ExactMatrix

    @staticmethod
    def from_columns(space: KreinSpace, columns: Sequence[Sequence]) -> "Subspace":
        B = ExactMatrix.from_columns(list(columns), space.dim)
        return Subspace(space, column_echelon(B))

    @staticmethod
    def from_matrix(space: KreinSpace, B: ExactMatrix) -> "Subspace":
        return Subspace(space, column_echelon(B))

    @staticmethod
    def zero(space: KreinSpace) -> "Subspace":
        return Subspace(space, ExactMatrix.zero(space.dim, 0))

    @staticmethod
    def full(space: KreinSpace) -> "Subspace":
        return Subspace(space, ExactMatrix.identity(space.dim))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> List[List[ExactScalar]]:
        return self.basis.columns()

    def contains(self, v: Sequence) -> bool:
        if self.dim == 0:
            return all(ExactScalar.of(x).is_zero() for x in v)
        stacked = self.basis.hstack(ExactMatrix.column(v))
        return rank(stacked) == self.dim

    def includes(self, other: "Subspace") -> bool:
        if other.dim == 0:
            return True
        stacked = self.basis.hstack(other.basis)
        return rank(stacked) == self.dim

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.basis == other.basis

    def add(self, other: "Subspace") -> "Subspace":
        return Subspace(self.space, column_echelon(self.basis.hstack(other.basis)))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.space)
        stacked = self.basis.hstack(other.basis.scale(ExactScalar(-1)))
        ker = kernel_basis(stacked)
        cols = []
        for c in ker.columns():
            cols.append(self.basis.mul_vec(c[: self.dim]))
        B = ExactMatrix.from_columns(cols, self.space.dim) if cols else \
            ExactMatrix.zero(self.space.dim, 0)
        return Subspace(self.space, column_echelon(B))

    def gram(self) -> ExactMatrix:
        """Gram matrix of the basis: entry (i,j) = [b_j, b_i]."""
        return self.basis.conj_transpose() @ self.space.gram @ self.basis

    def inertia(self) -> Tuple[int, int, int]:
        if self.dim == 0:
            return (0, 0, 0)
        return hermitian_signature(self.gram())

    def is_nondegenerate(self) -> bool:
        return self.inertia()[1] == 0

    def coords_of(self, v: Sequence) -> List[ExactScalar]:
        """Coordinates of an ambient vector with respect to the basis."""
        sol = solve(self.basis, ExactMatrix.column(v))
        return sol.col(0)

    def to_ambient(self, coords: Sequence) -> List[ExactScalar]:
        return self.basis.mul_vec([ExactScalar.of(c) for c in coords])

    def as_krein_space(self) -> KreinSpace:
        """The subspace as a Krein space in basis coordinates (must be nondegenerate)."""
        return KreinSpace(self.gram())


def annihilator_rows(B: ExactMatrix) -> ExactMatrix:
    """Matrix C with ker C = col span of B (rows span the left annihilator)."""
    return kernel_basis(B.transpose()).transpose()


def ortho_complement(S: Subspace) -> Subspace:
    """S^[perp] = {v : [v, s] = 0 for all s in S}.

    Computed as the kernel of the pairing map v -> (b_i* J v)_i; always has
    dimension dim(ambient) - dim(S) because J is invertible.
    """
    if S.dim == 0:
        return Subspace.full(S.space)
    pairing = S.basis.conj_transpose() @ S.space.gram
    return Subspace(S.space, kernel_basis(pairing))


def isotropic_part(S: Subspace) -> Subspace:
    """S cap S^[perp]: vectors of S orthogonal to all of S."""
    if S.dim == 0:
        return S
    ker = kernel_basis(S.gram())
    cols = [S.basis.mul_vec(c) for c in ker.columns()]
    B = ExactMatrix.from_columns(cols, S.space.dim) if cols else \
        ExactMatrix.zero(S.space.dim, 0)
    return Subspace(S.space, column_echelon(B))


def extend_basis(inner: ExactMatrix, outer: ExactMatrix) -> ExactMatrix:
    """Columns of `outer` completing col(inner) to col(outer), echelon order."""
    chosen: List[List[ExactScalar]] = []
    current = inner
    for j in range(outer.cols):
        cand = outer.col(j)
        test = current.hstack(ExactMatrix.column(cand))
        if rank(test) == current.cols + 1:
            chosen.append(cand)
            current = test
    return ExactMatrix.from_columns(chosen, outer.rows) if chosen else \
        ExactMatrix.zero(outer.rows, 0)


@dataclass(frozen=True)
class Decomposition44:
    """Four-part splitting of the ambient space around a closed subspace.

    ambient = L1 [+] (L0 (+) F) [+] L2 with L0 the isotropic part of Lbar,
    L1 a nondegenerate complement of L0 inside Lbar, L2 a nondegenerate
    complement of L0 inside Lbar^[perp], and F neutral, skewly linked to
    L0 by an identity pairing matrix.
    """

    L1: Subspace
    L0: Subspace
    F: Subspace
    L2: Subspace

    @property
    def inertias(self):
        return {
            "L1": self.L1.inertia(),
            "L0": (0, self.L0.dim, 0) if self.L0.dim else (0, 0, 0),
            "F": (0, self.F.dim, 0) if self.F.dim else (0, 0, 0),
            "L2": self.L2.inertia(),
        }


def decompose_44(ambient: KreinSpace, Lbar: Subspace) -> Decomposition44:
    """Split the ambient space around Lbar; all choices deterministic.

    The isotropic part L0 of Lbar is J-orthogonal to everything in Lbar
    and in Lbar^[perp], so echelon completion of its basis inside either
    automatically yields nondegenerate complements L1 and L2.  F is found
    by solving the skew-link pairing system and then made neutral by
    subtracting half of its own Gram in the L0 directions.
    """
    n = ambient.dim
    L0 = isotropic_part(Lbar)
    Lperp = ortho_complement(Lbar)

    L1 = Subspace(ambient, extend_basis(L0.basis, Lbar.basis))
    L2 = Subspace(ambient, extend_basis(L0.basis, Lperp.basis))

    d = L0.dim
    if d == 0:
        F = Subspace.zero(ambient)
        return Decomposition44(L1, L0, F, L2)

    # Solve for g_i with [g_i, l1] = 0, [g_i, l2] = 0, [g_i, l0_j] = delta_ij.
    constraints = L1.basis.hstack(L2.basis).hstack(L0.basis)
    pairing = constraints.conj_transpose() @ ambient.gram
    rhs_rows = constraints.cols
    rhs = ExactMatrix.build(
        rhs_rows, d,
        lambda i, j: ONE if i == L1.dim + L2.dim + j else ZERO)
    G = solve(pairing, rhs)  # columns g_1..g_d

    # Neutralize: f_i = g_i - (1/2) sum_j Gram[g]_ij l0_j keeps the pairing
    # with L0 and kills the mutual products.
    half = ExactScalar(1) / ExactScalar(2)
    gcols = G.columns()
    gram_g = ExactMatrix.build(
        d, d, lambda i, j: product(ambient, gcols[j], gcols[i]))
    # gram_g[i][j] = [g_j, g_i]; we need [g_i, g_j] = gram_g[j][i]
    fcols = []
    for i in range(d):
        f = list(gcols[i])
        for j in range(d):
            coeff = gram_g[j, i] * half  # [g_i, g_j] / 2
            l0j = L0.basis.col(j)
            f = [fv - coeff * lv for fv, lv in zip(f, l0j)]
        fcols.append(f)
    F = Subspace(ambient, ExactMatrix.from_columns(fcols, n))

    dec = Decomposition44(L1, L0, F, L2)
    _verify_44(ambient, Lbar, Lperp, dec)
    return dec


def _verify_44(ambient, Lbar, Lperp, dec):
    L1, L0, F, L2 = dec.L1, dec.L0, dec.F, dec.L2
    n = ambient.dim
    assert L1.add(L0) == Lbar, "Lbar != L1 [+] L0"
    assert L0.add(L2) == Lperp, "Lbar^perp != L0 [+] L2"
    total = L1.basis.hstack(L0.basis).hstack(F.basis).hstack(L2.basis)
    assert rank(total) == n, "parts do not span the ambient space"
    # F neutral and correctly paired
    for i, fi in enumerate(F.basis.columns()):
        for j, fj in enumerate(F.basis.columns()):
            assert product(ambient, fi, fj).is_zero(), "F not neutral"
        for j, lj in enumerate(L0.basis.columns()):
            expect = ONE if i == j else ZERO
            assert product(ambient, fi, lj) == expect, "skew link not identity"
        for other in (L1, L2):
            for v in other.basis.columns():
                assert product(ambient, fi, v).is_zero(), "F not orthogonal"
