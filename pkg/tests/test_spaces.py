import random

import pytest

from nevsum.errors import DegenerateAmbient, NotHermitian
from nevsum.linalg import ExactMatrix, hermitian_signature, rank
from nevsum.scalars import ExactScalar, sc
from nevsum.spaces import (Decomposition44, KreinSpace, Subspace,
                           decompose_44, isotropic_part, ortho_complement,
                           product)

HYPERBOLIC = KreinSpace(ExactMatrix([[0, 1], [1, 0]]))


def rand_krein(rng, n, span=2):
    while True:
        M = ExactMatrix([[sc(rng.randint(-span, span), rng.randint(-span, span))
                          for _ in range(n)] for _ in range(n)])
        H = M + M.conj_transpose()
        if hermitian_signature(H)[1] == 0:
            return KreinSpace(H)


def test_krein_requires_hermitian():
    with pytest.raises(NotHermitian):
        KreinSpace(ExactMatrix([[0, 1], [0, 0]]))


def test_krein_requires_invertible():
    with pytest.raises(DegenerateAmbient):
        KreinSpace(ExactMatrix([[1, 1], [1, 1]]))


def test_product_neutral_vector():
    assert product(HYPERBOLIC, [1, 0], [1, 0]).is_zero()


def test_product_negative_line():
    space = KreinSpace(ExactMatrix([[-2]]))
    assert product(space, [1], [1]) == sc(-2)


def test_product_euclidean_orthogonal():
    space = KreinSpace(ExactMatrix.identity(2))
    assert product(space, [1, 0], [0, 1]).is_zero()


def test_product_conjugate_symmetry():
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(1, 4)
        space = rand_krein(rng, n)
        x = [sc(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(n)]
        y = [sc(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(n)]
        assert product(space, x, y) == product(space, y, x).conj()


def test_ortho_complement_whole_space():
    S = Subspace.full(HYPERBOLIC)
    assert ortho_complement(S).dim == 0


def test_ortho_complement_neutral_line_self():
    S = Subspace.from_columns(HYPERBOLIC, [[1, 0]])
    assert ortho_complement(S) == S


def test_ortho_complement_dimension_law():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(1, 4)
        space = rand_krein(rng, n)
        k = rng.randint(0, n)
        cols = [[sc(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(n)]
                for _ in range(k)]
        S = Subspace.from_columns(space, cols)
        C = ortho_complement(S)
        assert S.dim + C.dim == n
        assert ortho_complement(C) == S  # double complement in finite dim


def test_isotropic_part_cases():
    # nondegenerate subspace: trivial isotropic part
    S = Subspace.from_columns(KreinSpace(ExactMatrix.identity(2)), [[1, 0]])
    assert isotropic_part(S).dim == 0
    # neutral line in hyperbolic plane: itself
    N = Subspace.from_columns(HYPERBOLIC, [[1, 0]])
    assert isotropic_part(N) == N


def test_isotropic_part_rank_one_gram():
    # 2-dim subspace of a 3-dim space whose Gram is [[1,1],[1,1]]
    space = KreinSpace(ExactMatrix.diag([1, 1, -1]))
    b1 = [1, 0, 0]
    b2 = [sc(1, 0), sc(1, 0), sc(1, 0)]  # [b2,b2] = 1+1-1 = 1, [b1,b2] = 1
    S = Subspace.from_columns(space, [b1, b2])
    # Gram of the raw spanning set is [[1,1],[1,1]]: rank 1, one isotropic dir
    raw = ExactMatrix.from_columns([b1, b2], 3)
    assert (raw.conj_transpose() @ space.gram @ raw) == ExactMatrix([[1, 1], [1, 1]])
    iso = isotropic_part(S)
    assert iso.dim == 1
    assert iso.contains([a - b for a, b in zip(b1, b2)])
    assert S.is_nondegenerate() is False


def test_decompose_44_nondegenerate():
    space = KreinSpace(ExactMatrix.diag([1, 1, -1]))
    L = Subspace.from_columns(space, [[1, 0, 0]])
    dec = decompose_44(space, L)
    assert dec.L0.dim == 0 and dec.F.dim == 0
    assert dec.L1 == L
    assert dec.L2 == ortho_complement(L)


def test_decompose_44_neutral_line():
    L = Subspace.from_columns(HYPERBOLIC, [[1, 0]])
    dec = decompose_44(HYPERBOLIC, L)
    assert dec.L1.dim == 0
    assert dec.L0 == L
    assert dec.F.dim == 1
    assert dec.L2.dim == 0
    # skew link: [f, l0] = 1
    f = dec.F.basis.col(0)
    l0 = dec.L0.basis.col(0)
    assert product(HYPERBOLIC, f, l0) == ExactScalar(1)
    assert product(HYPERBOLIC, f, f).is_zero()


def test_decompose_44_inertia_bookkeeping():
    rng = random.Random(23)
    for _ in range(25):
        n = rng.randint(1, 5)
        space = rand_krein(rng, n)
        k = rng.randint(0, n)
        cols = [[sc(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(n)]
                for _ in range(k)]
        L = Subspace.from_columns(space, cols)
        dec = decompose_44(space, L)
        n1 = dec.L1.inertia()
        n2 = dec.L2.inertia()
        assert n1[1] == 0 and n2[1] == 0  # nondegenerate parts
        # neg(ambient) = neg(L1) + dim L0 + neg(L2)
        assert space.neg_index == n1[2] + dec.L0.dim + n2[2]
        # parts are pairwise orthogonal except the F-L0 identity pairing
        for v in dec.L1.basis.columns():
            for w in dec.L0.basis.columns():
                assert product(space, v, w).is_zero()
            for w in dec.L2.basis.columns():
                assert product(space, v, w).is_zero()
        total = dec.L1.basis.hstack(dec.L0.basis).hstack(dec.F.basis) \
            .hstack(dec.L2.basis)
        assert rank(total) == n
