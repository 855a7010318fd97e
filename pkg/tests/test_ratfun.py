import random

import pytest

from nevsum.errors import (PoleHit, SymmetryViolation,
                           UnsupportedPolynomialGrowth)
from nevsum.linalg import ExactMatrix, hermitian_signature
from nevsum.polys import Poly, RatFunc
from nevsum.ratfun import (PartialFractionForm, RationalMatrixFunction,
                           SamplePlan, gram_matrix, nevanlinna_kernel,
                           negative_squares_lower_bound, partial_fractions,
                           ratfunc_from_coeffs, upper_lattice)
from nevsum.scalars import ONE, ExactScalar, I, sc


def scalar_fn(num, den=(1,)):
    return RationalMatrixFunction([[ratfunc_from_coeffs(num, den)]])


# Q(z) = -1/z
MINUS_INV = scalar_fn((-1,), (0, 1))
# Q(z) = 1/z
PLUS_INV = scalar_fn((1,), (0, 1))
# Q(z) = z
LINEAR = scalar_fn((0, 1))
# Q(z) = -2/z - 1/z^2 = (-2z - 1)/z^2
EX6_Q1 = scalar_fn((-1, -2), (0, 0, 1))
# Q(z) = 2/z
EX6_Q2 = scalar_fn((2,), (0, 1))
# Q(z) = -1/z^2
EX6_SUM = scalar_fn((-1,), (0, 0, 1))


def example2_fn(a, b):
    z = ratfunc_from_coeffs((0, 1))
    return RationalMatrixFunction([
        [z + RatFunc.of(ExactScalar.of(a)), z],
        [z, z + RatFunc.of(ExactScalar.of(b))],
    ])


def test_symmetry_check_rejects():
    with pytest.raises(SymmetryViolation):
        RationalMatrixFunction([[RatFunc.of(sc(0, 1))]])
    with pytest.raises(SymmetryViolation):
        RationalMatrixFunction([
            [RatFunc.of(1), RatFunc.of(2)],
            [RatFunc.of(3), RatFunc.of(1)],
        ])


def test_eval_minus_inv_at_i():
    assert MINUS_INV.eval(I) == ExactMatrix([[I]])


def test_eval_example2():
    Q = example2_fn(1, 0)
    assert Q.eval(ExactScalar(1)) == ExactMatrix([[2, 1], [1, 1]])


def test_eval_linear():
    assert LINEAR.eval(sc(2, 1)) == ExactMatrix([[sc(2, 1)]])


def test_eval_pole_hit():
    with pytest.raises(PoleHit):
        MINUS_INV.eval(ExactScalar(0))


def test_kernel_example2_constant_ones():
    Q = example2_fn(2, 3)
    for z, w in [(I, sc(0, 2)), (sc(1, 1), sc(-1, 2)), (I, I)]:
        assert nevanlinna_kernel(Q, z, w) == ExactMatrix([[1, 1], [1, 1]])


def test_kernel_minus_inv():
    for z, w in [(I, I), (sc(0, 2), sc(1, 1)), (sc(1, 2), sc(0, 3))]:
        z, w = ExactScalar.of(z), ExactScalar.of(w)
        expect = (z * w.conj()).inv()
        assert nevanlinna_kernel(MINUS_INV, z, w) == ExactMatrix([[expect]])


def test_kernel_diagonal_derivative_rule():
    # z = conj(w) = 1: Q = z gives Q'(1) = 1
    assert nevanlinna_kernel(LINEAR, ExactScalar(1), ExactScalar(1)) == \
        ExactMatrix([[1]])


def test_kernel_hermitian_property_randomized():
    rng = random.Random(4)
    Q = example2_fn(1, -2)
    pts = [sc(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(6)]
    for z in pts:
        for w in pts:
            N1 = nevanlinna_kernel(Q, z, w)
            N2 = nevanlinna_kernel(Q, w, z)
            assert N1.conj_transpose() == N2


def test_gram_minus_inv_rank_one_psd():
    G = gram_matrix(MINUS_INV, [(I, (1,)), (sc(0, 2), (1,))])
    assert G == ExactMatrix([[1, sc("1/2")], [sc("1/2"), sc("1/4")]])
    assert hermitian_signature(G) == (1, 1, 0)


def test_gram_plus_inv_single_point():
    G = gram_matrix(PLUS_INV, [(I, (1,))])
    assert G == ExactMatrix([[-1]])
    assert hermitian_signature(G) == (0, 0, 1)


def test_gram_linear_psd():
    pts = [(I, (1,)), (sc(1, 1), (1,)), (sc(-1, 2), (1,))]
    G = gram_matrix(LINEAR, pts)
    assert hermitian_signature(G)[2] == 0


def test_gram_monotone_negative_count():
    plan_pts = []
    prev = 0
    for z in [I, sc(0, 2), sc(1, 1), sc(-1, 1)]:
        plan_pts.append((z, (1,)))
        G = gram_matrix(EX6_SUM, plan_pts)
        cur = hermitian_signature(G)[2]
        assert cur >= prev
        prev = cur


def test_lower_bounds_scalar_table():
    assert negative_squares_lower_bound(MINUS_INV) == 0
    assert negative_squares_lower_bound(PLUS_INV) == 1
    assert negative_squares_lower_bound(EX6_SUM) == 1
    assert negative_squares_lower_bound(EX6_Q1) == 1
    assert negative_squares_lower_bound(EX6_Q2) == 1


def test_kernel_additivity_of_sums():
    rng = random.Random(9)
    Q1, Q2 = EX6_Q1, EX6_Q2
    S = Q1 + Q2
    assert S == EX6_SUM
    for _ in range(6):
        z = sc(rng.randint(-2, 2), rng.randint(1, 3))
        w = sc(rng.randint(-2, 2), rng.randint(1, 3))
        lhs = nevanlinna_kernel(S, z, w)
        rhs = nevanlinna_kernel(Q1, z, w) + nevanlinna_kernel(Q2, z, w)
        assert lhs == rhs


def test_partial_fractions_ex6_q1():
    form = partial_fractions(EX6_Q1)
    assert form.linear.is_zero() and form.const.is_zero()
    assert len(form.poles) == 1
    pole = form.poles[0]
    assert pole.alpha == ExactScalar(0)
    assert pole.order == 2
    assert pole.coefficients[0] == ExactMatrix([[-2]])
    assert pole.coefficients[1] == ExactMatrix([[-1]])


def test_partial_fractions_example2():
    form = partial_fractions(example2_fn(3, -1))
    assert form.poles == ()
    assert form.const == ExactMatrix.diag([3, -1])
    assert form.linear == ExactMatrix([[1, 1], [1, 1]])


def test_partial_fractions_pole_plus_linear():
    # Q = -1/(z-1) + z = (z^2 - z - 1)/(z - 1)
    Q = scalar_fn((-1, -1, 1), (-1, 1))
    form = partial_fractions(Q)
    assert form.linear == ExactMatrix([[1]])
    assert form.const == ExactMatrix([[0]])
    assert len(form.poles) == 1
    assert form.poles[0].alpha == ExactScalar(1)
    assert form.poles[0].coefficients[0] == ExactMatrix([[-1]])


def test_partial_fractions_conjugate_pair():
    # Q = 2z/(z^2+1) = 1/(z-i) + 1/(z+i)
    Q = scalar_fn((0, 2), (1, 0, 1))
    form = partial_fractions(Q)
    assert len(form.poles) == 2
    alphas = {str(p.alpha) for p in form.poles}
    assert alphas == {"1i", "-1i"}
    for p in form.poles:
        assert p.coefficients[0] == ExactMatrix([[1]])


def test_partial_fractions_reassembly_roundtrip():
    rng = random.Random(12)
    for _ in range(10):
        c1 = sc(rng.randint(-3, 3))
        c2 = sc(rng.randint(-3, 3))
        b1 = sc(rng.randint(-2, 2))
        num = Poly([c1, c2])
        den = Poly([ExactScalar(0), ONE]) * Poly([-ExactScalar(1), ONE])
        Q = RationalMatrixFunction([[RatFunc(num, den) +
                                     RatFunc(Poly([ExactScalar(0), b1]))]])
        form = partial_fractions(Q)
        assert form.reassemble() == Q


def test_partial_fractions_rejects_quadratic_growth():
    with pytest.raises(UnsupportedPolynomialGrowth):
        partial_fractions(scalar_fn((0, 0, 1)))  # z^2


def test_upper_lattice_prefix():
    gen = upper_lattice()
    got = [str(next(gen)) for _ in range(5)]
    assert got == ["1i", "2i", "1+1i", "-1+1i", "1+2i"]


def test_default_plan_skips_poles():
    plan = SamplePlan.default(scalar_fn((1,), (-1, 0, 0, 1)), n_points=4)
    # poles at cube roots of 1; i, 2i etc are fine but plan must avoid poles
    for z, _h in plan.symbols:
        assert scalar_fn((1,), (-1, 0, 0, 1)).in_domain(z)
