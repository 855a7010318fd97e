import random

import pytest

from conftest import random_symmetric_function, scalar_fn
from nevsum.linalg import ExactMatrix
from nevsum.polys import RatFunc
from nevsum.ratfun import (RationalMatrixFunction, nevanlinna_kernel,
                           ratfunc_from_coeffs)
from nevsum.realize import canonical_model, gamma_z, is_minimal, kappa
from nevsum.scalars import ExactScalar, I, sc
from nevsum.spaces import isotropic_part, product
from nevsum.sums import (build_sum, classify_E, eq53_kernel_at,
                         singular_directions, solve_eq52_at, solve_eq52_scan,
                         solve_eq53, theorem8_verdict, theorem10_probe)

EX6_Q1 = scalar_fn((-1, -2), (0, 0, 1))
EX6_Q2 = scalar_fn((2,), (0, 1))


def example2_fn(a, b):
    z = ratfunc_from_coeffs((0, 1))
    return RationalMatrixFunction([
        [z + RatFunc.of(ExactScalar.of(a)), z],
        [z, z + RatFunc.of(ExactScalar.of(b))],
    ])


def example4_q1():
    e = ratfunc_from_coeffs((-1,), (0, 1))
    zero = RatFunc.of(0)
    return RationalMatrixFunction([[e, zero], [zero, e]])


def example4_q2():
    a = ratfunc_from_coeffs((-1,), (0, 0, 1))
    b = ratfunc_from_coeffs((-1,), (0, 1))
    zero = RatFunc.of(0)
    return RationalMatrixFunction([[a, b], [b, zero]])


# --------------------------------------------------------------------------
# build_sum
# --------------------------------------------------------------------------


def test_build_sum_example6_geometry():
    S = build_sum(canonical_model(EX6_Q1), canonical_model(EX6_Q2))
    assert S.tilde_space.dim == 3
    assert S.L.dim == 2
    assert S.decomposition.L0.dim == 0
    assert S.decomposition.L2.dim == 1
    assert S.decomposition.L2.inertia() == (0, 0, 1)  # negative definite
    lhs, rhs = S.inertia_bookkeeping
    assert lhs == rhs == 2


def test_build_sum_example4_geometry():
    S = build_sum(canonical_model(example4_q1()), canonical_model(example4_q2()))
    assert S.decomposition.L0.dim == 0
    assert S.decomposition.L2.inertia()[2] == 0
    assert S.decomposition.L2.inertia()[0] == S.decomposition.L2.dim == 1
    lhs, rhs = S.inertia_bookkeeping
    assert lhs == rhs == 1


def test_build_sum_trivial_second_summand():
    R1 = canonical_model(EX6_Q1)
    R2 = canonical_model(scalar_fn((0,)))  # the zero function
    assert R2.space.dim == 0
    S = build_sum(R1, R2)
    assert S.tilde_space.dim == R1.space.dim
    assert is_minimal(S.realization) == is_minimal(R1)


def test_build_sum_rebases_mismatched_base_points():
    R1 = canonical_model(EX6_Q1, z0=sc(0, 1))
    R2 = canonical_model(EX6_Q2, z0=sc(0, 2))
    S = build_sum(R1, R2)
    assert S.realization.z0 == sc(0, 1)
    assert kappa(S.realization) == 1


# --------------------------------------------------------------------------
# singular directions and the one-variable equation
# --------------------------------------------------------------------------


def test_singular_directions_example2():
    for a, b in [(1, 0), (0, 1), (2, 3), (-1, 5), ("1/2", "1/3")]:
        dirs = singular_directions(example2_fn(a, b))
        assert len(dirs) == 1
        h = dirs[0]
        assert h[0] == ExactScalar(1) and h[1] == ExactScalar(-1)


def test_singular_directions_scalar_and_diag():
    assert singular_directions(scalar_fn((-1,), (0, 1))) == []
    z = ratfunc_from_coeffs((-1,), (0, 1))
    zero = RatFunc.of(0)
    Q = RationalMatrixFunction([[z, zero], [zero, zero]])
    dirs = singular_directions(Q)
    assert len(dirs) == 1
    assert dirs[0][0].is_zero() and dirs[0][1] == ExactScalar(1)


def test_singular_directions_match_model_gamma_kernel():
    rng = random.Random(5)
    for _ in range(8):
        Q = random_symmetric_function(rng, rng.choice([1, 2]), max_poles=1)
        dirs = singular_directions(Q)
        R = canonical_model(Q)
        from nevsum.linalg import kernel_basis
        gk = kernel_basis(R.Gamma)
        assert gk.cols == len(dirs)
        for h in dirs:
            assert all(x.is_zero() for x in R.Gamma.mul_vec(list(h)))


def test_eq53_example6_empty():
    res = solve_eq53(EX6_Q1, EX6_Q2)
    assert res.complete
    assert [s for s in res.solutions if s.kind != "trivial"] == []


def test_eq53_annihilating_pair():
    res = solve_eq53(scalar_fn((1,), (0, 1)), scalar_fn((-1,), (0, 1)))
    assert res.complete
    assert len(res.solutions) == 1
    s = res.solutions[0]
    assert s.kind == "nontrivial"      # neither side kills its own kernel
    assert s.kills_sum_symbol          # but the sum annihilates it
    assert s.sign == "neutral"


def test_eq53_example2_with_zero():
    Q1 = example2_fn(1, 0)
    Q2 = RationalMatrixFunction.zero(2)
    res = solve_eq53(Q1, Q2)
    kinds = [(s.kind, s.kills_sum_symbol) for s in res.solutions]
    assert ("singular", True) in kinds
    sol = res.solutions[0]
    assert sol.h1[0] == ExactScalar(1) and sol.h1[1] == ExactScalar(-1)


def test_eq53_kernel_at_matches_singulars():
    Q = example2_fn(3, -1)
    ker = eq53_kernel_at(Q, sc(0, 1))
    assert len(ker) == 1
    assert ker[0][0] == ExactScalar(1) and ker[0][1] == ExactScalar(-1)


# --------------------------------------------------------------------------
# two-point equation
# --------------------------------------------------------------------------


def test_eq52_at_example4_family():
    rng = random.Random(3)
    Q1, Q2 = example4_q1(), example4_q2()
    pairs = [(sc(0, 1), sc(0, 2)), (sc(1, 1), sc(0, 1)), (sc(-1, 1), sc(2, 1))]
    pairs += [(sc(rng.randint(-2, 2), rng.randint(1, 3)),
               sc(rng.randint(-2, 2), rng.randint(1, 3))) for _ in range(7)]
    for z1, z2 in pairs:
        sols = solve_eq52_at(Q1, Q2, z1, z2)
        assert len(sols) == 1
        s = sols[0]
        # family (h, 0; 0, -(z2/z1) h) up to scaling
        h = s.h1[0]
        assert not h.is_zero()
        assert s.h1[1].is_zero() and s.h2[0].is_zero()
        assert s.h2[1] == -(z2 / z1) * h
        assert s.kind == "nontrivial"
        assert s.sign == "positive"
        # E = |h|^2 / |z1|^2 exactly
        assert s.E_value == ExactScalar(h.abs2() / z1.abs2())


def test_eq52_at_example6_empty():
    for z1, z2 in [(I, I), (sc(0, 2), sc(1, 1)), (sc(1, 1), sc(0, 3))]:
        assert solve_eq52_at(EX6_Q1, EX6_Q2, z1, z2) == []


def test_eq52_at_generic_self_pair_empty():
    Q = scalar_fn((-1, -2), (0, 0, 1))
    sols = solve_eq52_at(Q, Q, sc(0, 1), sc(0, 2))
    assert sols == []


def test_eq52_algebraic_example6_provably_empty():
    res = solve_eq52_scan(EX6_Q1, EX6_Q2, strategy="algebraic")
    assert res.complete
    assert res.nontrivial == []


def test_eq52_algebraic_everywhere_family():
    res = solve_eq52_scan(scalar_fn((-1,), (0, 1)), scalar_fn((-1,), (0, 1)),
                          strategy="algebraic")
    assert res.complete
    assert res.nontrivial
    assert all(s.sign == "positive" for s in res.nontrivial)


def test_eq52_algebraic_disjoint_poles_provably_empty():
    # Q1 = -1/z, Q2 = -1/(z-1): the cleared kernels expand over independent
    # pole bases in the running variable, so only the trivial pair cancels
    Q1 = scalar_fn((-1,), (0, 1))
    Q2 = scalar_fn((-1,), (-1, 1))
    res = solve_eq52_scan(Q1, Q2, strategy="algebraic")
    assert res.complete
    assert res.nontrivial == []


def test_eq52_algebraic_diagonal_curve():
    # same two-pole function on both sides: the direction map repeats, so
    # the solution set contains the diagonal z2 = z1 as a curve component
    Q = scalar_fn((1, -2), (0, -1, 1))  # -1/z - 1/(z-1)
    res = solve_eq52_scan(Q, Q, strategy="algebraic")
    assert res.complete
    assert res.nontrivial
    assert any(s.z1 == s.z2 for s in res.nontrivial)
    for s in res.nontrivial:
        assert s.sign == "positive"


def test_eq52_grid_is_sound():
    res = solve_eq52_scan(example4_q1(), example4_q2(), strategy="grid",
                          grid_points=3)
    assert not res.complete
    assert res.nontrivial
    assert all(s.sign == "positive" for s in res.nontrivial)


def test_classify_E_negative_case():
    # evaluating the self-product on the datum (i, .; h, 0) for Q1 = 1/z
    # gives (N_Q1(i,i) h, h) = -|h|^2 < 0
    from nevsum.sums import CriterionSolution
    Q1 = scalar_fn((1,), (0, 1))
    Q2 = RationalMatrixFunction.zero(1)
    datum = CriterionSolution(z1=sc(0, 1), z2=sc(0, 2),
                              h1=(ExactScalar(3),), h2=(ExactScalar(0),),
                              kind="nontrivial")
    out = classify_E(Q1, Q2, datum)
    assert out.E_value == ExactScalar(-9)
    assert out.sign == "negative"


def test_eq52_at_zero_summand_only_singular():
    # with a vanishing second summand, the first kernel forces h1 = 0 and
    # every h2 is a singular direction of the zero function
    Q1 = scalar_fn((1,), (0, 1))
    Q2 = RationalMatrixFunction.zero(1)
    sols = solve_eq52_at(Q1, Q2, sc(0, 1), sc(0, 2))
    assert len(sols) == 1
    assert sols[0].kind == "singular"
    assert all(x.is_zero() for x in sols[0].h1)


# --------------------------------------------------------------------------
# the full verdict
# --------------------------------------------------------------------------


def test_verdict_example6():
    V = theorem8_verdict(EX6_Q1, EX6_Q2)
    assert (V.kappa1, V.kappa2, V.kappa) == (1, 1, 1)
    assert not V.preserved
    assert not V.minimal_36
    assert V.structure_case == "b"
    assert V.dim_L0 == 0
    assert V.inertia_L2 == (0, 0, 1)
    assert V.agree


def test_verdict_example4():
    V = theorem8_verdict(example4_q1(), example4_q2())
    assert (V.kappa1, V.kappa2, V.kappa) == (0, 1, 1)
    assert V.preserved
    assert not V.minimal_36
    assert V.structure_case == "c"
    assert V.inertia_L2 == (1, 0, 0)
    assert V.agree


def test_verdict_annihilating_pair():
    V = theorem8_verdict(scalar_fn((1,), (0, 1)), scalar_fn((-1,), (0, 1)))
    assert (V.kappa1, V.kappa2, V.kappa) == (1, 0, 0)
    assert not V.preserved
    assert V.agree
    assert V.dim_L0 == 1  # genuinely degenerate sampled manifold


def test_verdict_double_positive():
    Q = scalar_fn((-1,), (0, 1))
    V = theorem8_verdict(Q, Q)
    assert (V.kappa1, V.kappa2, V.kappa) == (0, 0, 0)
    assert V.preserved
    assert not V.minimal_36
    assert V.structure_case == "c"
    assert V.agree


def test_verdict_zero_second_summand():
    V = theorem8_verdict(EX6_Q1, scalar_fn((0,)))
    assert V.preserved and V.kappa == V.kappa1 == 1
    assert V.minimal_36
    assert V.structure_case == "a"
    assert V.agree


def test_kappa_subadditive_randomized():
    rng = random.Random(10)
    for _ in range(12):
        p = rng.choice([1, 2])
        Q1 = random_symmetric_function(rng, p, max_poles=1)
        Q2 = random_symmetric_function(rng, p, max_poles=1)
        k1 = kappa(canonical_model(Q1))
        k2 = kappa(canonical_model(Q2))
        ks = kappa(canonical_model(Q1 + Q2))
        assert ks <= k1 + k2


def test_inertia_identity_randomized():
    rng = random.Random(11)
    for _ in range(10):
        p = rng.choice([1, 2])
        Q1 = random_symmetric_function(rng, p, max_poles=2)
        Q2 = random_symmetric_function(rng, p, max_poles=2)
        R1, R2 = canonical_model(Q1), canonical_model(Q2)
        S = build_sum(R1, R2)
        lhs, rhs = S.inertia_bookkeeping
        assert lhs == rhs


def test_thm8_ii_membership_for_eq53_solutions():
    # nontrivial one-variable solutions sit in the isotropic part of L
    Q1 = scalar_fn((1,), (0, 1))
    Q2 = scalar_fn((-1,), (0, 1))
    S = build_sum(canonical_model(Q1), canonical_model(Q2))
    iso = isotropic_part(S.L)
    assert iso.dim == 1
    res = solve_eq53(Q1, Q2)
    for s in res.solutions:
        if s.kind == "nontrivial":
            vec = gamma_z(S.realization, s.z1).mul_vec(list(s.h1))
            assert iso.contains(vec)


def test_corollary5_i_minimality_iff_L_fills():
    cases = [(EX6_Q1, EX6_Q2), (example4_q1(), example4_q2()),
             (EX6_Q1, scalar_fn((0,)))]
    for Q1, Q2 in cases:
        S = build_sum(canonical_model(Q1), canonical_model(Q2))
        minimal = is_minimal(S.realization)
        fills = (S.decomposition.L1 == S.L and S.L.dim == S.tilde_space.dim)
        assert minimal == fills


def test_theorem8_i_biconditional_scalar_randomized():
    # one-sided always; verified two-sided whenever the algebraic scan is
    # complete AND finds solutions
    rng = random.Random(12)
    for _ in range(8):
        Q1 = random_symmetric_function(rng, 1, max_poles=1)
        Q2 = random_symmetric_function(rng, 1, max_poles=1)
        S = build_sum(canonical_model(Q1), canonical_model(Q2))
        minimal = is_minimal(S.realization)
        res = solve_eq52_scan(Q1, Q2, strategy="algebraic")
        if res.nontrivial:
            assert not minimal
        if res.complete and minimal:
            assert not res.nontrivial


# --------------------------------------------------------------------------
# the limit probe
# --------------------------------------------------------------------------


def test_probe_stationary_solution_is_isotropic():
    Q1 = scalar_fn((1,), (0, 1))
    Q2 = scalar_fn((-1,), (0, 1))
    path = [(sc(0, 1), (1,))] * 5
    rep = theorem10_probe(Q1, Q2, path, steps=5)
    assert rep.heuristic
    assert rep.classification == "isotropic-candidate"
    assert rep.c_trend_to_zero
    assert all(s.b_value.is_zero() for s in rep.steps)


def test_probe_skips_poles_without_error():
    path = [(sc(0, 1), (1,)), (sc(0, 0), (1,)), (sc(0, 2), (1,))]
    rep = theorem10_probe(EX6_Q1, EX6_Q2, path, steps=3)
    assert rep.gaps == [1]
    assert len(rep.steps) == 2


def test_probe_example6_inverse_path_runs_exactly():
    from fractions import Fraction
    path = [(ExactScalar(0, Fraction(1, n)), (ExactScalar(n),))
            for n in range(1, 21)]
    rep = theorem10_probe(EX6_Q1, EX6_Q2, path, steps=20)
    assert len(rep.steps) == 20
    # all values exact; b stays bounded (identically zero here), and the
    # probe must not certify an isotropic vector: this sum has none
    assert all(s.b_value.is_zero() for s in rep.steps)
    assert not rep.c_trend_to_zero
