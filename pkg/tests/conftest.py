"""Shared construction helpers for the test suite."""

import random

import pytest

from nevsum.linalg import ExactMatrix
from nevsum.polys import RatFunc
from nevsum.ratfun import (PartialFractionForm, PoleData,
                           RationalMatrixFunction, ratfunc_from_coeffs)
from nevsum.scalars import ExactScalar, sc


def scalar_fn(num, den=(1,)):
    return RationalMatrixFunction([[ratfunc_from_coeffs(num, den)]])


def rand_hermitian_matrix(rng, p, span=1):
    M = ExactMatrix([[sc(rng.randint(-span, span), rng.randint(-span, span))
                      for _ in range(p)] for _ in range(p)])
    return M + M.conj_transpose()


def random_symmetric_function(rng, p, max_poles=2, max_order=2,
                              allow_linear=True):
    """Random function with the reflection symmetry, built from exact pole
    data (real rational poles, Hermitian coefficient families)."""
    n_poles = rng.randint(0, max_poles)
    pole_positions = rng.sample([0, 1, -1, 2], k=n_poles)
    poles = []
    for alpha in pole_positions:
        order = rng.randint(1, max_order)
        coeffs = [rand_hermitian_matrix(rng, p) for _ in range(order)]
        if coeffs[-1].is_zero():
            coeffs[-1] = ExactMatrix.identity(p)
        poles.append(PoleData(alpha=ExactScalar(alpha),
                              coefficients=tuple(coeffs)))
    B0 = rand_hermitian_matrix(rng, p)
    if allow_linear and rng.random() < 0.3:
        B1 = rand_hermitian_matrix(rng, p)
    else:
        B1 = ExactMatrix.zero(p, p)
    form = PartialFractionForm(size=p, poles=tuple(poles), const=B0, linear=B1)
    Q = form.reassemble()
    if all(Q.entries[i][j].is_zero() for i in range(p) for j in range(p)):
        return scalar_fn((-1,), (0, 1)) if p == 1 else \
            random_symmetric_function(rng, p, max_poles, max_order, allow_linear)
    return Q
