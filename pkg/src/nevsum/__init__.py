"""Exact tools for rational matrix functions with reflection symmetry:
realizations in indefinite inner product spaces, reducibility of their
representing relations, and negative-index bookkeeping for sums."""

from .scalars import ExactScalar, sc
from .linalg import ExactMatrix, hermitian_signature, kernel_basis, rank
from .spaces import KreinSpace, Subspace, decompose_44, isotropic_part, \
    ortho_complement, product
from .relations import (LinearRelation, adjoint, check_reduction,
                        component_relation, direct_orthogonal_sum,
                        eq22_check, finite_eigenvalues, is_self_adjoint,
                        is_symmetric, part, resolvent)
from .polys import Poly, RatFunc
from .ratfun import (PartialFractionForm, RationalMatrixFunction, SamplePlan,
                     gram_matrix, negative_squares_lower_bound,
                     nevanlinna_kernel, partial_fractions, ratfunc_from_coeffs)
from .realize import (GammaField, Realization, canonical_model, eval_eq2,
                      from_resolvent_form, gamma_z, is_minimal, kappa,
                      realization_from_partial_fractions, rebase, state_span,
                      symbolic_q)
from .sums import (CriterionSolution, SumRepresentation, Verdict, build_sum,
                   classify_E, singular_directions, solve_eq52_at,
                   solve_eq52_scan, solve_eq53, theorem8_verdict,
                   theorem10_probe)
from .jordanchains import (JordanChain, Prop8Model, build_prop8, chains_at,
                           chain_is_degenerate, invariant_closure,
                           prop6_decompose, prop8_separation_test)

__version__ = "0.1.0"
