"""Jordan chains of representing operators and chain-based decompositions.

Covers exact chain extraction at a rational eigenvalue, degeneracy of
chain spans, the split of a realization into positive-eigenvector /
nondegenerate-chain / remainder blocks, and the two-neutral-eigenvector
model with its separation analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (DegenerateCandidate, InvalidParams, NotAnEigenvalue,
                     PreconditionFailed, SingularMatrix)
from .linalg import (ExactMatrix, column_echelon, congruence_diagonalize,
                     hermitian_signature, inverse, kernel_basis, rank, solve)
from .realize import Realization, kappa, symbolic_q
from .relations import (LinearRelation, apply_to_subspace, finite_eigenvalues,
                        is_self_adjoint, operator_matrix, part,
                        restrict_domain)
from .scalars import ONE, ZERO, ExactScalar
from .spaces import (KreinSpace, Subspace, extend_basis, isotropic_part,
                     ortho_complement, product)


@dataclass
class JordanChain:
    """x_0 .. x_{l-1} with (A - a)x_0 = 0 and (A - a)x_k = x_{k-1}."""

    eigenvalue: ExactScalar
    vectors: List[List[ExactScalar]]
    span: Subspace
    maximal: bool

    @property
    def length(self) -> int:
        return len(self.vectors)


def _nilpotent_powers_kernels(N: ExactMatrix) -> List[Subspace]:
    """ker N, ker N^2, ... until stable (as raw basis matrices)."""
    out = []
    power = N
    prev_dim = -1
    dummy_space = KreinSpace(ExactMatrix.identity(N.rows)) if N.rows else None
    while True:
        ker = kernel_basis(power)
        if ker.cols == prev_dim:
            break
        out.append(ker)
        prev_dim = ker.cols
        power = power @ N
        if prev_dim == N.rows:
            break
    return out


def chains_at(A: LinearRelation, alpha: ExactScalar,
              space: Optional[KreinSpace] = None) -> List[JordanChain]:
    """Maximal independent Jordan chains of an operator at a rational point.

    Chains are extracted top level first with echelon-ordered cyclic
    vectors, so repeated runs return identical chains.  Maximality of each
    chain is certified by the infeasibility of one more division.
    """
    alpha = ExactScalar.of(alpha)
    if not alpha.is_real():
        raise NotAnEigenvalue("chain extraction expects a real eigenvalue")
    M = operator_matrix(A)
    space = space or A.domain_space
    n = M.rows
    N = M - ExactMatrix.identity(n).scale(alpha)
    kernels = _nilpotent_powers_kernels(N)
    if not kernels or kernels[0].cols == 0:
        raise NotAnEigenvalue(f"{alpha} is not an eigenvalue")
    lmax = len(kernels)
    chains: List[JordanChain] = []
    tops_at_level: List[List[ExactScalar]] = []  # propagated N-images
    for k in range(lmax, 0, -1):
        Vk = kernels[k - 1]
        Vk_minus = kernels[k - 2] if k >= 2 else ExactMatrix.zero(n, 0)
        blocked = Vk_minus
        if tops_at_level:
            blocked = blocked.hstack(
                ExactMatrix.from_columns(tops_at_level, n))
        new_cyclic = extend_basis(column_echelon(blocked), Vk)
        for j in range(new_cyclic.cols):
            x = new_cyclic.col(j)
            vectors = []
            cur = x
            for _ in range(k):
                vectors.append(cur)
                cur = N.mul_vec(cur)
            vectors.reverse()  # x_0 first
            span = Subspace.from_columns(space, vectors)
            chains.append(JordanChain(
                eigenvalue=alpha, vectors=vectors, span=span,
                maximal=_is_maximal(N, x)))
        next_tops = [N.mul_vec(t) for t in tops_at_level]
        next_tops += [N.mul_vec(new_cyclic.col(j))
                      for j in range(new_cyclic.cols)]
        tops_at_level = [t for t in next_tops
                         if not all(c.is_zero() for c in t)]
    chains.sort(key=lambda c: -c.length)
    return chains


def _is_maximal(N: ExactMatrix, top: List[ExactScalar]) -> bool:
    try:
        solve(N, ExactMatrix.column(top))
        return False
    except SingularMatrix:
        return True


def chain_is_degenerate(chain: JordanChain, space: KreinSpace) -> bool:
    """True iff the Gram of the chain span is singular."""
    sub = Subspace.from_columns(space, chain.vectors)
    return not sub.is_nondegenerate()


# --------------------------------------------------------------------------
# Realization decomposition along chains.
# --------------------------------------------------------------------------


@dataclass
class ChainDecomposition:
    blocks: List[Realization]        # K0, K1..Kr, remainder (nonempty only)
    labels: List[str]
    r: int                           # number of nondegenerate chain blocks
    remainder_dim: int
    other_eigenvalues: List[ExactScalar]


def prop6_decompose(R: Realization, alpha: ExactScalar) -> ChainDecomposition:
    """Split a realization at a real eigenvalue of its operator.

    Blocks: a maximal positive-definite piece of the eigenspace, then
    spans of maximal nondegenerate Jordan chains extracted one at a time
    inside successive orthogonal complements, then the remainder, which
    absorbs every degenerate chain.  Each block yields a sub-realization;
    the represented functions add up to the original identically and the
    negative indices add up exactly.
    """
    alpha = ExactScalar.of(alpha)
    M = operator_matrix(R.A)
    space = R.space
    n = space.dim
    N = M - ExactMatrix.identity(n).scale(alpha)
    eig = kernel_basis(N)
    if eig.cols == 0:
        raise NotAnEigenvalue(f"{alpha} is not an eigenvalue")

    eig_report = finite_eigenvalues(R.A)
    others = [a for a, _ in eig_report.pairs if a != alpha]

    blocks_sub: List[Subspace] = []
    labels: List[str] = []

    # K0: maximal positive-definite subspace of the eigenspace
    V = Subspace.from_matrix(space, eig)
    GV = V.gram()
    P, D = congruence_diagonalize(GV)
    pos_cols = [k for k in range(D.rows) if D[k, k].is_real() and
                D[k, k].sign_real() > 0]
    if pos_cols:
        cols = []
        for k in pos_cols:
            cols.append(V.basis.mul_vec(P.col(k)))
        K0 = Subspace.from_columns(space, cols)
        if not K0.is_nondegenerate():
            raise DegenerateCandidate("positive eigenvector block degenerate")
        blocks_sub.append(K0)
        labels.append("K0")

    # iterate nondegenerate maximal chains in shrinking complements
    work = _complement_of_all(space, blocks_sub)
    r = 0
    while work.dim > 0:
        if not work.is_nondegenerate():
            raise DegenerateCandidate("working complement degenerate")
        sub_space = work.as_krein_space()
        Mw = _compress_operator(M, work)
        rel_w = LinearRelation.from_matrix(sub_space, Mw)
        try:
            chains = chains_at(rel_w, alpha, sub_space)
        except NotAnEigenvalue:
            break
        chosen = None
        for c in chains:
            if not chain_is_degenerate(c, sub_space):
                chosen = c
                break
        if chosen is None:
            break
        cols = [work.to_ambient(v) for v in chosen.vectors]
        Ki = Subspace.from_columns(space, cols)
        blocks_sub.append(Ki)
        labels.append(f"K{r + 1}")
        r += 1
        work = _complement_of_all(space, blocks_sub)

    remainder_dim = work.dim
    if work.dim > 0:
        blocks_sub.append(work)
        labels.append("remainder")

    sub_reals = _sub_realizations(R, blocks_sub, M)
    _verify_prop6(R, blocks_sub, sub_reals, M)
    return ChainDecomposition(blocks=sub_reals, labels=labels, r=r,
                              remainder_dim=remainder_dim,
                              other_eigenvalues=others)


def _complement_of_all(space: KreinSpace, blocks: List[Subspace]) -> Subspace:
    if not blocks:
        return Subspace.full(space)
    total = blocks[0]
    for b in blocks[1:]:
        total = total.add(b)
    return ortho_complement(total)


def _compress_operator(M: ExactMatrix, sub: Subspace) -> ExactMatrix:
    """Coordinates of the restriction of M to an invariant subspace."""
    cols = []
    for c in sub.basis.columns():
        image = M.mul_vec(c)
        cols.append(sub.coords_of(image))
    return ExactMatrix.from_columns(cols, sub.dim)


def _sub_realizations(R: Realization, blocks: List[Subspace],
                      M: ExactMatrix) -> List[Realization]:
    n_blocks = len(blocks)
    herm = (R.const_term + R.const_term.conj_transpose()) \
        .scale(ExactScalar("1/2"))
    share = herm.scale(ExactScalar(1) / ExactScalar(n_blocks))
    out = []
    for sub in blocks:
        sub_space = sub.as_krein_space()
        Msub = _compress_operator(M, sub)
        rel = LinearRelation.from_matrix(sub_space, Msub)
        gamma_cols = [sub.coords_of(_project_onto(R.space, sub, R.Gamma.col(j)))
                      for j in range(R.Gamma.cols)]
        gamma = ExactMatrix.from_columns(gamma_cols, sub.dim)
        gp_gamma = gamma.conj_transpose() @ sub_space.gram @ gamma
        skew = gp_gamma.scale((R.z0.conj() - R.z0) * ExactScalar("1/2"))
        const = share + skew
        out.append(Realization(sub_space, rel, gamma, R.z0, const))
    return out


def _project_onto(space: KreinSpace, sub: Subspace,
                  v: List[ExactScalar]) -> List[ExactScalar]:
    B = sub.basis
    G = B.conj_transpose() @ space.gram @ B
    rhs = B.conj_transpose() @ space.gram @ ExactMatrix.column(v)
    coeff = solve(G, rhs)
    return B.mul_vec(coeff.col(0))


def _verify_prop6(R, blocks, sub_reals, M):
    space = R.space
    # pairwise orthogonal, invariant, nondegenerate
    for i, bi in enumerate(blocks):
        assert bi.is_nondegenerate(), "block degenerate"
        for c in bi.basis.columns():
            img = M.mul_vec(c)
            assert bi.contains(img), "block not invariant"
        for j in range(i + 1, len(blocks)):
            for x in bi.basis.columns():
                for y in blocks[j].basis.columns():
                    assert product(space, x, y).is_zero(), "blocks not orthogonal"
    total_dim = sum(b.dim for b in blocks)
    assert total_dim == space.dim, "blocks do not fill the space"
    # function identity and index additivity
    total = symbolic_q(sub_reals[0])
    for s in sub_reals[1:]:
        total = total + symbolic_q(s)
    assert total == symbolic_q(R), "sub-realizations do not sum to Q"
    assert sum(kappa(s) for s in sub_reals) == kappa(R), "kappa not additive"


# --------------------------------------------------------------------------
# The two-neutral-eigenvector model.
# --------------------------------------------------------------------------


@dataclass
class Prop8Model:
    hilbert_dim: int
    A11: ExactMatrix
    a1: List[ExactScalar]
    a2: List[ExactScalar]
    alpha1: ExactScalar
    alpha2: ExactScalar
    space: KreinSpace
    operator: ExactMatrix
    relation: LinearRelation
    x0: Tuple[List[ExactScalar], List[ExactScalar]]
    f: Tuple[List[ExactScalar], List[ExactScalar]]


def build_prop8(n: int, A11: ExactMatrix, a1: Sequence, a2: Sequence,
                alpha1, alpha2) -> Prop8Model:
    """Assemble the two-neutral-eigenvector model and verify its clauses.

    The state space is H [+] (span{x0_1, x0_2} + span{f_1, f_2}) with the
    hyperbolic pairing between the neutral blocks; the operator couples H
    to the f-directions through the two vectors a1, a2.
    """
    a1 = [ExactScalar.of(x) for x in a1]
    a2 = [ExactScalar.of(x) for x in a2]
    alpha1, alpha2 = ExactScalar.of(alpha1), ExactScalar.of(alpha2)
    if A11.rows != n or A11.cols != n:
        raise InvalidParams("A11 must be n x n")
    if not A11.is_hermitian():
        raise InvalidParams("A11 must be Hermitian")
    if alpha1.is_zero() or alpha2.is_zero() or \
            not (alpha1.is_real() and alpha2.is_real()):
        raise InvalidParams("alpha parameters must be nonzero reals")
    pair = ExactMatrix.from_columns([a1, a2], n)
    if rank(pair) != 2:
        raise InvalidParams("a1, a2 must be linearly independent")

    dim = n + 4
    J = ExactMatrix.build(
        dim, dim,
        lambda r, c: (ONE if r == c and r < n else
                      ONE if (r == n and c == n + 2) or (r == n + 2 and c == n)
                      else ONE if (r == n + 1 and c == n + 3) or
                      (r == n + 3 and c == n + 1) else ZERO))

    def a_entry(r, c):
        if r < n and c < n:
            return A11[r, c]
        if r < n and c == n + 2:
            return a1[r]
        if r < n and c == n + 3:
            return a2[r]
        if r == n and c < n:
            return a1[c].conj()
        if r == n + 1 and c < n:
            return a2[c].conj()
        if r == n and c == n + 2:
            return alpha1
        if r == n + 1 and c == n + 3:
            return alpha2
        return ZERO

    A = ExactMatrix.build(dim, dim, a_entry)
    space = KreinSpace(J)
    rel = LinearRelation.from_matrix(space, A)

    x01 = [ONE if i == n else ZERO for i in range(dim)]
    x02 = [ONE if i == n + 1 else ZERO for i in range(dim)]
    f1 = [ONE if i == n + 2 else ZERO for i in range(dim)]
    f2 = [ONE if i == n + 3 else ZERO for i in range(dim)]

    model = Prop8Model(hilbert_dim=n, A11=A11, a1=a1, a2=a2,
                       alpha1=alpha1, alpha2=alpha2, space=space,
                       operator=A, relation=rel,
                       x0=(x01, x02), f=(f1, f2))
    _verify_prop8(model)
    return model


def _verify_prop8(m: Prop8Model):
    # (i) self-adjointness w.r.t. the indefinite product
    if not is_self_adjoint(m.relation):
        raise InvalidParams("assembled operator is not self-adjoint")
    # (ii) neutral eigenvectors at 0 with f = J x0
    for x0, f in zip(m.x0, m.f):
        if not all(c.is_zero() for c in m.operator.mul_vec(x0)):
            raise InvalidParams("x0 is not an eigenvector at 0")
        if not product(m.space, x0, x0).is_zero():
            raise InvalidParams("x0 is not neutral")
        if m.space.gram.mul_vec(x0) != [ExactScalar.of(c) for c in f]:
            raise InvalidParams("f != J x0")


def invariant_closure(A: LinearRelation, seed: Sequence[Sequence]) -> Subspace:
    """Smallest subspace containing the seed with A(S cap D(A)) inside S."""
    space = A.domain_space
    S = Subspace.from_columns(space, [list(v) for v in seed])
    while True:
        image = apply_to_subspace(A, S)
        S_next = S.add(image)
        if S_next.dim == S.dim:
            return S_next
        S = S_next


@dataclass
class SeparationReport:
    """Finite-dimensional analogue of the no-separation statements.

    `zero_only_eigenvalue` reports whether 0 is the only rational
    eigenvalue of the assembled operator; in finite dimension every
    nonzero eigenvalue of the Hilbert-block matrix lifts, so this holds
    only in contrived cases and is reported for information.  The
    separation verdict rests on the Krylov span of the first coupling
    vector: a2 orthogonal to it is exactly the reducibility loophole.
    """

    eigenvalues: List[ExactScalar]
    a11_eigenvalues: List[ExactScalar]
    zero_only_eigenvalue: bool
    nonzero_spectrum_lifts: bool
    closure_dim: int
    closure_degenerate: bool
    closure_contains_partner: bool
    a2_orthogonality_violated: bool
    witness: Optional[Tuple[List[ExactScalar], ExactScalar]]
    separation_possible: bool
    separating_subspace: Optional[Subspace]


def prop8_separation_test(m: Prop8Model) -> SeparationReport:
    """Probe whether one neutral eigenvector can be split off invariantly.

    Any candidate invariant nondegenerate subspace containing x0_1 but not
    x0_2 must contain f_1, hence the Krylov span of a1 under the Hilbert
    block; if a2 has a component in that span, invariance would inject the
    partner coordinates and the candidate fails.  Orthogonality of a2 to
    the span is therefore equivalent to separability, and contradicts
    cyclicity of a2.
    """
    eig = finite_eigenvalues(m.relation)
    eigs = [a for a, _ in eig.pairs]
    hilbert = KreinSpace(ExactMatrix.identity(m.hilbert_dim))
    a11_rel = LinearRelation.from_matrix(hilbert, m.A11)
    a11_eig = [a for a, _ in finite_eigenvalues(a11_rel).pairs]
    zero_only = all(a.is_zero() for a in eigs)
    lifts = all(any(a == b for b in eigs) for a in a11_eig
                if not a.is_zero())

    # Krylov span of a1 under A11, inside the Hilbert block
    C11 = invariant_closure(a11_rel, [m.a1])
    violated = False
    witness = None
    for c in C11.basis.columns():
        val = sum((ExactScalar.of(m.a2[k]).conj() * c[k]
                   for k in range(m.hilbert_dim)), ZERO)
        if not val.is_zero():
            violated = True
            witness = (c, val)
            break

    closure = invariant_closure(m.relation, [m.x0[0], m.f[0]])
    closure_deg = not closure.is_nondegenerate()
    contains_partner = closure.contains(m.x0[1]) or any(
        not v[m.hilbert_dim + 1].is_zero() for v in closure.basis.columns())

    separating = None
    if not violated:
        dim = m.hilbert_dim + 4
        cols = [list(c) + [ZERO] * 4 for c in C11.basis.columns()]
        cols.append(m.x0[0])
        cols.append(m.f[0])
        separating = Subspace.from_columns(m.space, cols)
        ok = separating.is_nondegenerate() and \
            not separating.contains(m.x0[1]) and \
            all(separating.contains(m.operator.mul_vec(c))
                for c in separating.basis.columns())
        if not ok:
            separating = None

    return SeparationReport(
        eigenvalues=eigs,
        a11_eigenvalues=a11_eig,
        zero_only_eigenvalue=zero_only,
        nonzero_spectrum_lifts=lifts,
        closure_dim=closure.dim,
        closure_degenerate=closure_deg,
        closure_contains_partner=contains_partner,
        a2_orthogonality_violated=violated,
        witness=witness,
        separation_possible=separating is not None,
        separating_subspace=separating,
    )
