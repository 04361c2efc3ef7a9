"""Single-matrix ideal-triangularizability: three criteria and Ringrose blocks.

For a nonnegative matrix T the following are equivalent, and each is
decided here by an independent route:

(a) structural: T is permutation-similar to an upper triangular matrix,
    i.e. every strongly connected component of its support is a singleton;
(b) T - D(T) is nilpotent;
(c) the diagonal entries of T are its eigenvalues with algebraic
    multiplicity, checked as char_poly(T) == prod(x - T[i][i]).

The usual form of (c) only matches nonzero eigenvalues. At finite dimension
both sides have degree n, so matching nonzero roots with multiplicity
already forces the full polynomial identity; the report checks that
stronger identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .diagonal import atomic_diagonal
from .errors import InternalConsistencyError, NotInvariantError
from .exact import CharPoly, Matrix, Permutation, char_poly, is_nilpotent, permute_similarity
from .lattice import IdealChain, is_invariant, scc_condensation, support_union


class StructuralResult(NamedTuple):
    triangularizable: bool
    permutation: Permutation | None
    chain: IdealChain | None


def criterion_structural(m: Matrix) -> StructuralResult:
    m.require_nonnegative()
    cond = scc_condensation(support_union([m]))
    if not cond.all_singletons:
        return StructuralResult(False, None, None)
    p = Permutation.from_order(cond.order)
    if not permute_similarity(m, p).is_upper_triangular():
        raise InternalConsistencyError(f"permutation {p.images} does not triangularize the matrix")
    return StructuralResult(True, p, IdealChain.from_order(cond.order))


def criterion_nilpotent_offdiag(m: Matrix) -> bool:
    m.require_nonnegative()
    return is_nilpotent(m - atomic_diagonal(m))


def criterion_charpoly_diag(m: Matrix) -> bool:
    m.require_nonnegative()
    return char_poly(m) == CharPoly.from_roots(m.diagonal())


@dataclass(frozen=True)
class CriteriaReport:
    structural: bool
    nilpotent_offdiag: bool
    charpoly_diag: bool
    permutation: Permutation | None
    chain: IdealChain | None
    char_poly: CharPoly
    diagonal_poly: CharPoly

    @property
    def triangularizable(self) -> bool:
        return self.structural

    def to_json(self) -> dict:
        return {
            "structural": self.structural,
            "nilpotent_offdiag": self.nilpotent_offdiag,
            "charpoly_diag": self.charpoly_diag,
            "triangularizable": self.triangularizable,
            "permutation": None if self.permutation is None else self.permutation.to_json(),
            "chain": None if self.chain is None else self.chain.to_json(),
            "char_poly": self.char_poly.to_json(),
            "char_poly_text": str(self.char_poly),
            "diagonal_poly": self.diagonal_poly.to_json(),
        }


def criteria_equivalence(m: Matrix) -> CriteriaReport:
    """Run all three criteria; disagreement raises InternalConsistencyError."""
    structural, perm, chain = criterion_structural(m)
    nil = criterion_nilpotent_offdiag(m)
    cp = char_poly(m)
    dp = CharPoly.from_roots(m.diagonal())
    cpd = cp == dp
    if not structural == nil == cpd:
        raise InternalConsistencyError(
            f"triangularizability criteria disagree: structural={structural}, "
            f"nilpotent_offdiag={nil}, charpoly_diag={cpd} on {m!r}"
        )
    return CriteriaReport(structural, nil, cpd, perm, chain, cp, dp)


def ringrose_blocks(m: Matrix, chain: IdealChain) -> list[Matrix]:
    """Compressions of m to the gaps of an invariant chain.

    Each block is m restricted to M minus its predecessor, the matrix of the
    operator induced on the quotient M / M_-.
    """
    if chain.n != m.n:
        raise NotInvariantError(f"chain of dimension {chain.n} for a {m.n}x{m.n} matrix")
    for member in chain.members:
        if not is_invariant(member, [m]):
            raise NotInvariantError(f"chain member {member.sorted()} is not invariant")
    return [m.submatrix(gap) for gap in chain.gaps()]


def ringrose_check(m: Matrix, chain: IdealChain) -> bool:
    """char_poly(m) == product of the gap-block characteristic polynomials.

    Equality of the polynomials gives both the spectral union over the chain
    and additivity of algebraic multiplicities, including at zero.
    """
    product = CharPoly.monomial(0)
    for block in ringrose_blocks(m, chain):
        product = product * char_poly(block)
    return product == char_poly(m)
