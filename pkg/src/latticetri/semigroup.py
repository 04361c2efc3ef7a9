"""Finite windows onto matrix semigroups and the commutator-diagonal test.

A semigroup of nonnegative matrices, each individually triangularizable by
a permutation and with D(ST) = D(TS) for every pair, is simultaneously
triangularizable by a single permutation. The tool enumerates the closure
up to a word length, checks both hypotheses on what it saw, decides common
triangularizability from the generators alone (an ideal is invariant under
the semigroup iff it is invariant under each generator), and cross-checks
the two. When the closure was not exhausted the verdict says so.

Positive scalar multiples and limits are never enumerated; supports, and
therefore every structural conclusion, do not depend on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import DimensionError, InternalConsistencyError
from .exact import Matrix, Permutation, diag_of_product, is_nilpotent, permute_similarity
from .lattice import IdealChain, common_triangularizing_permutation, is_invariant
from .triangular import criteria_equivalence

Word = tuple[int, ...]


class Element(NamedTuple):
    matrix: Matrix
    word: Word


@dataclass(frozen=True)
class SemigroupClosure:
    """Distinct products of the generators, shortest words first.

    Enumeration is breadth first: level k extends each element first found
    at level k-1 by every generator in index order, so elements appear by
    word length and then lexicographically by word. ``complete`` is True iff
    some level within ``depth`` produced nothing new, in which case
    ``elements`` is the whole semigroup.
    """

    generators: tuple[Matrix, ...]
    depth: int
    elements: tuple[Element, ...]
    complete: bool

    @property
    def matrices(self) -> list[Matrix]:
        return [e.matrix for e in self.elements]

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "complete": self.complete,
            "size": len(self.elements),
            "words": [list(e.word) for e in self.elements],
        }


def generate_closure(gens: Sequence[Matrix], depth: int, max_elements: int | None = None) -> SemigroupClosure:
    if not gens:
        raise DimensionError("need at least one generator")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise DimensionError(f"generator dimension mismatch: {g.n} vs {n}")
    seen: dict[Matrix, Word] = {}
    elements: list[Element] = []
    frontier: list[Element] = []
    for k, g in enumerate(gens):
        if g not in seen:
            seen[g] = (k,)
            frontier.append(Element(g, (k,)))
    elements.extend(frontier)
    complete = False
    for _ in range(2, depth + 1):
        if not frontier:
            complete = True
            break
        nxt: list[Element] = []
        for m, word in frontier:
            for k, g in enumerate(gens):
                p = m @ g
                if p not in seen:
                    seen[p] = word + (k,)
                    nxt.append(Element(p, word + (k,)))
                    if max_elements is not None and len(seen) > max_elements:
                        raise ValueError(f"closure exceeded {max_elements} elements")
        elements.extend(nxt)
        frontier = nxt
    else:
        complete = not frontier
    return SemigroupClosure(tuple(gens), depth, tuple(elements), complete)


class DiagCondition(NamedTuple):
    holds: bool
    pair: tuple[Word, Word] | None
    checked_pairs: int


def diag_commutator_condition(closure: SemigroupClosure) -> DiagCondition:
    """Check D(ST) == D(TS) over unordered pairs of enumerated elements.

    Pairs are visited in enumeration order; the first violation is returned.
    """
    els = closure.elements
    checked = 0
    for a in range(len(els)):
        s, ws = els[a]
        for b in range(a, len(els)):
            t, wt = els[b]
            checked += 1
            if a != b and diag_of_product(s, t) != diag_of_product(t, s):
                return DiagCondition(False, (ws, wt), checked)
    return DiagCondition(True, None, checked)


@dataclass(frozen=True)
class SemigroupVerdict:
    each_triangularizable: bool
    diag_condition: bool
    checked_pairs: int
    hypothesis_scope: str  # "complete-closure" or "depth-truncated"
    commonly_triangularizable: bool
    permutation: Permutation | None
    chain: IdealChain | None
    counterexample_pair: tuple[Word, Word] | None
    closure: SemigroupClosure
    non_triangularizable_word: Word | None = None

    @property
    def hypotheses_hold(self) -> bool:
        return self.each_triangularizable and self.diag_condition

    def to_json(self) -> dict:
        return {
            "each_triangularizable": self.each_triangularizable,
            "diag_condition": self.diag_condition,
            "checked_pairs": self.checked_pairs,
            "hypothesis_scope": self.hypothesis_scope,
            "commonly_triangularizable": self.commonly_triangularizable,
            "permutation": None if self.permutation is None else self.permutation.to_json(),
            "chain": None if self.chain is None else self.chain.to_json(),
            "counterexample_pair": None
            if self.counterexample_pair is None
            else [list(w) for w in self.counterexample_pair],
            "non_triangularizable_word": None
            if self.non_triangularizable_word is None
            else list(self.non_triangularizable_word),
            "closure": self.closure.to_json(),
        }


def semigroup_pipeline(gens: Sequence[Matrix], depth: int) -> SemigroupVerdict:
    for g in gens:
        g.require_nonnegative("generator")
    closure = generate_closure(gens, depth)

    bad_word = None
    for m, word in closure.elements:
        if not criteria_equivalence(m).triangularizable:
            bad_word = word
            break
    each = bad_word is None
    cond = diag_commutator_condition(closure)

    found = common_triangularizing_permutation(list(gens))
    perm, chain = found if found is not None else (None, None)
    if perm is not None:
        for m in closure.matrices:
            if not permute_similarity(m, perm).is_upper_triangular():
                raise InternalConsistencyError("shared permutation fails on a closure element")
        if not all(is_invariant(c, closure.matrices) for c in chain.members):
            raise InternalConsistencyError("generator-invariant chain not invariant under the closure")
        # a triangularizable semigroup satisfies both hypotheses everywhere
        if not (each and cond.holds):
            raise InternalConsistencyError("commonly triangularizable family violates a necessary condition")
    elif closure.complete and each and cond.holds:
        raise InternalConsistencyError(
            "hypotheses hold on the full semigroup but no common triangularizing permutation exists"
        )

    return SemigroupVerdict(
        each_triangularizable=each,
        diag_condition=cond.holds,
        checked_pairs=cond.checked_pairs,
        hypothesis_scope="complete-closure" if closure.complete else "depth-truncated",
        commonly_triangularizable=perm is not None,
        permutation=perm,
        chain=chain,
        counterexample_pair=cond.pair,
        closure=closure,
        non_triangularizable_word=bad_word,
    )


def quasinilpotent_semigroup_check(closure: SemigroupClosure) -> bool:
    """True iff every enumerated element is nilpotent.

    In that case the generators must share a triangularizing permutation with
    zero diagonal (their union support is acyclic). This is asserted once
    every word of length <= n has been seen, since a cycle of length L in the
    union support shows up as a positive diagonal entry of a product of L
    generators.
    """
    for m in closure.matrices:
        m.require_nonnegative()
    if not all(is_nilpotent(m) for m in closure.matrices):
        return False
    if closure.complete or closure.depth >= closure.generators[0].n:
        found = common_triangularizing_permutation(list(closure.generators))
        if found is None or any(any(g.diagonal()) for g in closure.generators):
            raise InternalConsistencyError("nilpotent semigroup is not triangularizable")
    return True
