"""Coordinate ideals, support digraphs and invariant-ideal search.

On R^n with the entrywise order the closed ideals are exactly the coordinate
subspaces, so an ideal is a subset J of {0, ..., n-1}. A nonnegative matrix m
leaves J invariant iff m[i][j] == 0 whenever i is outside J and j inside it.

Support digraph convention: an edge j -> i is present when m[i][j] != 0
("coordinate j feeds coordinate i"). Invariant ideals are then exactly the
vertex sets closed under successors.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, InternalConsistencyError, ParseError
from .exact import Matrix, Permutation


@dataclass(frozen=True)
class CoordIdeal:
    n: int
    members: frozenset[int]

    def __post_init__(self):
        mem = frozenset(int(i) for i in self.members)
        if any(i < 0 or i >= self.n for i in mem):
            raise DimensionError(f"ideal members {sorted(mem)} outside range({self.n})")
        object.__setattr__(self, "members", mem)

    @classmethod
    def of(cls, n: int, members: Iterable[int] = ()) -> "CoordIdeal":
        return cls(n, frozenset(members))

    @classmethod
    def full(cls, n: int) -> "CoordIdeal":
        return cls(n, frozenset(range(n)))

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def complement(self) -> "CoordIdeal":
        return CoordIdeal(self.n, frozenset(range(self.n)) - self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: "CoordIdeal") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "CoordIdeal") -> bool:
        return self.members < other.members

    def __or__(self, other: "CoordIdeal") -> "CoordIdeal":
        return CoordIdeal(self.n, self.members | other.members)

    def __and__(self, other: "CoordIdeal") -> "CoordIdeal":
        return CoordIdeal(self.n, self.members & other.members)

    @property
    def is_trivial(self) -> bool:
        return not self.members or len(self.members) == self.n

    def indicator(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(1) if i in self.members else Fraction(0) for i in range(self.n))

    def projection(self) -> Matrix:
        """The band projection onto this ideal (a diagonal 0/1 matrix)."""
        return Matrix.diag(self.indicator())

    def to_json(self) -> dict:
        return {"n": self.n, "members": self.sorted()}

    @classmethod
    def from_json(cls, obj) -> "CoordIdeal":
        try:
            n = obj["n"]
            members = obj["members"]
        except (KeyError, TypeError) as exc:
            raise ParseError("ideal JSON needs 'n' and 'members'") from exc
        if not isinstance(n, int) or not all(isinstance(i, int) for i in members):
            raise ParseError("ideal 'n' and 'members' must be integers")
        if len(set(members)) != len(members):
            raise ParseError("ideal members must be distinct")
        return cls(n, frozenset(members))


@dataclass(frozen=True)
class IdealChain:
    """Strictly increasing chain of coordinate ideals from {} to everything."""

    n: int
    members: tuple[CoordIdeal, ...]

    def __post_init__(self):
        mem = tuple(self.members)
        if not mem or mem[0].members or mem[-1].members != frozenset(range(self.n)):
            raise ValueError("a chain must start at the zero ideal and end at the full space")
        for a, b in zip(mem, mem[1:]):
            if not a < b:
                raise ValueError("chain members must be strictly increasing")
        if any(c.n != self.n for c in mem):
            raise DimensionError("chain members live in different dimensions")
        object.__setattr__(self, "members", mem)

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "IdealChain":
        """Full flag whose k-th member is the first k entries of ``order``."""
        n = len(order)
        return cls(n, tuple(CoordIdeal.of(n, order[:k]) for k in range(n + 1)))

    @classmethod
    def from_parts(cls, n: int, parts: Sequence[Sequence[int]]) -> "IdealChain":
        members = [CoordIdeal.of(n)]
        acc: set[int] = set()
        for part in parts:
            acc |= set(part)
            members.append(CoordIdeal.of(n, acc))
        return cls(n, tuple(members))

    @property
    def maximal(self) -> bool:
        return len(self.members) == self.n + 1

    def gaps(self) -> list[list[int]]:
        """Index sets of M minus its predecessor, for each non-zero member M."""
        return [sorted(b.members - a.members) for a, b in zip(self.members, self.members[1:])]

    def to_json(self) -> dict:
        return {"n": self.n, "members": [c.sorted() for c in self.members]}

    @classmethod
    def from_json(cls, obj) -> "IdealChain":
        try:
            n = obj["n"]
            return cls(n, tuple(CoordIdeal.of(n, m) for m in obj["members"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad chain JSON: {exc}") from exc


@dataclass(frozen=True)
class SupportDigraph:
    n: int
    edges: frozenset[tuple[int, int]]  # (j, i): m[i][j] != 0

    def successors(self, v: int) -> list[int]:
        return sorted(i for (j, i) in self.edges if j == v)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for j, i in self.edges:
            adj[j].append(i)
        for row in adj:
            row.sort()
        return adj

    def to_json(self) -> dict:
        return {"n": self.n, "edges": sorted([list(e) for e in self.edges])}


def _common_dimension(mats: Sequence[Matrix]) -> int:
    if not mats:
        raise DimensionError("need at least one matrix")
    n = mats[0].n
    for m in mats[1:]:
        if m.n != n:
            raise DimensionError(f"dimension mismatch: {m.n} vs {n}")
    return n


def support_union(mats: Sequence[Matrix], require_nonnegative: bool = True) -> SupportDigraph:
    n = _common_dimension(mats)
    edges = set()
    for m in mats:
        if require_nonnegative:
            m.require_nonnegative()
        for i, row in enumerate(m.rows):
            for j, a in enumerate(row):
                if a:
                    edges.add((j, i))
    return SupportDigraph(n, frozenset(edges))


def _tarjan(n: int, adj: list[list[int]]) -> list[list[int]]:
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < len(adj[v]):
                work[-1] = (v, pos + 1)
                w = adj[v][pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class Condensation:
    """Strongly connected components listed in triangularizing order.

    Every edge between distinct parts runs from a later part to an earlier
    one, so each prefix union of ``parts`` is an invariant ideal. Among the
    admissible orders the one that always picks the available part with the
    smallest vertex is returned.
    """

    n: int
    parts: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(v for part in self.parts for v in part)

    @property
    def all_singletons(self) -> bool:
        return all(len(p) == 1 for p in self.parts)

    def chain(self) -> IdealChain:
        return IdealChain.from_parts(self.n, self.parts)

    def to_json(self) -> dict:
        return {"n": self.n, "parts": [list(p) for p in self.parts]}


def scc_condensation(g: SupportDigraph) -> Condensation:
    n = g.n
    comps = _tarjan(n, g.adjacency())
    comp_of = [0] * n
    for c, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = c
    # a part may be placed once every part it feeds has been placed
    blocking = [set() for _ in comps]
    fed_by = [set() for _ in comps]
    for j, i in g.edges:
        cj, ci = comp_of[j], comp_of[i]
        if cj != ci:
            blocking[cj].add(ci)
            fed_by[ci].add(cj)
    remaining = [len(b) for b in blocking]
    heap = [(comps[c][0], c) for c in range(len(comps)) if remaining[c] == 0]
    heapq.heapify(heap)
    parts = []
    while heap:
        _, c = heapq.heappop(heap)
        parts.append(tuple(comps[c]))
        for d in fed_by[c]:
            remaining[d] -= 1
            if remaining[d] == 0:
                heapq.heappush(heap, (comps[d][0], d))
    if len(parts) != len(comps):
        raise InternalConsistencyError("condensation is not acyclic")
    return Condensation(n, tuple(parts))


def is_invariant(ideal: CoordIdeal, mats: Sequence[Matrix]) -> bool:
    inside = ideal.sorted()
    outside = ideal.complement().sorted()
    return all(not m[i, j] for m in mats for i in outside for j in inside)


def closure_of(g: SupportDigraph, seeds: Iterable[int]) -> CoordIdeal:
    """Smallest invariant ideal containing ``seeds``."""
    adj = g.adjacency()
    seen = set(seeds)
    todo = list(seen)
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return CoordIdeal.of(g.n, seen)


@dataclass(frozen=True)
class InvariantIdeals:
    """Common invariant ideals of a family.

    ``principal[v]`` is the smallest invariant ideal containing coordinate v;
    every invariant ideal is a union of these. ``minimal`` lists the
    inclusion-minimal nonzero ones (the sink components of the condensation).
    """

    n: int
    minimal: tuple[CoordIdeal, ...]
    principal: tuple[CoordIdeal, ...]
    condensation: Condensation
    irreducible: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "irreducible": self.irreducible,
            "minimal": [c.sorted() for c in self.minimal],
            "principal": [c.sorted() for c in self.principal],
            "parts": [list(p) for p in self.condensation.parts],
        }


def invariant_ideals(mats: Sequence[Matrix]) -> InvariantIdeals:
    g = support_union(mats)
    cond = scc_condensation(g)
    principal = tuple(closure_of(g, [v]) for v in range(g.n))
    minimal = []
    for part in cond.parts:
        if principal[part[0]].members == frozenset(part):
            minimal.append(CoordIdeal.of(g.n, part))
    minimal.sort(key=lambda c: c.sorted())
    return InvariantIdeals(g.n, tuple(minimal), principal, cond, len(cond.parts) == 1)


@dataclass(frozen=True)
class ReducibilityWitness:
    """A nontrivial common invariant ideal J and the derived witnesses.

    ``f`` is the indicator of J and ``phi`` the indicator functional of its
    disjoint complement, so phi(S f) = 0 for every S. ``A`` and ``B`` are the
    band projections onto the complement and onto J, so A S B = 0.
    """

    ideal: CoordIdeal
    f: tuple[Fraction, ...]
    phi: tuple[Fraction, ...]
    A: Matrix
    B: Matrix

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal.to_json(),
            "f": [str(x) for x in self.f],
            "phi": [str(x) for x in self.phi],
            "A": self.A.to_json(),
            "B": self.B.to_json(),
        }


def reducibility_witnesses(mats: Sequence[Matrix]) -> ReducibilityWitness | None:
    """Witnesses that the family is ideal-reducible, or None if irreducible."""
    inv = invariant_ideals(mats)
    if inv.irreducible:
        return None
    ideal = CoordIdeal.of(inv.n, inv.condensation.parts[0])
    if ideal.is_trivial:
        raise InternalConsistencyError(f"first condensation part {ideal.sorted()} is trivial")
    comp = ideal.complement()
    f, phi = ideal.indicator(), comp.indicator()
    A, B = comp.projection(), ideal.projection()
    for m in mats:
        sf = m.apply(f)
        if sum((a * b for a, b in zip(phi, sf)), Fraction(0)) != 0:
            raise InternalConsistencyError("phi(S f) != 0 for a witness ideal")
        if not (A @ m @ B).is_zero():
            raise InternalConsistencyError("A S B != 0 for a witness ideal")
    return ReducibilityWitness(ideal, f, phi, A, B)


def common_triangularizing_permutation(mats: Sequence[Matrix]) -> tuple[Permutation, IdealChain] | None:
    """Shared permutation making every matrix upper triangular, if one exists."""
    cond = scc_condensation(support_union(mats))
    if not cond.all_singletons:
        return None
    return Permutation.from_order(cond.order), IdealChain.from_order(cond.order)
