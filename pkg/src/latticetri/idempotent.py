"""Structure of nonnegative idempotent matrices.

With b1 the absolute kernel (zero columns), b the union of b1 and the range
ideal (nonzero rows), b2 = b \\ b1 and b3 the rest, a nonnegative idempotent
has the block form

        b1   b2    b3
    [[  0,   X,   X Y ],
     [  0,   Q,    Y  ],
     [  0,   0,    0  ]]

where Q is idempotent with no zero row and no zero column, X = XQ and
Y = QY. Q further splits as a direct sum of rank-one blocks x_j phi_j^T with
x_j, phi_j entrywise positive and phi_j . x_j = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InternalConsistencyError, NotIdempotentError
from .exact import Matrix, rank
from .lattice import CoordIdeal
from .triangular import criterion_structural


def verify_idempotent(m: Matrix) -> bool:
    return m.is_square and m.is_nonnegative() and m @ m == m


def absolute_kernel(m: Matrix) -> CoordIdeal:
    """Coordinates j with m e_j = 0, i.e. zero columns."""
    m.require_nonnegative()
    return CoordIdeal.of(m.n, (j for j in range(m.n) if not any(m.col(j))))


def range_ideal(m: Matrix) -> CoordIdeal:
    """Coordinates reached by the range, i.e. nonzero rows."""
    m.require_nonnegative()
    return CoordIdeal.of(m.n, (i for i in range(m.n) if any(m.row(i))))


@dataclass(frozen=True)
class RankOnePart:
    """One summand x phi^T of Q, living on the coordinates ``ideal``.

    Normalised so the first entry of x is 1; phi . x == 1.
    """

    ideal: CoordIdeal
    x: tuple[Fraction, ...]
    phi: tuple[Fraction, ...]

    def block(self) -> Matrix:
        return Matrix.outer(self.x, self.phi)

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal.sorted(),
            "x": [str(v) for v in self.x],
            "phi": [str(v) for v in self.phi],
            "irreducible": rank_one_irreducibility(self.x, self.phi),
        }


@dataclass(frozen=True)
class IdempotentDecomposition:
    b1: CoordIdeal
    b2: CoordIdeal
    b3: CoordIdeal
    q: Matrix
    x_block: Matrix
    y_block: Matrix
    rank_one_parts: tuple[RankOnePart, ...]
    rank: int

    def to_json(self) -> dict:
        return {
            "b1": self.b1.sorted(),
            "b2": self.b2.sorted(),
            "b3": self.b3.sorted(),
            "q": self.q.to_json(),
            "x_block": self.x_block.to_json(),
            "y_block": self.y_block.to_json(),
            "rank": self.rank,
            "rank_one_parts": [p.to_json() for p in self.rank_one_parts],
        }


def _components(q: Matrix) -> list[list[int]]:
    # connected components of the undirected support graph of q
    n = q.n
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, todo = [], [s]
        while todo:
            v = todo.pop()
            comp.append(v)
            for w in range(n):
                if not seen[w] and (q[v, w] or q[w, v]):
                    seen[w] = True
                    todo.append(w)
        comps.append(sorted(comp))
    return comps


def _is_rank_one(block: Matrix) -> bool:
    r, c = block.shape
    rows = block.rows
    return all(
        rows[i][j] * rows[k][l] == rows[i][l] * rows[k][j]
        for i in range(r)
        for k in range(i + 1, r)
        for j in range(c)
        for l in range(j + 1, c)
    )


def _check(cond: bool, what: str) -> None:
    if not cond:
        raise InternalConsistencyError(f"idempotent decomposition: {what}")


def decompose_idempotent(m: Matrix) -> IdempotentDecomposition:
    if not verify_idempotent(m):
        raise NotIdempotentError("matrix is not a nonnegative idempotent")
    n = m.n
    b1 = absolute_kernel(m)
    b = b1 | range_ideal(m)
    b2 = CoordIdeal(n, b.members - b1.members)
    b3 = b.complement()
    i1, i2, i3 = b1.sorted(), b2.sorted(), b3.sorted()

    q = m.submatrix(i2)
    x_block = m.submatrix(i1, i2)
    y_block = m.submatrix(i2, i3)
    corner = m.submatrix(i1, i3)
    _check(m.submatrix(range(n), i1).is_zero(), "b1 columns are not zero")
    _check(m.submatrix(i3, range(n)).is_zero(), "b3 rows are not zero")
    _check(m.submatrix(i2, i1).is_zero() and m.submatrix(i3, i2).is_zero(), "lower blocks are not zero")
    _check(q @ q == q, "Q is not idempotent")
    _check(x_block @ q == x_block, "X != XQ")
    _check(q @ y_block == y_block, "Y != QY")
    _check(corner == x_block @ y_block, "corner != XY")
    _check(all(any(r) for r in q.rows), "Q has a zero row")
    _check(all(any(q.col(j)) for j in range(q.n) if q.n), "Q has a zero column")

    parts = []
    for comp in _components(q) if i2 else []:
        block = q.submatrix(comp)
        _check(all(a > 0 for row in block.rows for a in row), f"block {comp} is not entrywise positive")
        _check(_is_rank_one(block), f"block {comp} is not rank one")
        pivot = block[0, 0]
        x = tuple(a / pivot for a in block.col(0))
        phi = block.row(0)
        _check(Matrix.outer(x, phi) == block, f"block {comp} does not factor")
        _check(sum((a * b for a, b in zip(x, phi)), Fraction(0)) == 1, "phi . x != 1")
        parts.append(RankOnePart(CoordIdeal.of(n, (i2[k] for k in comp)), x, phi))

    r = rank(m)
    _check(r == len(parts), f"rank {r} differs from the number of rank-one parts {len(parts)}")
    return IdempotentDecomposition(b1, b2, b3, q, x_block, y_block, tuple(parts), r)


def rank_one_irreducibility(x: Sequence, phi: Sequence) -> bool:
    """Whether x phi^T is ideal-irreducible: x and phi strictly positive.

    In finite dimension a quasi-interior point is a vector with all entries
    positive and a strictly positive functional has all weights positive.
    """
    x = [Fraction(v) for v in x]
    phi = [Fraction(v) for v in phi]
    if len(x) != len(phi):
        raise DomainError("x and phi have different lengths")
    if any(v < 0 for v in x) or any(v < 0 for v in phi):
        raise DomainError("x and phi must be nonnegative")
    if sum((a * b for a, b in zip(x, phi)), Fraction(0)) != 1:
        raise DomainError("phi . x must equal 1")
    return all(v > 0 for v in x) and all(v > 0 for v in phi)


def triangularizable_idempotent_check(m: Matrix) -> bool | None:
    """For a triangularizable idempotent, check Q is the identity on b2.

    Returns None when m is not triangularizable (the check does not apply).
    """
    if not verify_idempotent(m):
        raise NotIdempotentError("matrix is not a nonnegative idempotent")
    if not criterion_structural(m).triangularizable:
        return None
    q = decompose_idempotent(m).q
    return q == Matrix.identity(q.n) if q.shape[0] else True
