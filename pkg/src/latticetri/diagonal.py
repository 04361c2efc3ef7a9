"""The atomic diagonal and its brute-force partition oracle.

On R^n every standard basis vector is an atom, so the supremum of the
compressions P_a T P_a over finite atom sets is simply the diagonal part of
T. The oracle recovers the same matrix the long way, as the entrywise
infimum of sum_i P_i T P_i over all partitions of the identity into
coordinate projections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .errors import DimensionError
from .exact import Matrix

SCHEP_MAX_DIM = 12


@dataclass(frozen=True)
class Partition:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(i for b in self.blocks for i in b)
        if seen != list(range(len(seen))) or any(not b for b in self.blocks):
            raise ValueError(f"not a set partition of range(n): {self.blocks}")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @classmethod
    def from_rgs(cls, rgs) -> "Partition":
        blocks: dict[int, list[int]] = {}
        for i, label in enumerate(rgs):
            blocks.setdefault(label, []).append(i)
        return cls(tuple(tuple(blocks[k]) for k in sorted(blocks)))

    def projections(self) -> list[Matrix]:
        """The 0/1 diagonal projections P_i, one per block; they sum to I."""
        n = self.n
        return [Matrix.diag([1 if i in b else 0 for i in range(n)]) for b in self.blocks]

    def compress(self, m: Matrix) -> Matrix:
        """sum_i P_i m P_i: keep entries whose row and column share a block."""
        label = {}
        for k, b in enumerate(self.blocks):
            for i in b:
                label[i] = k
        z = Fraction(0)
        return Matrix(
            [[a if label[i] == label[j] else z for j, a in enumerate(row)] for i, row in enumerate(m.rows)]
        )


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length n in lexicographic order.

    a[0] = 0 and a[i] <= 1 + max(a[:i]); these index set partitions of
    range(n) bijectively.
    """
    if n == 0:
        yield ()
        return
    a = [0] * n
    b = [1] * n  # b[i] = 1 + max(a[:i])
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] == b[i]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0
            b[j] = max(b[j - 1], a[j - 1] + 1)


def set_partitions(n: int) -> Iterator[Partition]:
    for rgs in restricted_growth_strings(n):
        yield Partition.from_rgs(rgs)


def atomic_diagonal(m: Matrix) -> Matrix:
    return Matrix.diag(m.diagonal())


def schep_oracle(m: Matrix, max_dim: int = SCHEP_MAX_DIM) -> Matrix:
    """Entrywise infimum of sum P_i m P_i over every set partition.

    The family is downward directed under common refinement, so the
    entrywise minimum is the order infimum. Exponential (Bell numbers):
    guarded at ``max_dim``.
    """
    n = m.n
    if n > max_dim:
        raise DimensionError(f"partition oracle limited to n <= {max_dim}, got {n}")
    m.require_nonnegative()
    rows = m.rows
    best = [list(row) for row in rows]
    z = Fraction(0)
    for rgs in restricted_growth_strings(n):
        for i in range(n):
            li = rgs[i]
            bi = best[i]
            for j in range(n):
                v = rows[i][j] if rgs[j] == li else z
                if v < bi[j]:
                    bi[j] = v
    return Matrix(best)


def max_row_sum_norm(m: Matrix) -> Fraction:
    """Operator norm on (R^n, sup-norm): the largest absolute row sum."""
    return max((sum((abs(a) for a in row), Fraction(0)) for row in m.rows), default=Fraction(0))


class VoigtResult(NamedTuple):
    diagonal_norm: Fraction
    norm: Fraction
    holds: bool


def voigt_contraction_check(m: Matrix) -> VoigtResult:
    dn = max_row_sum_norm(atomic_diagonal(m))
    mn = max_row_sum_norm(m)
    return VoigtResult(dn, mn, dn <= mn)


def _partner(m: Matrix) -> Matrix:
    # deterministic pseudo-random companion for the linearity probe
    from .generate import SplitMix64

    n = m.n
    rng = SplitMix64(0x5EED ^ (n * 0x9E37))
    return Matrix([[Fraction(int(rng.below(7)) - 3, 1 + int(rng.below(3))) for _ in range(n)] for _ in range(n)])


def diagonal_band_projection_check(m: Matrix, other: Matrix | None = None) -> bool:
    """Idempotence, linearity and (for m >= 0) 0 <= D(m) <= m."""
    d = atomic_diagonal(m)
    ok = atomic_diagonal(d) == d
    other = _partner(m) if other is None else other
    a, b = Fraction(2), Fraction(-3, 2)
    ok = ok and atomic_diagonal(a * m + b * other) == a * d + b * atomic_diagonal(other)
    if m.is_nonnegative():
        ok = ok and d.is_nonnegative() and (m - d).is_nonnegative()
    return ok
