"""Reproducible instances for the property suites.

Randomness comes from SplitMix64 (Steele, Lea and Flood), written out here so
that the same seed yields the same instance in any language:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

Bounded integers use rejection sampling (no modulo bias); shuffles are
Fisher-Yates from the top index down. Entry values are p/q with
1 <= q <= max_denominator and p/q inside the value range, q drawn first among
the denominators that admit a positive value, then p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .errors import InternalConsistencyError, InvalidSpecError
from .exact import Matrix, Permutation, permute_similarity
from .lattice import CoordIdeal

MASK64 = (1 << 64) - 1
MODES = ("raw", "triangularizable", "idempotent", "semigroup-framed")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def chance(self, p: Fraction) -> bool:
        p = Fraction(p)
        if p <= 0:
            return False
        if p >= 1:
            return True
        return self.below(p.denominator) < p.numerator

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def permutation(self, n: int) -> Permutation:
        return Permutation(tuple(self.shuffle(list(range(n)))))

    def composition(self, total: int, max_part: int | None = None) -> list[int]:
        """Random ordered split of ``total`` into positive parts."""
        parts = []
        left = total
        while left:
            cap = left if max_part is None else min(left, max_part)
            k = self.between(1, cap)
            parts.append(k)
            left -= k
        return parts


@dataclass(frozen=True)
class GenSpec:
    n: int
    mode: str = "raw"
    seed: int = 0
    density: Fraction = Fraction(1, 2)
    value_range: tuple[Fraction, Fraction] = (Fraction(0), Fraction(4))
    max_denominator: int = 3
    # idempotent mode only: sizes of (b1, b2, b3) and of the rank-one parts of b2
    blocks: tuple[int, int, int] | None = None
    part_sizes: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "density", Fraction(self.density))
        lo, hi = (Fraction(v) for v in self.value_range)
        object.__setattr__(self, "value_range", (lo, hi))
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidSpecError(f"n must be a positive integer, got {self.n!r}")
        if self.mode not in MODES:
            raise InvalidSpecError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 0 <= self.density <= 1:
            raise InvalidSpecError("density must lie in [0, 1]")
        if lo < 0 or hi < lo:
            raise InvalidSpecError("value_range must satisfy 0 <= lo <= hi")
        if self.max_denominator < 1 or hi * self.max_denominator < 1:
            raise InvalidSpecError("value_range admits no positive value with the given denominators")
        if not 0 <= self.seed <= MASK64:
            raise InvalidSpecError("seed must be a 64-bit unsigned integer")
        if self.blocks is not None:
            if len(self.blocks) != 3 or any(b < 0 for b in self.blocks) or sum(self.blocks) != self.n:
                raise InvalidSpecError("blocks must be three nonnegative sizes summing to n")
            if self.blocks[1] == 0:
                raise InvalidSpecError("the middle block (range of the idempotent) must be nonempty")
        if self.part_sizes is not None:
            if any(s < 1 for s in self.part_sizes):
                raise InvalidSpecError("part sizes must be positive")
            if self.blocks is not None and sum(self.part_sizes) != self.blocks[1]:
                raise InvalidSpecError("part sizes must sum to the middle block size")

    def rng(self) -> SplitMix64:
        return SplitMix64(self.seed)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "seed": self.seed,
            "density": str(self.density),
            "value_range": [str(v) for v in self.value_range],
            "max_denominator": self.max_denominator,
            "blocks": None if self.blocks is None else list(self.blocks),
            "part_sizes": None if self.part_sizes is None else list(self.part_sizes),
        }


def _value(rng: SplitMix64, spec: GenSpec) -> Fraction:
    lo, hi = spec.value_range
    choices = []
    for q in range(1, spec.max_denominator + 1):
        p_lo = max(1, math.ceil(lo * q))
        p_hi = math.floor(hi * q)
        if p_lo <= p_hi:
            choices.append((q, p_lo, p_hi))
    q, p_lo, p_hi = choices[rng.below(len(choices))]
    return Fraction(rng.between(p_lo, p_hi), q)


def _entry(rng: SplitMix64, spec: GenSpec) -> Fraction:
    return _value(rng, spec) if rng.chance(spec.density) else Fraction(0)


def _raw(rng: SplitMix64, spec: GenSpec, rows: int, cols: int) -> Matrix:
    return Matrix([[_entry(rng, spec) for _ in range(cols)] for _ in range(rows)], shape=(rows, cols))


def _upper(rng: SplitMix64, spec: GenSpec, n: int, strict: bool = False) -> Matrix:
    z = Fraction(0)
    return Matrix(
        [[_entry(rng, spec) if (j > i or (j == i and not strict)) else z for j in range(n)] for i in range(n)]
    )


def gen_matrix(spec: GenSpec) -> Matrix:
    rng = spec.rng()
    if spec.mode == "raw":
        return _raw(rng, spec, spec.n, spec.n)
    if spec.mode in ("triangularizable", "semigroup-framed"):
        upper = _upper(rng, spec, spec.n)
        return permute_similarity(upper, rng.permutation(spec.n))
    return gen_idempotent(spec)


def random_upper_framed(
    rng: SplitMix64, spec: GenSpec, k: int, strict: bool = False
) -> tuple[list[Matrix], Permutation]:
    frame = rng.permutation(spec.n)
    mats = [permute_similarity(_upper(rng, spec, spec.n, strict), frame.inverse()) for _ in range(k)]
    return mats, frame


def gen_semigroup_framed(spec: GenSpec, k: int, strict: bool = False) -> list[Matrix]:
    """k upper triangular matrices conjugated by one shared random permutation.

    With ``strict`` the triangular parents have zero diagonals, so every
    generated semigroup is nilpotent.
    """
    if k < 1:
        raise InvalidSpecError("k must be at least 1")
    mats, _ = random_upper_framed(spec.rng(), spec, k, strict)
    return mats


# ---------------------------------------------------------------------------
# idempotents


def assemble_idempotent(x0: Matrix, q: Matrix, y0: Matrix) -> Matrix:
    """Block matrix [[0, XQ, XQY], [0, Q, QY], [0, 0, 0]] with X = x0 Q, Y = Q y0.

    Coordinates are ordered b1, b2, b3. If q is idempotent the result is.
    """
    s1, s2 = x0.shape
    s3 = y0.shape[1]
    x = x0 @ q
    y = q @ y0
    n = s1 + s2 + s3
    xy = x @ y
    z = Fraction(0)
    rows = [[z] * n for _ in range(n)]
    for i in range(s1):
        for j in range(s2):
            rows[i][s1 + j] = x[i, j]
        for j in range(s3):
            rows[i][s1 + s2 + j] = xy[i, j]
    for i in range(s2):
        for j in range(s2):
            rows[s1 + i][s1 + j] = q[i, j]
        for j in range(s3):
            rows[s1 + i][s1 + s2 + j] = y[i, j]
    return Matrix(rows)


def rank_one_idempotent(x: Sequence[Fraction], phi: Sequence[Fraction]) -> Matrix:
    """x phi^T after rescaling phi so that phi . x == 1."""
    s = sum((a * b for a, b in zip(x, phi)), Fraction(0))
    return Matrix.outer(x, [p / s for p in phi])


def direct_sum(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.n for b in blocks)
    z = Fraction(0)
    rows = [[z] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[off + i][off + j] = b[i, j]
        off += b.n
    return Matrix(rows)


@dataclass(frozen=True)
class IdempotentInstance:
    """A generated idempotent together with the layout it was built from."""

    matrix: Matrix
    b1: CoordIdeal
    b2: CoordIdeal
    b3: CoordIdeal
    parts: tuple[CoordIdeal, ...]
    part_blocks: tuple[Matrix, ...] = field(default=())


def build_idempotent(spec: GenSpec) -> IdempotentInstance:
    rng = spec.rng()
    n = spec.n
    if spec.blocks is not None:
        s1, s2, s3 = spec.blocks
    else:
        s2 = rng.between(1, n)
        s1 = rng.between(0, n - s2)
        s3 = n - s2 - s1
    sizes = list(spec.part_sizes) if spec.part_sizes is not None else rng.composition(s2)
    if sum(sizes) != s2:
        raise InvalidSpecError("part sizes must sum to the middle block size")
    positive = replace(spec, density=Fraction(1))
    part_blocks = []
    for size in sizes:
        x = [_value(rng, positive) for _ in range(size)]
        phi = [_value(rng, positive) for _ in range(size)]
        part_blocks.append(rank_one_idempotent(x, phi))
    q = direct_sum(part_blocks)
    x0 = _raw(rng, spec, s1, s2)
    y_rows = [[_entry(rng, spec) for _ in range(s3)] for _ in range(s2)]
    for j in range(s3):
        # a zero column of Y would put that coordinate in the absolute kernel
        if not any(y_rows[i][j] for i in range(s2)):
            y_rows[rng.below(s2)][j] = _value(rng, positive)
    y0 = Matrix(y_rows, shape=(s2, s3))
    block_form = assemble_idempotent(x0, q, y0)
    if block_form @ block_form != block_form:
        raise InternalConsistencyError("assembled matrix is not idempotent")
    perm = rng.permutation(n)
    p = perm.images
    matrix = permute_similarity(block_form, perm)
    b1 = CoordIdeal.of(n, (p[i] for i in range(s1)))
    b2 = CoordIdeal.of(n, (p[i] for i in range(s1, s1 + s2)))
    b3 = CoordIdeal.of(n, (p[i] for i in range(s1 + s2, n)))
    parts = []
    off = s1
    for size in sizes:
        parts.append(CoordIdeal.of(n, (p[i] for i in range(off, off + size))))
        off += size
    return IdempotentInstance(matrix, b1, b2, b3, tuple(parts), tuple(part_blocks))


def gen_idempotent(spec: GenSpec) -> Matrix:
    return build_idempotent(spec).matrix
