"""Exact rational matrices, characteristic polynomials and permutations.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator). Matrices are immutable dense grids of fractions.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import DimensionError, NegativeEntryError, ParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer string exactly.

    Integers (but not floats) are accepted as-is. A denominator that is zero
    or negative is rejected rather than normalised.
    """
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ParseError(f"rational entries must be strings, got {type(text).__name__}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ParseError(f"not a rational: {text!r}")
    num, den = match.groups()
    if den is None:
        return Fraction(int(num))
    d = int(den)
    if d <= 0 or den.strip().startswith(("+", "-")):
        raise ParseError(f"denominator must be a positive integer: {text!r}")
    return Fraction(int(num), d)


def format_rational(x: Fraction) -> str:
    return str(x)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"exact entries must be int, Fraction or str, not {type(x).__name__}")


class Matrix:
    """Immutable dense matrix over the rationals.

    Most of the library works with square matrices (``m.n``); rectangular
    shapes exist for the blocks of idempotent decompositions.
    """

    __slots__ = ("_rows", "_shape", "_hash")

    def __init__(self, rows: Iterable[Iterable], shape: tuple[int, int] | None = None):
        data = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        if shape is None:
            if not data:
                raise DimensionError("empty matrix needs an explicit shape")
            shape = (len(data), len(data[0]))
        r, c = shape
        if len(data) != r or any(len(row) != c for row in data):
            raise DimensionError(f"ragged or mis-shaped matrix, expected {r}x{c}")
        self._rows = data
        self._shape = (r, c)
        self._hash = None

    # constructors

    @classmethod
    def _raw(cls, rows: tuple[tuple[Fraction, ...], ...], shape: tuple[int, int]) -> "Matrix":
        self = object.__new__(cls)
        self._rows = rows
        self._shape = shape
        self._hash = None
        return self

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), (rows, cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, z = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), (n, n))

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = [_as_fraction(v) for v in values]
        n = len(vals)
        z = Fraction(0)
        return cls._raw(tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), (n, n))

    @classmethod
    def outer(cls, x: Sequence, y: Sequence) -> "Matrix":
        xs = [_as_fraction(v) for v in x]
        ys = [_as_fraction(v) for v in y]
        return cls._raw(tuple(tuple(a * b for b in ys) for a in xs), (len(xs), len(ys)))

    # basic access

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def n(self) -> int:
        r, c = self._shape
        if r != c:
            raise DimensionError(f"matrix is {r}x{c}, not square")
        return r

    @property
    def is_square(self) -> bool:
        return self._shape[0] == self._shape[1]

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._rows[i][j]

    def __iter__(self) -> Iterator[tuple[Fraction, ...]]:
        return iter(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._shape == other._shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._shape, self._rows))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)
        return f"Matrix([{body}])"

    # arithmetic

    def _check_same_shape(self, other: "Matrix") -> None:
        if self._shape != other._shape:
            raise DimensionError(f"shape mismatch {self._shape} vs {other._shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self._rows, other._rows)),
            self._shape,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self._rows, other._rows)),
            self._shape,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in row) for row in self._rows), self._shape)

    def scale(self, c) -> "Matrix":
        c = _as_fraction(c)
        return Matrix._raw(tuple(tuple(c * a for a in row) for row in self._rows), self._shape)

    def __rmul__(self, c) -> "Matrix":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other: "Matrix") -> "Matrix":
        r, k = self._shape
        k2, c = other._shape
        if k != k2:
            raise DimensionError(f"cannot multiply {self._shape} by {other._shape}")
        cols = list(zip(*other._rows)) if k else [()] * c
        zero = Fraction(0)
        out = []
        for row in self._rows:
            nz = [(t, a) for t, a in enumerate(row) if a]
            if not nz:
                out.append((zero,) * c)
                continue
            out.append(tuple(sum((a * col[t] for t, a in nz), zero) for col in cols))
        return Matrix._raw(tuple(out), (r, c))

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Matrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        vec = [_as_fraction(x) for x in v]
        return tuple(sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self._rows)

    def transpose(self) -> "Matrix":
        r, c = self._shape
        return Matrix._raw(tuple(zip(*self._rows)) if r else tuple(() for _ in range(c)), (c, r))

    def abs(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(abs(a) for a in row) for row in self._rows), self._shape)

    def trace(self) -> Fraction:
        return sum((self._rows[i][i] for i in range(self.n)), Fraction(0))

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self._rows[i][i] for i in range(self.n))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return Matrix._raw(
            tuple(tuple(self._rows[i][j] for j in cols) for i in rows), (len(rows), len(cols))
        )

    def is_zero(self) -> bool:
        return not any(a for row in self._rows for a in row)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for row in self._rows for a in row)

    def require_nonnegative(self, what: str = "matrix") -> "Matrix":
        for i, row in enumerate(self._rows):
            for j, a in enumerate(row):
                if a < 0:
                    raise NegativeEntryError(f"{what} has negative entry {a} at ({i}, {j})")
        return self

    def is_upper_triangular(self) -> bool:
        return all(not self._rows[i][j] for i in range(self.n) for j in range(i))

    def common_denominator(self) -> int:
        d = 1
        for row in self._rows:
            for a in row:
                d = math.lcm(d, a.denominator)
        return d

    def to_float(self) -> np.ndarray:
        return np.array([[float(a) for a in row] for row in self._rows], dtype=float).reshape(self._shape)

    # serialization

    def to_json(self) -> dict:
        r, c = self._shape
        entries = [[format_rational(a) for a in row] for row in self._rows]
        if r == c:
            return {"n": r, "entries": entries}
        return {"rows": r, "cols": c, "entries": entries}

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        """Parse ``{"n": int, "entries": [[str, ...], ...]}``."""
        if not isinstance(obj, dict) or "entries" not in obj:
            raise ParseError("matrix JSON must be an object with an 'entries' field")
        entries = obj["entries"]
        if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
            raise ParseError("'entries' must be a list of lists")
        if "n" in obj:
            n = obj["n"]
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ParseError(f"'n' must be a positive integer, got {n!r}")
            shape = (n, n)
        elif "rows" in obj and "cols" in obj:
            shape = (int(obj["rows"]), int(obj["cols"]))
        else:
            raise ParseError("matrix JSON needs 'n'")
        if len(entries) != shape[0] or any(len(r) != shape[1] for r in entries):
            raise ParseError(f"'entries' does not match the declared shape {shape}")
        return cls._raw(tuple(tuple(parse_rational(x) for x in r) for r in entries), shape)


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    r = blocks[0].shape[0]
    if any(b.shape[0] != r for b in blocks):
        raise DimensionError("hstack row mismatch")
    rows = tuple(sum((b.rows[i] for b in blocks), ()) for i in range(r))
    return Matrix._raw(rows, (r, sum(b.shape[1] for b in blocks)))


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    c = blocks[0].shape[1]
    if any(b.shape[1] != c for b in blocks):
        raise DimensionError("vstack column mismatch")
    rows = sum((b.rows for b in blocks), ())
    return Matrix._raw(rows, (len(rows), c))


def diag_of_product(a: Matrix, b: Matrix) -> tuple[Fraction, ...]:
    """Diagonal of ``a @ b`` in O(n^2)."""
    n = a.n
    if b.n != n:
        raise DimensionError("dimension mismatch")
    brows = b.rows
    return tuple(
        sum((x * brows[k][i] for k, x in enumerate(a.rows[i]) if x), Fraction(0)) for i in range(n)
    )


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class CharPoly:
    """Monic polynomial, coefficients listed from the leading term down.

    ``coeffs[k]`` is the coefficient of ``x**(degree - k)``.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("characteristic polynomials are monic")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def monomial(cls, n: int) -> "CharPoly":
        return cls((Fraction(1),) + (Fraction(0),) * n)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "CharPoly":
        poly = cls((Fraction(1),))
        for r in roots:
            poly = poly * cls((Fraction(1), -_as_fraction(r)))
        return poly

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return CharPoly(tuple(out))

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def trace(self) -> Fraction:
        """Sum of the roots, i.e. minus the sub-leading coefficient."""
        return -self.coeffs[1] if self.degree else Fraction(0)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def __str__(self) -> str:
        d = self.degree
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            e = d - k
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "x" if e == 1 else f"x^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _berkowitz(a: list[list[int]]) -> list[int]:
    # Division-free; poly for the trailing principal submatrix a[k:, k:] is
    # built from the one for a[k+1:, k+1:] by a Toeplitz product.
    n = len(a)
    poly = [1]
    for k in range(n - 1, -1, -1):
        m = n - k - 1
        r = a[k][k + 1 :]
        sub = [row[k + 1 :] for row in a[k + 1 :]]
        v = [a[i][k] for i in range(k + 1, n)]
        t = [1, -a[k][k]]
        for _ in range(m):
            t.append(-sum(x * y for x, y in zip(r, v)))
            v = [sum(x * y for x, y in zip(row, v)) for row in sub]
        poly = [
            sum(t[i - j] * poly[j] for j in range(min(i, m) + 1)) for i in range(m + 2)
        ]
    return poly


def char_poly(m: Matrix) -> CharPoly:
    """det(xI - m) with exact coefficients.

    The matrix is scaled to an integer matrix by its common denominator d and
    fed to Berkowitz's division-free recursion; the k-th coefficient is then
    divided by d**k.
    """
    if not m.is_square:
        raise DimensionError(f"char_poly needs a square matrix, got {m.shape}")
    d = m.common_denominator()
    ints = [[int(x * d) for x in row] for row in m.rows]
    coeffs = _berkowitz(ints)
    return CharPoly(tuple(Fraction(c, d**k) for k, c in enumerate(coeffs)))


def is_nilpotent(m: Matrix) -> bool:
    """True iff m**n is exactly zero."""
    return (m ** m.n).is_zero()


def root_multiplicity(p: CharPoly, lam) -> int:
    """Largest k with (x - lam)**k dividing p, by repeated synthetic division."""
    lam = _as_fraction(lam)
    coeffs = list(p.coeffs)
    k = 0
    while len(coeffs) > 1:
        quotient = [coeffs[0]]
        for c in coeffs[1:]:
            quotient.append(c + quotient[-1] * lam)
        if quotient[-1] != 0:
            break
        coeffs = quotient[:-1]
        k += 1
    return k


def rank(m: Matrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination on an integer copy.

    Rows are cleared of denominators individually, which leaves the rank
    unchanged.
    """
    rows: list[list[int]] = []
    for row in m.rows:
        d = 1
        for a in row:
            d = math.lcm(d, a.denominator)
        rows.append([int(a * d) for a in row])
    nrows, ncols = m.shape
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            rows[i] = [(p * rows[i][j] - f * rows[r][j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """Bijection of {0, ..., n-1}; ``images[i]`` is where index i is sent.

    As a matrix, P e_i = e_{images[i]}, so conjugation gives
    (P m P^-1)[images[i]][images[j]] == m[i][j].
    """

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation: {imgs}")
        object.__setattr__(self, "images", imgs)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Permutation":
        """Permutation placing ``order[k]`` at position k."""
        images = [0] * len(order)
        for pos, old in enumerate(order):
            images[old] = pos
        return cls(tuple(images))

    def order(self) -> tuple[int, ...]:
        """Inverse view: which original index lands at each position."""
        return self.inverse().images

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, p in enumerate(self.images):
            inv[p] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other."""
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.n)))

    def matrix(self) -> Matrix:
        z, one = Fraction(0), Fraction(1)
        rows = [[z] * self.n for _ in range(self.n)]
        for i, p in enumerate(self.images):
            rows[p][i] = one
        return Matrix(rows)

    def to_json(self) -> list[int]:
        return list(self.images)


def permute_similarity(m: Matrix, p: Permutation) -> Matrix:
    """P m P^-1: rows and columns reindexed simultaneously by p."""
    n = m.n
    if p.n != n:
        raise DimensionError(f"permutation of size {p.n} applied to {n}x{n} matrix")
    src = p.order()
    rows = m.rows
    return Matrix._raw(tuple(tuple(rows[src[i]][src[j]] for j in range(n)) for i in range(n)), (n, n))


# ---------------------------------------------------------------------------
# float reporting aid


class SpectralRadiusEstimate(NamedTuple):
    value: float
    converged: bool
    iterations: int

    def to_json(self) -> dict:
        return {"value": self.value, "converged": self.converged, "iterations": self.iterations}


def _power(b: np.ndarray, budget: int, rtol: float) -> tuple[float, bool, int]:
    x = np.ones(b.shape[0])
    prev = None
    lam = 0.0
    for it in range(1, budget + 1):
        y = b @ x
        lam = float(np.max(y))
        if lam == 0.0:
            return 0.0, True, it
        pos = x > 0
        ratios = y[pos] / x[pos]
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= rtol * hi:
            return hi, True, it
        if prev is not None and abs(lam - prev) <= rtol * lam:
            return lam, True, it
        prev = lam
        x = y / lam
    return lam, False, budget


def spectral_radius_estimate(
    m: Matrix, rtol: float = 1e-12, max_iter: int = 100_000
) -> SpectralRadiusEstimate:
    """Power-iteration estimate of r(|m|). Reporting only.

    Starts from the all-ones vector and stops when the Collatz-Wielandt
    bracket or the step-to-step change falls below ``rtol``. If half the
    budget passes without that (typically a periodic pattern), the iteration
    restarts on I + |m|, whose Perron root 1 + r(|m|) strictly dominates.
    An estimate that never settles is returned with ``converged=False``.
    """
    a = np.abs(m.to_float())
    first = max_iter // 2
    lam, ok, used = _power(a, first, rtol)
    if ok:
        return SpectralRadiusEstimate(lam, True, used)
    lam, ok, more = _power(a + np.eye(a.shape[0]), max_iter - first, rtol)
    return SpectralRadiusEstimate(max(lam - 1.0, 0.0), ok, used + more)
