from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticetri.diagonal import (
    Partition,
    atomic_diagonal,
    diagonal_band_projection_check,
    max_row_sum_norm,
    restricted_growth_strings,
    schep_oracle,
    set_partitions,
    voigt_contraction_check,
)
from latticetri.errors import DimensionError, NegativeEntryError
from latticetri.exact import Matrix
from latticetri.fixtures import cyclic_generators
from oracles import bell

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)
nonneg = st.fractions(min_value=0, max_value=4, max_denominator=3)


@st.composite
def matrices(draw, elements=entries, n_max=5):
    n = draw(st.integers(1, n_max))
    return Matrix([[draw(elements) for _ in range(n)] for _ in range(n)])


class TestPartitions:
    @pytest.mark.parametrize("n", range(0, 8))
    def test_bell_numbers(self, n):
        strings = list(restricted_growth_strings(n))
        assert len(strings) == bell(n)
        assert len(set(strings)) == len(strings)
        assert strings == sorted(strings)

    def test_rgs_brute_force(self):
        # every string in {0..n-1}^n satisfying the growth rule, enumerated directly
        n = 5
        brute = [
            s for s in product(range(n), repeat=n)
            if s[0] == 0 and all(s[i] <= 1 + max(s[:i]) for i in range(1, n))
        ]
        assert list(restricted_growth_strings(n)) == brute

    def test_canonical_order(self):
        blocks = [p.blocks for p in set_partitions(3)]
        assert blocks == [
            ((0, 1, 2),),
            ((0, 1), (2,)),
            ((0, 2), (1,)),
            ((0,), (1, 2)),
            ((0,), (1,), (2,)),
        ]

    def test_projections_sum_to_identity(self):
        for p in set_partitions(4):
            projs = p.projections()
            total = projs[0]
            for q in projs[1:]:
                total = total + q
            assert total == Matrix.identity(4)
            assert all(q @ q == q for q in projs)

    def test_compress_matches_projection_sum(self):
        m = Matrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        for p in set_partitions(3):
            acc = Matrix.zeros(3)
            for q in p.projections():
                acc = acc + q @ m @ q
            assert p.compress(m) == acc

    def test_invalid(self):
        with pytest.raises(ValueError):
            Partition(((0,), (0, 1)))


class TestAtomicDiagonal:
    def test_identity(self):
        assert atomic_diagonal(Matrix.identity(3)) == Matrix.identity(3)

    def test_cyclic_generators(self):
        for a in cyclic_generators(4):
            assert atomic_diagonal(a).is_zero()

    def test_definition(self):
        assert atomic_diagonal(Matrix([[1, 2], [3, 4]])) == Matrix([[1, 0], [0, 4]])

    @settings(max_examples=100, deadline=None)
    @given(matrices())
    def test_trace_and_idempotence(self, m):
        d = atomic_diagonal(m)
        assert d.trace() == m.trace()
        assert atomic_diagonal(d) == d


class TestSchep:
    def test_one_by_one(self):
        assert schep_oracle(Matrix([[3]])) == Matrix([[3]])

    def test_all_ones(self):
        assert schep_oracle(Matrix([[1, 1], [1, 1]])) == Matrix([[1, 0], [0, 1]])

    def test_guards(self):
        with pytest.raises(DimensionError):
            schep_oracle(Matrix.identity(13))
        with pytest.raises(NegativeEntryError):
            schep_oracle(Matrix([[1, -1], [0, 1]]))

    @settings(max_examples=100, deadline=None)
    @given(matrices(elements=nonneg))
    def test_equals_atomic_diagonal(self, m):
        assert schep_oracle(m) == atomic_diagonal(m)

    def test_infimum_is_lower_bound_and_attained(self):
        m = Matrix([[1, 2, 0], [3, 4, 5], [0, 6, 7]])
        inf = schep_oracle(m)
        comps = [p.compress(m) for p in set_partitions(3)]
        assert all((c - inf).is_nonnegative() for c in comps)
        assert inf in comps


class TestVoigt:
    def test_identity(self):
        assert tuple(voigt_contraction_check(Matrix.identity(3))) == (1, 1, True)

    def test_small(self):
        assert tuple(voigt_contraction_check(Matrix([[1, 2], [3, 4]]))) == (4, 7, True)

    def test_norm_uses_absolute_values(self):
        assert max_row_sum_norm(Matrix([[1, -2], [0, Fraction(1, 2)]])) == 3

    @settings(max_examples=150, deadline=None)
    @given(matrices())
    def test_contraction(self, m):
        dn, mn, ok = voigt_contraction_check(m)
        assert ok and dn <= mn


class TestBandProjection:
    def test_identity(self):
        assert diagonal_band_projection_check(Matrix.identity(3))

    def test_fixed_point(self):
        d = Matrix.identity(4)
        assert atomic_diagonal(d) == d
        assert diagonal_band_projection_check(d, d)

    @settings(max_examples=100, deadline=None)
    @given(matrices(elements=nonneg), matrices(elements=entries))
    def test_properties(self, m, other):
        if other.n == m.n:
            assert diagonal_band_projection_check(m, other)
        assert diagonal_band_projection_check(m)
