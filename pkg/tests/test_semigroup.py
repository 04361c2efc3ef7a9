from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticetri.errors import DimensionError, NegativeEntryError
from latticetri.exact import Matrix, char_poly, diag_of_product, permute_similarity
from latticetri.fixtures import SIGNED_A, SIGNED_B, cyclic_generators
from latticetri.generate import GenSpec, gen_semigroup_framed
from latticetri.semigroup import (
    diag_commutator_condition,
    generate_closure,
    quasinilpotent_semigroup_check,
    semigroup_pipeline,
)

JORDAN = Matrix([[0, 1], [0, 0]])
nonneg = st.sampled_from([Fraction(0)] * 3 + [Fraction(1), Fraction(2), Fraction(1, 2)])


class TestClosure:
    def test_identity(self):
        c = generate_closure([Matrix.identity(2)], 3)
        assert c.complete and len(c.elements) == 1

    def test_jordan(self):
        c = generate_closure([JORDAN], 5)
        assert c.complete
        assert set(c.matrices) == {JORDAN, Matrix.zeros(2)}
        assert [e.word for e in c.elements] == [(0,), (0, 0)]

    def test_truncated(self):
        c = generate_closure([Matrix([[1, 1], [0, 1]])], 3)
        assert not c.complete and len(c.elements) == 3

    def test_cyclic_contains_corner_projection(self):
        gens = cyclic_generators(4)
        c = generate_closure(gens, 4)
        e00 = Matrix.outer([1, 0, 0, 0], [1, 0, 0, 0])
        assert e00 in c.matrices
        assert not c.complete

    def test_words_reproduce_elements(self):
        gens = cyclic_generators(3)
        for m, word in generate_closure(gens, 4).elements:
            p = gens[word[0]]
            for k in word[1:]:
                p = p @ gens[k]
            assert p == m

    def test_errors(self):
        with pytest.raises(DimensionError):
            generate_closure([], 2)
        with pytest.raises(DimensionError):
            generate_closure([Matrix.identity(2), Matrix.identity(3)], 2)
        with pytest.raises(ValueError):
            generate_closure([JORDAN], 0)
        with pytest.raises(ValueError):
            generate_closure([Matrix([[1, 1], [0, 1]])], 50, max_elements=10)


class TestDiagCondition:
    def test_cyclic_depth_one(self):
        assert diag_commutator_condition(generate_closure(cyclic_generators(4), 1)).holds

    def test_cyclic_depth_four(self):
        cond = diag_commutator_condition(generate_closure(cyclic_generators(4), 4))
        assert not cond.holds
        s_word, t_word = cond.pair
        assert max(len(s_word), len(t_word)) <= 4

    def test_pair_count(self):
        c = generate_closure([Matrix.identity(2)], 2)
        assert diag_commutator_condition(c).checked_pairs == 1

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 4).flatmap(
        lambda n: st.tuples(*[st.lists(st.lists(nonneg, min_size=n, max_size=n), min_size=n, max_size=n)] * 2)
    ))
    def test_diag_of_product(self, pair):
        s, t = Matrix(pair[0]), Matrix(pair[1])
        assert diag_of_product(s, t) == (s @ t).diagonal()


class TestPipeline:
    def test_identity(self):
        v = semigroup_pipeline([Matrix.identity(3)], 4)
        assert v.commonly_triangularizable and v.hypothesis_scope == "complete-closure"

    def test_cyclic(self):
        v = semigroup_pipeline(cyclic_generators(4), 4)
        assert v.each_triangularizable
        assert not v.diag_condition
        assert not v.commonly_triangularizable
        assert v.counterexample_pair is not None

    def test_signed_rejected(self):
        with pytest.raises(NegativeEntryError):
            semigroup_pipeline([SIGNED_A, SIGNED_B], 2)

    def test_signed_companion(self):
        v = semigroup_pipeline([Matrix.zeros(4), SIGNED_A.abs(), SIGNED_B], 2)
        assert not v.commonly_triangularizable
        assert not v.each_triangularizable
        assert v.non_triangularizable_word is not None

    @pytest.mark.parametrize("seed", range(25))
    def test_framed(self, seed):
        spec = GenSpec(n=4, mode="semigroup-framed", seed=seed)
        gens = gen_semigroup_framed(spec, 3)
        v = semigroup_pipeline(gens, 2)
        assert v.each_triangularizable and v.diag_condition and v.commonly_triangularizable
        for g in gens:
            assert permute_similarity(g, v.permutation).is_upper_triangular()

    def test_json(self):
        obj = semigroup_pipeline([JORDAN], 3).to_json()
        assert obj["commonly_triangularizable"] is True
        assert obj["closure"]["complete"] is True


class TestQuasinilpotent:
    def test_jordan(self):
        assert quasinilpotent_semigroup_check(generate_closure([JORDAN], 3))

    def test_identity(self):
        assert not quasinilpotent_semigroup_check(generate_closure([Matrix.identity(2)], 2))

    def test_cyclic(self):
        assert not quasinilpotent_semigroup_check(generate_closure(cyclic_generators(4), 6))

    @pytest.mark.parametrize("seed", range(20))
    def test_strict_framed(self, seed):
        gens = gen_semigroup_framed(GenSpec(n=4, mode="semigroup-framed", seed=seed), 2, strict=True)
        assert quasinilpotent_semigroup_check(generate_closure(gens, 4))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(*[st.lists(st.lists(nonneg, min_size=n, max_size=n), min_size=n, max_size=n)] * 2)
))
def test_char_poly_commutes(pair):
    s, t = Matrix(pair[0]), Matrix(pair[1])
    assert char_poly(s @ t) == char_poly(t @ s)
