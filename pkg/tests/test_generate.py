from fractions import Fraction

import pytest

from latticetri.errors import InvalidSpecError
from latticetri.exact import Matrix
from latticetri.generate import (
    GenSpec,
    SplitMix64,
    assemble_idempotent,
    build_idempotent,
    direct_sum,
    gen_matrix,
    gen_semigroup_framed,
    rank_one_idempotent,
)
from latticetri.idempotent import verify_idempotent
from latticetri.triangular import criteria_equivalence


class TestSplitMix64:
    def test_reference_stream(self):
        # published reference outputs for seed 0
        rng = SplitMix64(0)
        assert [rng.next_u64() for _ in range(3)] == [
            0xE220A8397B1DCDAF,
            0x6E789E6AA1B965F4,
            0x06C45D188009454F,
        ]

    def test_below_range(self):
        rng = SplitMix64(7)
        draws = [rng.below(6) for _ in range(600)]
        assert set(draws) == set(range(6))

    def test_permutation_is_bijection(self):
        rng = SplitMix64(5)
        for n in range(1, 8):
            assert sorted(rng.permutation(n).images) == list(range(n))

    def test_composition(self):
        rng = SplitMix64(9)
        for total in range(1, 10):
            parts = rng.composition(total)
            assert sum(parts) == total and all(p >= 1 for p in parts)

    def test_chance_extremes(self):
        rng = SplitMix64(1)
        assert not any(rng.chance(Fraction(0)) for _ in range(50))
        assert all(rng.chance(Fraction(1)) for _ in range(50))


class TestGenMatrix:
    @pytest.mark.parametrize("mode", ["raw", "triangularizable", "idempotent", "semigroup-framed"])
    def test_deterministic(self, mode):
        spec = GenSpec(n=5, mode=mode, seed=123)
        assert gen_matrix(spec) == gen_matrix(spec)
        assert gen_matrix(spec).is_nonnegative()

    def test_seeds_differ(self):
        assert gen_matrix(GenSpec(n=5, seed=1)) != gen_matrix(GenSpec(n=5, seed=2))

    def test_density_zero(self):
        assert gen_matrix(GenSpec(n=4, density=0)).is_zero()

    def test_density_one(self):
        m = gen_matrix(GenSpec(n=4, density=1))
        assert all(a > 0 for row in m.rows for a in row)

    def test_value_bounds(self):
        spec = GenSpec(n=6, density=1, value_range=(1, 2), max_denominator=4)
        for seed in range(10):
            m = gen_matrix(GenSpec(**{**spec.__dict__, "seed": seed}))
            assert all(1 <= a <= 2 and a.denominator <= 4 for row in m.rows for a in row)

    @pytest.mark.parametrize("seed", range(30))
    def test_triangularizable_mode(self, seed):
        assert criteria_equivalence(gen_matrix(GenSpec(n=6, mode="triangularizable", seed=seed))).triangularizable

    @pytest.mark.parametrize("seed", range(30))
    def test_idempotent_mode(self, seed):
        assert verify_idempotent(gen_matrix(GenSpec(n=6, mode="idempotent", seed=seed)))

    def test_framed_count(self):
        assert len(gen_semigroup_framed(GenSpec(n=3, mode="semigroup-framed"), 4)) == 4


class TestIdempotentAssembly:
    def test_all_ones_blocks(self):
        one = Matrix([[1]])
        assert assemble_idempotent(one, one, one) == Matrix([[0, 1, 1], [0, 1, 1], [0, 0, 0]])

    def test_identity_when_only_unit_parts(self):
        inst = build_idempotent(GenSpec(n=4, mode="idempotent", seed=0, blocks=(0, 4, 0), part_sizes=(1, 1, 1, 1)))
        assert inst.matrix == Matrix.identity(4)

    def test_rank_one_normalized(self):
        m = rank_one_idempotent([Fraction(1), Fraction(2)], [Fraction(3), Fraction(1)])
        assert m @ m == m and m.trace() == 1

    def test_direct_sum(self):
        assert direct_sum([Matrix([[1]]), Matrix([[2]])]) == Matrix.diag([1, 2])

    def test_layout_recorded(self):
        inst = build_idempotent(GenSpec(n=7, mode="idempotent", seed=4, blocks=(2, 3, 2), part_sizes=(2, 1)))
        assert (len(inst.b1.members), len(inst.b2.members), len(inst.b3.members)) == (2, 3, 2)
        assert [len(p.members) for p in inst.parts] == [2, 1]


class TestSpecValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 0},
            {"n": 3, "mode": "banana"},
            {"n": 3, "density": Fraction(3, 2)},
            {"n": 3, "value_range": (2, 1)},
            {"n": 3, "value_range": (-1, 1)},
            {"n": 3, "value_range": (0, Fraction(1, 5)), "max_denominator": 2},
            {"n": 3, "seed": -1},
            {"n": 3, "blocks": (1, 1, 2)},
            {"n": 3, "blocks": (1, 0, 2)},
            {"n": 3, "blocks": (1, 2, 0), "part_sizes": (1,)},
            {"n": 3, "part_sizes": (0, 3)},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(InvalidSpecError):
            GenSpec(**kwargs)

    def test_framed_k(self):
        with pytest.raises(InvalidSpecError):
            gen_semigroup_framed(GenSpec(n=3), 0)

    def test_json(self):
        obj = GenSpec(n=3, seed=9).to_json()
        assert obj["seed"] == 9 and obj["density"] == "1/2" and obj["value_range"] == ["0", "4"]
