import random

import pytest

from hecke5.golden_ring import GoldenInt, Modulus, RAMIFIED_PRIME
from hecke5.hecke_matrices import delta_m, eval_word, word
from hecke5.quotients import (
    QuotientCapError, build_quotient, check_elementary_abelian,
    kernel_subgroup, normal_closure, residue_ambient, sl2_enumeration_order,
    sl_index_formula, subgroup_closure,
)


def q(n, projective=True):
    mod = Modulus.rational(n) if isinstance(n, int) else Modulus.ideal(n)
    return build_quotient(mod, projective=projective)


class TestOrders:
    def test_mod_2(self):
        group = q(2)
        assert group.order == 10
        hist = group.order_histogram()
        assert set(hist) <= {1, 2, 5}
        assert hist == {1: 1, 2: 5, 5: 4}

    @pytest.mark.parametrize("mod,expected", [
        (2, 10), (3, 60), (4, 160), (6, 600), (8, 10240),
    ])
    def test_rational(self, mod, expected):
        assert q(mod).order == expected

    def test_ideal_above_five(self):
        assert q(RAMIFIED_PRIME).order == 60

    def test_homogeneous_mod_6(self):
        assert q(6, projective=False).order == 1200

    def test_trivial(self):
        assert q(1).order == 1

    def test_ring_cap(self):
        with pytest.raises(QuotientCapError):
            build_quotient(Modulus.rational(10**9))


class TestLagrange:
    @pytest.mark.parametrize("mod", [2, 3, 4, 6, 8])
    def test_subgroups_divide(self, mod):
        group = q(mod)
        rng = random.Random(mod)
        elems = sorted(group.elements)
        for _ in range(5):
            seeds = rng.sample(elems, k=min(2, len(elems)))
            h = subgroup_closure(group, seeds)
            assert group.order % h.order == 0

    @pytest.mark.parametrize("mod", [4, 6, 8])
    def test_kernels_divide(self, mod):
        group = q(mod)
        for d in range(1, mod + 1):
            if mod % d:
                continue
            k = kernel_subgroup(group, Modulus.rational(d))
            assert group.order % k.order == 0


class TestKernelLadder:
    def test_two_to_four(self):
        k = kernel_subgroup(q(4), Modulus.rational(2))
        assert k.order == 16
        assert check_elementary_abelian(k, 2)

    def test_six_to_twelve(self):
        k = kernel_subgroup(q(12), Modulus.rational(6))
        assert k.order == 32

    def test_ideal_ladder(self):
        pi = RAMIFIED_PRIME
        four_pi = Modulus.ideal(pi * GoldenInt(4, 0))
        group = build_quotient(four_pi)
        k = kernel_subgroup(group, Modulus.ideal(pi * GoldenInt(2, 0)))
        assert k.order == 32

    def test_kernel_requires_divisor(self):
        with pytest.raises(ValueError):
            kernel_subgroup(q(6), Modulus.rational(4))


class TestNormalClosures:
    def test_t2_mod_4(self):
        group = q(4)
        h = normal_closure(group, [eval_word(word([("T", 2)]))])
        assert h.order == 16
        assert h.members == kernel_subgroup(group, Modulus.rational(2)).members

    def test_t2_mod_8(self):
        group = q(8)
        h = normal_closure(group, [eval_word(word([("T", 2)]))])
        assert h.order == 1024

    def test_t4_mod_8_strict(self):
        group = q(8)
        h = normal_closure(group, [eval_word(word([("T", 4)]))])
        k = kernel_subgroup(group, Modulus.rational(4))
        assert h.order == 32 and k.order == 64
        assert h.members < k.members

    def test_t3_mod_6(self):
        group = q(6)
        h = normal_closure(group, [eval_word(word([("T", 3)]))])
        assert h.order == 10
        assert h.members == kernel_subgroup(group, Modulus.rational(3)).members

    def test_t2_mod_6(self):
        group = q(6)
        h = normal_closure(group, [eval_word(word([("T", 2)]))])
        assert h.order == 60


def test_t4_mod_16_contains_level8_kernel():
    group = q(16)
    h = normal_closure(group, [eval_word(word([("T", 4)]))])
    k = kernel_subgroup(group, Modulus.rational(8))
    assert k.members <= h.members


class TestIndexFormula:
    @pytest.mark.parametrize("mod,expected", [
        (Modulus.rational(2), 60),
        (Modulus.rational(3), 720),
        (Modulus.ideal(RAMIFIED_PRIME), 120),
        (Modulus.rational(4), 3840),
    ])
    def test_formula_matches_enumeration(self, mod, expected):
        assert sl_index_formula(mod) == expected
        assert sl2_enumeration_order(mod) == expected


def test_lazy_ambient_closure():
    amb = residue_ambient(Modulus.rational(25), projective=True)
    h = subgroup_closure(amb, delta_m(5))
    assert h.order == 5**6
    assert check_elementary_abelian(h, 5)
    with pytest.raises(ValueError):
        amb.order


def test_disk_cache_roundtrip(tmp_path):
    mod = Modulus.rational(3)
    first = build_quotient(mod, cache_dir=tmp_path)
    again = build_quotient(mod, cache_dir=tmp_path)
    assert first.elements == again.elements
    assert first.gen_S == again.gen_S and first.gen_T == again.gen_T
    assert len(list(tmp_path.iterdir())) == 1
