from itertools import product

import pytest

from hecke5.modular_oracle import (
    build_sl2_quotient, check_d2_generators, check_lemma_d1, check_lemma_d2,
    check_wohlfahrt_instance, d2_closure_order, reduction_kernel_order,
)


def brute_force_order(n):
    count = 0
    for a, b, c, d in product(range(n), repeat=4):
        if (a * d - b * c) % n == 1 % n:
            count += 1
    return count


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_group_order_matches_brute_force(n):
    assert build_sl2_quotient(n).order == brute_force_order(n)


def test_known_orders():
    assert build_sl2_quotient(2).order == 6
    assert build_sl2_quotient(3).order == 24
    assert build_sl2_quotient(4).order == 48
    assert build_sl2_quotient(5).order == 120


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_unipotent_pair_generates(p):
    assert check_lemma_d1(p)


@pytest.mark.parametrize("m,p", [(2, 2), (2, 3), (3, 2), (6, 2), (1, 5)])
def test_closure_equals_kernel(m, p):
    assert check_lemma_d2(m, p)


def test_closure_orders():
    assert d2_closure_order(2, 2) == 8
    assert d2_closure_order(2, 3) == 24
    assert d2_closure_order(1, 5) == build_sl2_quotient(5).order


@pytest.mark.parametrize("r,s", [(2, 2), (3, 2), (2, 3)])
def test_wohlfahrt_instances(r, s):
    assert check_wohlfahrt_instance(r, s)


@pytest.mark.parametrize("m,p", [(2, 2), (3, 3), (4, 2)])
def test_kernel_generator_triple(m, p):
    assert check_d2_generators(m, p)


def test_kernel_generator_triple_needs_divisibility():
    with pytest.raises(ValueError):
        check_d2_generators(3, 2)


def test_kernel_orders():
    assert reduction_kernel_order(4, 2) == 8
    assert reduction_kernel_order(6, 2) == build_sl2_quotient(6).order // 6
    assert reduction_kernel_order(6, 6) == 1
    with pytest.raises(ValueError):
        reduction_kernel_order(6, 4)
