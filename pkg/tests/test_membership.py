import math
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from grpspec.arith import factor, k_i, r_i
from grpspec.errors import InvalidInput
from grpspec.membership import (
    OrderComponent,
    adjacent_in_gamma_L2,
    mem_linear2,
    mem_power,
    min_cover_sum,
)
from grpspec.spectrum import contains, exponent_of, mu_linear_unitary, mu_power
from grpspec.verify import adjacency_criteria_check, substitution_check


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def brute_min_cover(orders):
    return min(sum(math.lcm(*block) for block in p) for p in set_partitions(list(orders)))


def test_min_cover_examples():
    assert min_cover_sum([]) == 0
    assert min_cover_sum([OrderComponent(7, 3)]) == 3
    assert min_cover_sum([OrderComponent(7, 3), OrderComponent(5, 4)]) == 7


def test_order_component():
    assert OrderComponent.of(3, 2) == OrderComponent(9, 6)
    assert OrderComponent.of(31) == OrderComponent(31, 5)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=40), max_size=7))
def test_min_cover_matches_set_partition_enumeration(orders):
    comps = [OrderComponent(0, d) for d in orders]
    expected = brute_min_cover(orders) if orders else 0
    assert min_cover_sum(comps) == expected


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=40), max_size=6), st.integers(min_value=1, max_value=40))
def test_min_cover_monotone(orders, extra):
    base = [OrderComponent(0, d) for d in orders]
    assert min_cover_sum(base + [OrderComponent(0, extra)]) >= min_cover_sum(base)


def test_mem_linear2_examples():
    assert mem_linear2(15, 4)
    assert not mem_linear2(32, 16)
    assert mem_linear2(r_i(2, 33) * r_i(2, 31), 64)
    with pytest.raises(InvalidInput):
        mem_linear2(0, 4)


def test_mem_power_examples():
    assert mem_power(105, 4, 2)
    assert not mem_power(420, 4, 2)
    assert mem_power(420, 4, 3)
    for x in (1, 15, 60, 105, 8, 2**5 * 31):
        assert mem_power(x, 12, 1) == mem_linear2(x, 12)


def test_adjacency_examples():
    assert adjacent_in_gamma_L2(7, 31, 8)
    assert not adjacent_in_gamma_L2(73, 257, 16)
    assert adjacent_in_gamma_L2(3, 5, 4)
    with pytest.raises(InvalidInput):
        adjacent_in_gamma_L2(3, 3, 4)
    with pytest.raises(InvalidInput):
        adjacent_in_gamma_L2(3, 31, 4)


def divisors(f):
    out = [1]
    for p, e in f.entries:
        out = [d * p**k for d in out for k in range(e + 1)]
    return out


@pytest.mark.parametrize("n", range(2, 15))
def test_oracle_agrees_with_mu_on_exponent_divisors(n):
    mu = mu_linear_unitary(n, 2)
    fe = factor(exponent_of(mu))
    # divisors built from at most 4 of the maximal prime powers
    for chosen in range(0, min(4, len(fe)) + 1):
        for sub in combinations(fe.entries, chosen):
            x = math.prod(p**e for p, e in sub)
            assert mem_linear2(x, n) == contains(mu, x), (n, x)
    for x in divisors(fe):
        assert mem_linear2(x, n) == contains(mu, x), (n, x)


@pytest.mark.parametrize("n", range(2, 9))
def test_power_oracle_agrees_with_mu_square(n):
    mu = mu_linear_unitary(n, 2)
    sq = mu_power(mu, 2)
    for x in divisors(factor(exponent_of(sq))):
        assert mem_power(x, n, 2) == contains(sq, x), (n, x)


def test_power_oracle_agrees_with_mu_cube_small():
    for n in (4, 5, 6):
        mu = mu_linear_unitary(n, 2)
        cube = mu_power(mu, 3)
        for x in divisors(factor(exponent_of(cube))):
            assert mem_power(x, n, 3) == contains(cube, x)


@pytest.mark.parametrize("n", [10, 12, 14])
def test_primitive_part_substitution(n):
    rep = substitution_check(n, 3)
    assert rep.passed, rep.details
    assert rep.params["checked"] > 0


@pytest.mark.parametrize("n", [8, 16])
def test_order_based_adjacency_rules(n):
    rep = adjacency_criteria_check(n, mu_linear_unitary(n, 2))
    assert rep.passed, rep.details


def test_large_n_adjacency_by_orders():
    # at n = 64 two primes with orders 40 and 24 fit in one partition, 40 and 33 do not
    assert adjacent_in_gamma_L2(r_i(2, 40), r_i(2, 24), 64)
    assert not adjacent_in_gamma_L2(r_i(2, 40), r_i(2, 33), 64)
    # 33 = 3 * 11 contains 11: divisibility lets both share one part
    assert adjacent_in_gamma_L2(r_i(2, 33), r_i(2, 11), 64)


def test_k_i_substitution_is_nontrivial():
    # orders 3, 4, 5 need 3 + 4 + 5 = 12 > 10, but 12 <= 12
    assert not mem_linear2(7 * 5 * 31, 10)
    assert not mem_linear2(k_i(2, 3) * k_i(2, 4) * k_i(2, 5), 10)
    assert mem_linear2(7 * 5 * 31, 12)
    assert mem_linear2(k_i(2, 3) * k_i(2, 4) * k_i(2, 5), 12)
