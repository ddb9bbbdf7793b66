import json
import math
from itertools import product as cartesian

import pytest
from hypothesis import given, settings, strategies as st

from grpspec.errors import EnumerationLimitExceeded, InvalidInput
from grpspec.groups import Cyclic, Linear, Product, Symplectic, parse
from grpspec.oracles import gl2_element_orders, alternating_element_orders, psp_element_orders
from grpspec.spectrum import (
    MuSet,
    antichain,
    contains,
    exponent_of,
    linear_unitary_generators,
    mu_linear_unitary,
    mu_of,
    mu_power,
    mu_product,
    mu_symplectic,
    partitions,
    spectra_equal,
    symplectic_generators,
)


def maximal_by_divisibility(values):
    vs = set(values)
    return sorted(v for v in vs if not any(w != v and w % v == 0 for w in vs))


# -- grammar -----------------------------------------------------------------


def test_parse_atoms():
    assert parse("L(4,2)") == Linear(4, 2, 1)
    assert parse("U(3,4)") == Linear(3, 4, -1)
    assert parse("S(4,5)") == Symplectic(2, 5)
    assert parse("Z(7)") == Cyclic(7)


def test_parse_products_and_powers():
    g = parse(" L(4,2)^2 * Z(3) ")
    assert g == Product(((Linear(4, 2), 2), (Cyclic(3), 1)))
    assert parse("L(4,2)^1") == Linear(4, 2)
    assert parse("(L(3,2)*Z(2))^2") == Product(((Product(((Linear(3, 2), 1), (Cyclic(2), 1))), 2),))


@pytest.mark.parametrize("bad", ["", "L(4)", "L(4,6)", "S(5,3)", "S(4,2)", "L(4,2)^0", "L(4,2) L(3,2)", "X(3)", "Z(0)"])
def test_parse_errors(bad):
    with pytest.raises(InvalidInput):
        parse(bad)


# -- linear and unitary ------------------------------------------------------


def test_mu_linear_examples():
    assert mu_linear_unitary(3, 2, 1).values == (3, 4, 7)
    assert mu_linear_unitary(4, 2, 1).values == (4, 6, 7, 15)
    assert mu_linear_unitary(3, 4, -1).values == (4, 10, 13, 15)


def test_mu_linear_gcd_denominators():
    # d = (3, 4 - 1) = 3 divides items (i), (ii), (iv)
    assert mu_linear_unitary(3, 4, 1).values == (3, 4, 5, 7)
    assert mu_linear_unitary(3, 5, 1).values == (20, 24, 31)
    # U_4(3): d = (4, 4) = 4; generator list by hand:
    # (i) 80/16 = 5; (ii) (1,3): [4,28]/(4,4) = 7, (2,2): [8,8]/(2,4) = 4;
    # (iii) [4,8] = 8, [4] = 4; (iv) 3*(8/4) = 6 for n1 = 2; (v) 3*[4] = 12;
    # (vi) 9 since 3 + 1 = 4
    assert mu_linear_unitary(4, 3, -1).values == (5, 7, 8, 9, 12)


def test_linear_generator_items_for_l32():
    items = {}
    for item, f in linear_unitary_generators(3, 2):
        items.setdefault(item, set()).add(f.value)
    assert items == {"i": {7}, "ii": {3}, "iii": {1}, "iv": {2}, "vi": {4}}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_linear_q2_agrees_with_matrix_enumeration(n):
    count, orders = gl2_element_orders(n)
    assert count == [6, 168, 20160][n - 2]
    assert mu_linear_unitary(n, 2).values == tuple(maximal_by_divisibility(orders))


def test_l42_agrees_with_alt8():
    count, orders = alternating_element_orders(8)
    assert count == 20160
    assert mu_linear_unitary(4, 2).values == tuple(maximal_by_divisibility(orders))


@pytest.mark.parametrize("n", [4, 8, 16])
def test_two_part_of_linear2(n):
    l = n.bit_length() - 1
    mu = mu_linear_unitary(n, 2)
    assert contains(mu, 2**l)
    assert not contains(mu, 2 ** (l + 1))


@pytest.mark.parametrize("n, q, eps", [(n, 2, 1) for n in range(2, 25)] + [
    (3, 3, 1), (4, 3, 1), (5, 3, 1), (3, 4, 1), (4, 4, 1), (3, 5, 1), (6, 5, 1), (4, 7, 1), (3, 9, 1),
    (3, 3, -1), (4, 3, -1), (3, 4, -1), (5, 2, -1), (6, 2, -1), (4, 5, -1),
])
def test_linear_elements_bounded(n, q, eps):
    mu = mu_linear_unitary(n, q, eps)
    assert all(a * (q - 1) <= q**n for a in mu.values)


def test_linear2_monotone_in_n():
    for n in range(3, 11):
        big = mu_linear_unitary(n, 2)
        assert all(contains(big, a) for a in mu_linear_unitary(n - 1, 2).values)


def test_enumeration_limit():
    with pytest.raises(EnumerationLimitExceeded):
        mu_linear_unitary(25, 2)
    assert len(mu_linear_unitary(26, 2, 1, limit=26)) > 0


# -- symplectic --------------------------------------------------------------


def test_mu_symplectic_examples():
    assert mu_symplectic(2, 3).values == (5, 9, 12)
    assert mu_symplectic(2, 5).values == (12, 13, 20, 30)


def test_symplectic_rank3_generator_values():
    values = {f.value for _, f in symplectic_generators(3, 3)}
    assert values == {14, 13, 20, 8, 10, 4, 2, 30, 24, 12, 6, 36, 18}
    assert list(mu_symplectic(3, 3).values) == maximal_by_divisibility(values)


def test_s43_agrees_with_matrix_enumeration():
    count, orders = psp_element_orders(2, 3)
    assert count == 25920
    assert mu_symplectic(2, 3).values == tuple(maximal_by_divisibility(orders))


@pytest.mark.parametrize("k, n, q", [(1, 4, 3), (1, 4, 5), (2, 6, 3), (1, 5, 7)])
def test_symplectic_two_power(k, n, q):
    assert contains(mu_symplectic(n, q), 2 ** (k + 2))


def test_symplectic_odd_q_only():
    with pytest.raises(InvalidInput):
        Symplectic(2, 4)


# -- products ----------------------------------------------------------------


def test_mu_product_examples():
    l42, l32 = mu_of(Linear(4, 2)), mu_of(Linear(3, 2))
    # 12 = [4, 6] divides 60 = [4, 15], so it is not maximal
    assert mu_product(l42, l32).values == (28, 42, 60, 105)
    assert mu_product(l42, l42).values == (28, 42, 60, 105)
    one = MuSet.of_ints([1])
    assert mu_product(l42, one) == l42


def test_mu_product_matches_pairwise_lcm_oracle():
    a, b = mu_of(Linear(5, 2)), mu_of(Symplectic(2, 5))
    expected = maximal_by_divisibility(math.lcm(x, y) for x, y in cartesian(a.values, b.values))
    assert list(mu_product(a, b).values) == expected


def test_mu_of_examples():
    assert mu_of(parse("L(4,2)")).values == (4, 6, 7, 15)
    assert mu_of(parse("L(4,2)^3")).values == (420,)
    assert mu_of(parse("Z(7)")).values == (7,)
    assert mu_of(parse("Z(12)*Z(8)")).values == (24,)


def test_spectra_equal_examples():
    assert spectra_equal(mu_of(parse("L(4,2)^2")), mu_of(parse("L(4,2)*L(3,2)")))
    assert not spectra_equal(mu_of(parse("L(4,2)")), mu_of(parse("L(3,2)")))
    assert spectra_equal(mu_of(parse("L(8,2)^3")), mu_of(parse("L(8,2)^2*L(7,2)")))


def test_contains_and_exponent():
    mu = mu_of(Linear(4, 2))
    assert contains(mu, 5) and contains(mu, 1)
    assert not contains(mu, 12)
    assert exponent_of(mu) == 420
    assert exponent_of(MuSet.of_ints([17])) == 17
    assert exponent_of(mu_of(Linear(3, 2))) == 84


def test_mu_power_early_stop_is_exact():
    mu = mu_of(Linear(8, 2))
    cur = mu
    for k in range(2, 9):
        cur = mu_product(cur, mu)
        assert mu_power(mu, k) == cur


def test_json_round_trip():
    mu = mu_of(parse("L(4,2)*Z(3)"))
    d = json.loads(mu.to_json())
    assert d["mu"] == [str(v) for v in mu.values]
    assert mu.values == (12, 15, 21)
    assert d["factored"]["12"] == [[2, 2], [3, 1]]
    assert MuSet.from_json(mu.to_json()) == mu


def test_partitions_count():
    assert [sum(1 for _ in partitions(n)) for n in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


# -- algebraic properties ----------------------------------------------------

small_sets = st.lists(st.integers(min_value=1, max_value=3000), min_size=1, max_size=12)


@settings(max_examples=150, deadline=None)
@given(small_sets)
def test_antichain_reduction(values):
    mu = MuSet.of_ints(values)
    assert list(mu.values) == maximal_by_divisibility(values)
    assert MuSet.of_ints(reversed(values)) == mu
    assert antichain(mu.elements) == mu


@settings(max_examples=80, deadline=None)
@given(small_sets, small_sets, small_sets)
def test_product_commutative_associative(x, y, z):
    a, b, c = (MuSet.of_ints(v) for v in (x, y, z))
    assert mu_product(a, b) == mu_product(b, a)
    assert mu_product(mu_product(a, b), c) == mu_product(a, mu_product(b, c))
    assert mu_product(a, MuSet.of_ints([1])) == a
