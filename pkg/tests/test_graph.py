import math
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from grpspec.errors import PreconditionError, SizeLimitExceeded
from grpspec.graph import (
    PrimeGraph,
    build_graph,
    build_graph_linear2,
    greedy_coclique,
    max_coclique,
    omega_coclique,
    to_dot,
)
from grpspec.membership import mem_power
from grpspec.spectrum import MuSet, mu_linear_unitary


def brute_max_coclique(g):
    vs = g.vertices
    for size in range(len(vs), 0, -1):
        # combinations() yields in lexicographic order of sorted input
        for c in combinations(vs, size):
            if g.is_coclique(c):
                return c
    return ()


def test_build_graph_examples():
    g3 = build_graph(mu_linear_unitary(3, 2))
    assert g3.vertices == (2, 3, 7) and not g3.edges
    g4 = build_graph(mu_linear_unitary(4, 2))
    assert g4.vertices == (2, 3, 5, 7)
    assert g4.edges == {(2, 3), (3, 5)}
    g = build_graph(MuSet.of_ints([13]))
    assert g.vertices == (13,) and not g.edges


def test_max_coclique_examples():
    assert max_coclique(build_graph(mu_linear_unitary(3, 2))) == (2, 3, 7)
    assert max_coclique(build_graph(mu_linear_unitary(4, 2))) == (2, 5, 7)
    k2 = PrimeGraph.from_edges([2, 3], [(2, 3)])
    assert len(max_coclique(k2)) == 1


def test_graph_is_symmetric_and_irreflexive():
    g = build_graph(mu_linear_unitary(12, 2))
    for a, b in g.edges:
        assert a < b
        assert g.adjacent(a, b) and g.adjacent(b, a)
    assert not any(g.adjacent(v, v) for v in g.vertices)


def test_adding_mu_element_keeps_edges():
    mu = mu_linear_unitary(10, 2)
    g = build_graph(mu)
    bigger = build_graph(MuSet.of_ints(list(mu.values) + [3 * 11 * 13]))
    assert g.edges <= bigger.edges


def test_oracle_graph_matches_mu_graph():
    for n in (8, 12, 16):
        g = build_graph(mu_linear_unitary(n, 2))
        assert build_graph_linear2(n, g.vertices) == g


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=1, max_value=11).flatmap(
    lambda k: st.tuples(st.just(k), st.sets(st.tuples(st.integers(0, k - 1), st.integers(0, k - 1))))
))
def test_max_coclique_matches_brute_force(data):
    k, pairs = data
    verts = list(range(2, 2 + k))
    edges = [(verts[a], verts[b]) for a, b in pairs if a != b]
    g = PrimeGraph.from_edges(verts, edges)
    got = max_coclique(g)
    assert got == brute_max_coclique(g)
    greedy = greedy_coclique(g)
    assert g.is_coclique(greedy) and len(greedy) <= len(got)


def test_size_limit():
    g = PrimeGraph.from_edges(range(100), [])
    with pytest.raises(SizeLimitExceeded):
        max_coclique(g)
    assert len(max_coclique(g, greedy=True)) == 100


@pytest.mark.parametrize("n", [12, 16])
def test_large_order_coclique(n):
    omega = omega_coclique(n)
    assert len(omega) == (n + 1) // 2
    g = build_graph(mu_linear_unitary(n, 2))
    assert g.is_coclique(omega)
    assert len(max_coclique(g)) >= (n + 1) // 2


def smallest_primitive_prime(i):
    # smallest prime r with 2 of multiplicative order exactly i mod r
    r = 3
    while True:
        if all(r % d for d in range(2, int(r**0.5) + 1)) and pow(2, i, r) == 1:
            if all(pow(2, j, r) != 1 for j in range(1, i)):
                return r
        r += 2


@pytest.mark.parametrize("n", [12, 16])
def test_large_order_coclique_members(n):
    expected = sorted(smallest_primitive_prime(i) for i in range(n // 2 + 1, n + 1))
    assert list(omega_coclique(n)) == expected


def test_large_order_coclique_precondition():
    with pytest.raises(PreconditionError):
        omega_coclique(8)


def test_coclique_products_need_one_slot_each():
    omega = omega_coclique(16)
    for k in range(1, 8):
        assert not mem_power(math.prod(omega[: k + 1]), 16, k)
        assert mem_power(math.prod(omega[:k]), 16, k)


def test_dot_output_is_stable():
    g = build_graph(mu_linear_unitary(4, 2))
    expected = (
        'graph "Gamma" {\n'
        "  node [shape=circle];\n"
        '  "2" [style=filled, fillcolor="lightblue"];\n'
        '  "3";\n'
        '  "5" [style=filled, fillcolor="lightblue"];\n'
        '  "7" [style=filled, fillcolor="lightblue"];\n'
        '  "2" -- "3";\n'
        '  "3" -- "5";\n'
        "}\n"
    )
    assert to_dot(g, max_coclique(g)) == expected
    assert "lightblue" not in to_dot(g)
