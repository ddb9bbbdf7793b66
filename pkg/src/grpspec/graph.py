"""Prime graphs, maximum cocliques and DOT output."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .arith import r_i
from .errors import GrpSpecError, InvalidInput, PreconditionError, SizeLimitExceeded
from .membership import adjacent_in_gamma_L2, in_pi_linear2
from .spectrum import MuSet

COCLIQUE_LIMIT = 60


@dataclass(frozen=True)
class PrimeGraph:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]  # pairs (r, s) with r < s

    def adjacent(self, r: int, s: int) -> bool:
        return (min(r, s), max(r, s)) in self.edges

    def neighbors(self, r: int) -> list[int]:
        return [s for s in self.vertices if s != r and self.adjacent(r, s)]

    def is_coclique(self, vs: Iterable[int]) -> bool:
        return not any(self.adjacent(a, b) for a, b in combinations(sorted(vs), 2))

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "PrimeGraph":
        vs = tuple(sorted(set(vertices)))
        es = set()
        for a, b in edges:
            if a == b:
                raise InvalidInput("prime graphs have no loops")
            es.add((min(a, b), max(a, b)))
        return cls(vs, frozenset(es))


def build_graph(mu: MuSet) -> PrimeGraph:
    """Gruenberg-Kegel graph: r ~ s iff r*s divides some element of mu."""
    vs = mu.primes()
    edges = set()
    for f in mu.elements:
        ps = f.primes
        edges.update(combinations(ps, 2))
    return PrimeGraph(tuple(vs), frozenset(edges))


def build_graph_linear2(n: int, primes: Iterable[int]) -> PrimeGraph:
    """Induced subgraph of the prime graph of L_n(2) via the membership oracle."""
    vs = sorted(set(primes))
    for r in vs:
        if not in_pi_linear2(r, n):
            raise InvalidInput(f"{r} does not divide |L_{n}(2)|")
    edges = [(r, s) for r, s in combinations(vs, 2) if adjacent_in_gamma_L2(r, s, n)]
    return PrimeGraph.from_edges(vs, edges)


def _clique_cover_bound(cand: int, adj: list[int]) -> int:
    cliques: list[int] = []
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        for i, c in enumerate(cliques):
            if c & ~adj[v] == 0:
                cliques[i] = c | low
                break
        else:
            cliques.append(low)
    return len(cliques)


def max_coclique(g: PrimeGraph, limit: int = COCLIQUE_LIMIT, greedy: bool = False) -> tuple[int, ...]:
    """Lexicographically smallest maximum independent set of g.

    With ``greedy=True`` graphs above ``limit`` get a greedy lower bound instead
    of an error.
    """
    vs = g.vertices
    if len(vs) > limit:
        if greedy:
            return greedy_coclique(g)
        raise SizeLimitExceeded(f"{len(vs)} vertices exceeds exact-search limit {limit}")
    idx = {v: i for i, v in enumerate(vs)}
    adj = [0] * len(vs)
    for a, b in g.edges:
        adj[idx[a]] |= 1 << idx[b]
        adj[idx[b]] |= 1 << idx[a]

    best: list[int] = []
    best_size = -1

    def search(cand: int, chosen: list[int]) -> None:
        nonlocal best, best_size
        if cand == 0:
            if len(chosen) > best_size:
                best, best_size = list(chosen), len(chosen)
            return
        if len(chosen) + _clique_cover_bound(cand, adj) <= best_size:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        chosen.append(v)
        search(cand & ~low & ~adj[v], chosen)
        chosen.pop()
        search(cand & ~low, chosen)

    search((1 << len(vs)) - 1, [])
    return tuple(vs[i] for i in best)


def greedy_coclique(g: PrimeGraph) -> tuple[int, ...]:
    """Min-degree greedy independent set; a lower bound only."""
    left = set(g.vertices)
    out = []
    while left:
        v = min(left, key=lambda u: (sum(1 for w in left if w != u and g.adjacent(u, w)), u))
        out.append(v)
        left -= {v, *g.neighbors(v)}
    return tuple(sorted(out))


def omega_coclique(n: int) -> tuple[int, ...]:
    """The primes r_i(2) for n/2 < i <= n, checked to be pairwise nonadjacent in L_n(2)."""
    if n < 12:
        raise PreconditionError("the large-order coclique is only claimed for n >= 12")
    primes = []
    for i in range(n // 2 + 1, n + 1):
        r = r_i(2, i)
        if r is None:
            raise GrpSpecError(f"no primitive prime divisor of 2^{i} - 1")
        primes.append(r)
    for r, s in combinations(primes, 2):
        if adjacent_in_gamma_L2(r, s, n):
            raise GrpSpecError(f"{r} and {s} are adjacent in the prime graph of L_{n}(2)")
    return tuple(sorted(primes))


def to_dot(g: PrimeGraph, highlight: Iterable[int] = (), name: str = "Gamma") -> str:
    hl = set(highlight)
    lines = [f'graph "{name}" {{', "  node [shape=circle];"]
    for v in g.vertices:
        attr = ' [style=filled, fillcolor="lightblue"]' if v in hl else ""
        lines.append(f'  "{v}"{attr};')
    for a, b in sorted(g.edges):
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
