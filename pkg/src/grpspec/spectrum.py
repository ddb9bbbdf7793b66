"""Maximal element orders (the set mu(G)) of classical simple groups and products.

A spectrum is stored by its divisibility-maximal elements; membership of x
in the spectrum means x divides one of them.
"""

from __future__ import annotations

import json
import math
from functools import lru_cache, reduce
from typing import Iterable, Iterator

from .arith import Factorization, factor, factor_power_minus_one
from .errors import EnumerationLimitExceeded, InvalidInput
from .groups import Cyclic, GroupExpr, Linear, Product, Symplectic

MAX_RANK = 24


class MuSet:
    """Finite antichain of positive integers under divisibility.

    Elements keep their factorizations; ``values`` is sorted ascending.
    """

    __slots__ = ("_elems", "_values")

    def __init__(self, elements: Iterable[Factorization]):
        elems = sorted(elements, key=lambda f: f.value)
        self._elems = tuple(elems)
        self._values = tuple(f.value for f in elems)
        if not self._elems:
            raise InvalidInput("a MuSet is never empty")

    @classmethod
    def of_ints(cls, values: Iterable[int]) -> "MuSet":
        return antichain(factor(v) for v in values)

    @property
    def elements(self) -> tuple[Factorization, ...]:
        return self._elems

    @property
    def values(self) -> tuple[int, ...]:
        return self._values

    def __iter__(self) -> Iterator[int]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other) -> bool:
        if isinstance(other, MuSet):
            return self._values == other._values
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._values)

    def __repr__(self) -> str:
        return f"MuSet({list(self._values)})"

    def __contains__(self, x: int) -> bool:
        return contains(self, x)

    def primes(self) -> list[int]:
        out: set[int] = set()
        for f in self._elems:
            out.update(f.primes)
        return sorted(out)

    def to_dict(self) -> dict:
        return {
            "mu": [str(v) for v in self._values],
            "factored": {str(f.value): [list(pe) for pe in f.entries] for f in self._elems},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "MuSet":
        elems = []
        for s in d["mu"]:
            entries = d.get("factored", {}).get(s)
            if entries is None:
                elems.append(factor(int(s)))
            else:
                f = Factorization(tuple((int(p), int(e)) for p, e in entries))
                if f.value != int(s):
                    raise InvalidInput(f"factorization of {s} does not multiply out")
                elems.append(f)
        return antichain(elems)

    @classmethod
    def from_json(cls, text: str) -> "MuSet":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# antichain machinery on bitmask encodings


class _Encoder:
    """Thermometer code: p^e sets bits (p,1)..(p,e), so a | b iff bits(a) <= bits(b)."""

    def __init__(self, facts: Iterable[Factorization]):
        maxexp: dict[int, int] = {}
        for f in facts:
            for p, e in f.entries:
                if e > maxexp.get(p, 0):
                    maxexp[p] = e
        self.offset: dict[int, int] = {}
        self.atoms: list[tuple[int, int]] = []
        for p in sorted(maxexp):
            self.offset[p] = len(self.atoms)
            self.atoms.extend((p, j) for j in range(1, maxexp[p] + 1))

    def encode(self, f: Factorization) -> int:
        m = 0
        for p, e in f.entries:
            m |= ((1 << e) - 1) << self.offset[p]
        return m

    def decode(self, mask: int) -> Factorization:
        d: dict[int, int] = {}
        while mask:
            low = mask & -mask
            p, _ = self.atoms[low.bit_length() - 1]
            d[p] = d.get(p, 0) + 1
            mask ^= low
        return Factorization.from_dict(d)


def _maximal_masks(masks: Iterable[int]) -> list[int]:
    uniq = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for c in uniq:
        for k in kept:
            if c | k == k:
                break
        else:
            kept.append(c)
    return kept


def antichain(facts: Iterable[Factorization]) -> MuSet:
    """Reduce a collection to its divisibility-maximal elements."""
    facts = list({f.value: f for f in facts}.values())
    if not facts:
        return MuSet([Factorization()])
    enc = _Encoder(facts)
    return MuSet(enc.decode(m) for m in _maximal_masks(enc.encode(f) for f in facts))


def mu_product(a: MuSet, b: MuSet) -> MuSet:
    """mu(G x H) from mu(G) and mu(H): maximal pairwise lcms."""
    enc = _Encoder(a.elements + b.elements)
    ma = [enc.encode(f) for f in a.elements]
    mb = [enc.encode(f) for f in b.elements]
    cands = {x | y for x in ma for y in mb}
    return MuSet(enc.decode(m) for m in _maximal_masks(cands))


def mu_power(a: MuSet, k: int) -> MuSet:
    if k < 1:
        raise InvalidInput("power must be positive")
    cur = a
    for _ in range(k - 1):
        nxt = mu_product(cur, a)
        if nxt == cur:
            # mu(A^j) = mu(A^(j+1)) forces every higher power to agree
            break
        cur = nxt
    return cur


def contains(a: MuSet, x: int) -> bool:
    """True iff x divides some element of a, i.e. x lies in the spectrum."""
    x = int(x)
    if x < 1:
        raise InvalidInput("orders are positive")
    return any(v % x == 0 for v in a.values)


def spectra_equal(a: MuSet, b: MuSet) -> bool:
    return a.values == b.values


def exponent_of(a: MuSet) -> int:
    return reduce(math.lcm, a.values, 1)


# ---------------------------------------------------------------------------
# partitions


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n into positive parts, non-increasing, in reverse-lex order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _part_shapes(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Distinct (value, multiplicity) shapes of the partitions of n."""
    out = []
    for part in partitions(n):
        shape: dict[int, int] = {}
        for x in part:
            shape[x] = shape.get(x, 0) + 1
        out.append(tuple(sorted(shape.items())))
    return tuple(out)


def _check_rank(n: int, limit: int) -> None:
    if n > limit:
        raise EnumerationLimitExceeded(
            f"rank {n} exceeds the enumeration limit {limit}; use the membership oracle"
        )


def _lcm_all(fs: Iterable[Factorization]) -> Factorization:
    return reduce(Factorization.lcm, fs, Factorization())


# ---------------------------------------------------------------------------
# linear and unitary groups


def linear_unitary_generators(n: int, q: int, eps: int = 1) -> Iterator[tuple[str, Factorization]]:
    """Yield ``(item, value)`` for every number whose divisors make up omega(L_n^eps(q))."""
    g = Linear(n, q, eps)
    p = g.p

    @lru_cache(maxsize=None)
    def A(m):  # q^m - eps^m
        return factor_power_minus_one(eps * q, m)

    qe = factor(q - eps)
    d = math.gcd(n, q - eps)
    fd = factor(d)

    yield "i", A(n).divide(fd * qe)

    for n1 in range(1, n // 2 + 1):
        n2 = n - n1
        den = factor(math.gcd(n // math.gcd(n1, n2), q - eps))
        yield "ii", A(n1).lcm(A(n2)).divide(den)

    for shape in _part_shapes(n):
        if sum(c for _, c in shape) >= 3:
            yield "iii", _lcm_all(A(m) for m, _ in shape)

    k = 1
    while p ** (k - 1) + 1 <= n:
        pk = Factorization.prime(p, k)
        rest = n - p ** (k - 1) - 1
        if rest == 0:
            yield "vi", pk
        else:
            yield "iv", pk * A(rest).divide(fd)
            for shape in _part_shapes(rest):
                if sum(c for _, c in shape) >= 2:
                    yield "v", pk * _lcm_all(A(m) for m, _ in shape)
        k += 1


@lru_cache(maxsize=256)
def mu_linear_unitary(n: int, q: int, eps: int = 1, limit: int = MAX_RANK) -> MuSet:
    _check_rank(n, limit)
    return antichain(v for _, v in linear_unitary_generators(n, q, eps))


# ---------------------------------------------------------------------------
# symplectic groups, odd characteristic


def _sign_choices(shape):
    """For each distinct part value, the sign sets realizable by its copies."""
    options = []
    for m, c in shape:
        opts = [((m, 1),), ((m, -1),)]
        if c >= 2:
            opts.append(((m, 1), (m, -1)))
        options.append(opts)
    out = [()]
    for opts in options:
        out = [acc + o for acc in out for o in opts]
    return out


def symplectic_generators(n: int, q: int) -> Iterator[tuple[str, Factorization]]:
    g = Symplectic(n, q)
    p = g.p

    @lru_cache(maxsize=None)
    def B(m, sign):  # q^m + sign
        minus = factor_power_minus_one(q, m)
        if sign == -1:
            return minus
        return factor_power_minus_one(q, 2 * m).divide(minus)

    two = Factorization.prime(2)
    yield "i", B(n, 1).divide(two)
    yield "i", B(n, -1).divide(two)

    def lcms(total, min_parts):
        seen = set()
        for shape in _part_shapes(total):
            if sum(c for _, c in shape) < min_parts:
                continue
            for choice in _sign_choices(shape):
                if choice not in seen:
                    seen.add(choice)
                    yield _lcm_all(B(m, s) for m, s in choice)

    for v in lcms(n, 2):
        yield "ii", v

    k = 1
    while p ** (k - 1) + 1 <= 2 * n:
        pk = Factorization.prime(p, k)
        rest2 = 2 * n - p ** (k - 1) - 1
        if rest2 == 0:
            if k > 1:
                yield "iv", pk
        else:
            for v in lcms(rest2 // 2, 1):
                yield "iii", pk * v
        k += 1


@lru_cache(maxsize=256)
def mu_symplectic(n: int, q: int, limit: int = MAX_RANK) -> MuSet:
    _check_rank(n, limit)
    return antichain(v for _, v in symplectic_generators(n, q))


# ---------------------------------------------------------------------------
# expressions


@lru_cache(maxsize=512)
def mu_of(expr: GroupExpr, limit: int = MAX_RANK) -> MuSet:
    if isinstance(expr, Linear):
        return mu_linear_unitary(expr.n, expr.q, expr.eps, limit)
    if isinstance(expr, Symplectic):
        return mu_symplectic(expr.n, expr.q, limit)
    if isinstance(expr, Cyclic):
        return MuSet([factor(expr.r)])
    if isinstance(expr, Product):
        acc = None
        for g, m in expr.factors:
            part = mu_power(mu_of(g, limit), m)
            acc = part if acc is None else mu_product(acc, part)
        return acc
    raise InvalidInput(f"not a group expression: {expr!r}")
