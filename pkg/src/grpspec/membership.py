"""Exact membership in the spectra of L_n(2) and its direct powers at large n.

Write x = 2^a * m with m odd. Each odd prime power r^e || m needs a part of
size divisible by d = ord(r^e, 2) in some partition of n, so x lies in the
spectrum of L_n(2) iff the odd components can be packed into blocks whose
lcm-orders sum to at most n, after reserving 2^(a-1) + 1 for a unipotent
block when a >= 1. Parts of size 1 contribute 2^1 - 1 = 1 and pad freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .arith import Factorization, factor, is_prime, mult_order, mult_order_prime_power
from .errors import InvalidInput


@dataclass(frozen=True, order=True)
class OrderComponent:
    prime_power: int
    order: int

    @classmethod
    def of(cls, r: int, e: int = 1) -> "OrderComponent":
        pe = r**e
        d = mult_order(r, 2) if e == 1 else mult_order_prime_power(pe, 2)
        return cls(pe, d)


def _as_factorization(x) -> Factorization:
    if isinstance(x, Factorization):
        return x
    x = int(x)
    if x < 1:
        raise InvalidInput("orders are positive")
    return factor(x)


def split_components(x) -> tuple[int, list[OrderComponent]]:
    """Return the 2-adic exponent of x and its odd order components."""
    f = _as_factorization(x)
    a = f.exponent(2)
    comps = [OrderComponent.of(p, e) for p, e in f.entries if p != 2]
    return a, comps


def _reduce_orders(orders: Iterable[int]) -> tuple[int, ...]:
    # an order dividing another one rides along in that block for free
    uniq = sorted(set(orders), reverse=True)
    kept: list[int] = []
    for d in uniq:
        if not any(k % d == 0 for k in kept):
            kept.append(d)
    return tuple(sorted(kept))


@lru_cache(maxsize=1 << 16)
def _min_cover(orders: tuple[int, ...]) -> int:
    m = len(orders)
    if m == 0:
        return 0
    full = (1 << m) - 1
    block = [1] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        block[mask] = math.lcm(block[mask ^ low], orders[low.bit_length() - 1])
    best = [0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        # submasks of mask that contain its lowest bit
        sub = rest
        cur = block[mask]
        while True:
            s = sub | low
            val = block[s] + best[mask ^ s]
            if val < cur:
                cur = val
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[mask] = cur
    return best[full]


def min_cover_sum(components: Sequence[OrderComponent]) -> int:
    """Minimum over set partitions of the components of the sum of block lcm-orders."""
    return _min_cover(_reduce_orders(c.order for c in components))


def _fits(a: int, comps: Sequence[OrderComponent], n: int) -> bool:
    need = min_cover_sum(comps)
    if a >= 1:
        need += 2 ** (a - 1) + 1
    return need <= n


def mem_linear2(x, n: int) -> bool:
    """Whether x is an element order of L_n(2)."""
    if n < 2:
        raise InvalidInput("n must be at least 2")
    a, comps = split_components(x)
    return _fits(a, comps, n)


def mem_power(x, n: int, k: int) -> bool:
    """Whether x is an element order of the k-th direct power of L_n(2)."""
    if k < 1:
        raise InvalidInput("k must be positive")
    if n < 2:
        raise InvalidInput("n must be at least 2")
    a, comps = split_components(x)
    # the 2-part travels as one indivisible component (index len(comps))
    items: list[tuple[int, OrderComponent | None]] = [(0, c) for c in comps]
    if a:
        items.append((a, None))
    m = len(items)
    if m == 0:
        return True
    if k >= m:
        return all(_slot_ok(items, 1 << i, n) for i in range(m))
    ok_cache: dict[int, bool] = {}

    def ok(mask):
        if mask not in ok_cache:
            ok_cache[mask] = _slot_ok(items, mask, n)
        return ok_cache[mask]

    @lru_cache(maxsize=None)
    def feasible(mask: int, slots: int) -> bool:
        if mask == 0:
            return True
        if slots == 0:
            return False
        low = mask & -mask
        rest = mask ^ low
        sub = rest
        while True:
            s = sub | low
            if ok(s) and feasible(mask ^ s, slots - 1):
                return True
            if sub == 0:
                return False
            sub = (sub - 1) & rest

    return feasible((1 << m) - 1, k)


def _slot_ok(items, mask: int, n: int) -> bool:
    a = 0
    comps = []
    for i, (ai, c) in enumerate(items):
        if mask >> i & 1:
            if c is None:
                a = ai
            else:
                comps.append(c)
    return _fits(a, comps, n)


def in_pi_linear2(r: int, n: int) -> bool:
    """Whether the prime r divides |L_n(2)|."""
    if r == 2:
        return n >= 2
    return mult_order(r, 2) <= n


def adjacent_in_gamma_L2(r: int, s: int, n: int) -> bool:
    if r == s:
        raise InvalidInput("adjacency is defined for distinct primes")
    for t in (r, s):
        if not is_prime(t) or not in_pi_linear2(t, n):
            raise InvalidInput(f"{t} is not a prime divisor of |L_{n}(2)|")
    return mem_linear2(r * s, n)

