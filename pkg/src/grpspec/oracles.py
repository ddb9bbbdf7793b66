"""Brute-force element orders of small groups, used to cross-check the formulas."""

from __future__ import annotations

import math
from itertools import permutations

import numpy as np

from .spectrum import MuSet


def _orders_of_batch(mats: np.ndarray, p: int, max_order: int, projective: bool = False) -> np.ndarray:
    """Order of each matrix in a batch (mod scalars -1, 1 when projective); 0 if none <= max_order."""
    n = mats.shape[-1]
    eye = np.eye(n, dtype=np.int64)
    orders = np.zeros(len(mats), dtype=np.int64)
    cur = mats.copy()
    for k in range(1, max_order + 1):
        hit = np.all(cur == eye, axis=(1, 2))
        if projective:
            hit |= np.all(cur == (-eye) % p, axis=(1, 2))
        orders[(orders == 0) & hit] = k
        if orders.all():
            break
        cur = np.einsum("bij,bjk->bik", cur, mats) % p
    return orders


def gl2_element_orders(n: int) -> tuple[int, set[int]]:
    """Enumerate every n x n matrix over GF(2); return (#invertible, element orders).

    Singular matrices never reach the identity, and every invertible one does
    within 2^n steps, so powering separates them.
    """
    if n > 4:
        raise ValueError("exhaustive enumeration only up to n = 4")
    total = 1 << (n * n)
    codes = np.arange(total, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(n * n)) & 1
    mats = bits.reshape(total, n, n)
    orders = _orders_of_batch(mats, 2, 1 << n)
    inv = orders[orders > 0]
    return int(len(inv)), {int(x) for x in np.unique(inv)}


def _perm_order(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    out = 1
    for s in range(len(perm)):
        if not seen[s]:
            length, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                length += 1
            out = math.lcm(out, length)
    return out


def _is_even(perm: tuple[int, ...]) -> bool:
    seen = [False] * len(perm)
    transpositions = 0
    for s in range(len(perm)):
        if not seen[s]:
            x, length = s, 0
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                length += 1
            transpositions += length - 1
    return transpositions % 2 == 0


def alternating_element_orders(m: int) -> tuple[int, set[int]]:
    """Walk all even permutations of m points; return (#elements, element orders)."""
    count = 0
    orders: set[int] = set()
    for perm in permutations(range(m)):
        if _is_even(perm):
            count += 1
            orders.add(_perm_order(perm))
    return count, orders


def _symplectic_form(n: int) -> np.ndarray:
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    J[:n, n:] = np.eye(n, dtype=np.int64)
    J[n:, :n] = -np.eye(n, dtype=np.int64)
    return J


def _transvection(v: np.ndarray, J: np.ndarray, p: int) -> np.ndarray:
    # x -> x + (x J v) v, written for row vectors acting on the right
    d = len(v)
    return (np.eye(d, dtype=np.int64) + np.outer(J @ v, v)) % p


def sp_group_elements(n: int, p: int) -> np.ndarray:
    """All elements of Sp_{2n}(p) for prime p, by closure under basis transvections."""
    J = _symplectic_form(n)
    d = 2 * n
    gens = []
    basis = np.eye(d, dtype=np.int64)
    # redundant generators are harmless; psp_element_orders checks the group order
    vecs = list(basis) + [basis[0] + basis[1], basis[0] + basis[(n + 1) % d]]
    for v in vecs:
        gens.append(_transvection(v, J, p))
    weights = p ** np.arange(d * d, dtype=np.int64)

    def key(batch):
        return (batch.reshape(len(batch), -1) * weights).sum(axis=1)

    eye = np.eye(d, dtype=np.int64)[None]
    seen = {int(key(eye)[0])}
    elems = [eye]
    frontier = eye
    while len(frontier):
        new = []
        for g in gens:
            prod = np.einsum("bij,jk->bik", frontier, g) % p
            ks = key(prod)
            _, first = np.unique(ks, return_index=True)
            for idx in first:
                kk = int(ks[idx])
                if kk not in seen:
                    seen.add(kk)
                    new.append(prod[idx])
        frontier = np.array(new, dtype=np.int64) if new else np.empty((0, d, d), dtype=np.int64)
        if len(frontier):
            elems.append(frontier)
    return np.concatenate(elems)


def psp_element_orders(n: int, p: int) -> tuple[int, set[int]]:
    """(|PSp_{2n}(p)|, element orders) from the matrix group modulo +-1."""
    elems = sp_group_elements(n, p)
    expected = p ** (n * n) * math.prod(p ** (2 * i) - 1 for i in range(1, n + 1))
    if len(elems) != expected:
        raise RuntimeError(f"closure has {len(elems)} elements, expected {expected}")
    orders = _orders_of_batch(elems, p, 4 * p ** (2 * n), projective=True)
    if not orders.all():
        raise RuntimeError("some element did not reach a scalar")
    return len(elems) // 2, {int(x) for x in np.unique(orders)}


def mu_from_orders(orders: set[int]) -> MuSet:
    return MuSet.of_ints(orders)
