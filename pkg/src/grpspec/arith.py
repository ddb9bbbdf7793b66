"""Arbitrary-precision number theory.

Primality, factorization with a persistent on-disk cache, multiplicative
orders and primitive prime divisors of ``a**i - 1``.
"""

from __future__ import annotations

import atexit
import math
import os
import random
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from threading import RLock
from typing import Iterable, Iterator, Mapping

import gmpy2
from filelock import FileLock

from .errors import FactoringBudgetExceeded, InvalidInput

__all__ = [
    "Factorization",
    "FactorCache",
    "is_prime",
    "is_prime_power",
    "factor",
    "factor_power_minus_one",
    "mult_order",
    "mult_order_prime_power",
    "zsigmondy_set",
    "r_i",
    "k_i",
    "eta",
    "varphi",
    "cyclotomic_value",
    "set_default_cache",
    "get_default_cache",
]

TRIAL_BOUND = 10_000
RHO_BUDGET = 5_000_000
RHO_SEED = 20240229
# Factorizations of integers below this bound are cheap and never hit disk.
PERSIST_THRESHOLD = 10**12
CACHE_ENV = "GRPSPEC_FACTOR_CACHE"
DEFAULT_CACHE_NAME = "grpspec-factors.txt"


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


SMALL_PRIMES = _sieve(TRIAL_BOUND)
_SMALL_PRIME_SET = frozenset(SMALL_PRIMES)

# Jaeschke / Sorenson-Webster: the first 13 primes are a proven witness set
# for every n below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_PROVEN_BOUND = 3_317_044_064_679_887_385_961_981


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality for n below ~3.3e24, BPSW-backed above."""
    if n < 2:
        return False
    if n <= TRIAL_BOUND:
        return n in _SMALL_PRIME_SET
    for p in SMALL_PRIMES[:50]:
        if n % p == 0:
            return False
    if not all(_strong_probable_prime(n, b) for b in _MR_BASES):
        return False
    if n < _MR_PROVEN_BOUND:
        return True
    return bool(gmpy2.is_strong_bpsw_prp(n))


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as a sorted tuple of ``(prime, exponent)`` pairs.

    The empty tuple represents 1.
    """

    entries: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "Factorization":
        return cls(tuple(sorted((p, e) for p, e in d.items() if e > 0)))

    @classmethod
    def prime(cls, p: int, e: int = 1) -> "Factorization":
        return cls(((p, e),)) if e > 0 else cls()

    @property
    def value(self) -> int:
        v = 1
        for p, e in self.entries:
            v *= p**e
        return v

    def __int__(self) -> int:
        return self.value

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    def exponent(self, p: int) -> int:
        for q, e in self.entries:
            if q == p:
                return e
        return 0

    def divides(self, other: "Factorization") -> bool:
        od = other.as_dict()
        return all(od.get(p, 0) >= e for p, e in self.entries)

    def lcm(self, other: "Factorization") -> "Factorization":
        d = self.as_dict()
        for p, e in other.entries:
            if d.get(p, 0) < e:
                d[p] = e
        return Factorization.from_dict(d)

    def __mul__(self, other: "Factorization") -> "Factorization":
        d = self.as_dict()
        for p, e in other.entries:
            d[p] = d.get(p, 0) + e
        return Factorization.from_dict(d)

    def divide(self, other: "Factorization") -> "Factorization":
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        d = self.as_dict()
        for p, e in other.entries:
            if d.get(p, 0) < e:
                raise InvalidInput(f"{other.value} does not divide {self.value}")
            d[p] -= e
        return Factorization.from_dict(d)

    def coprime_to(self, p: int) -> bool:
        return all(q != p for q, _ in self.entries)

    def without(self, p: int) -> "Factorization":
        return Factorization(tuple((q, e) for q, e in self.entries if q != p))

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.entries]

    def __str__(self) -> str:
        if not self.entries:
            return "1"
        return " * ".join(f"{p}^{e}" for p, e in self.entries)


# ---------------------------------------------------------------------------
# persistent cache


class FactorCache:
    """Factorizations memoized in a text file, one ``n = p^e * ...`` per line.

    Reads are lock-free snapshots; writes merge with whatever is on disk under
    a file lock and replace the file atomically.
    """

    def __init__(self, path: str | os.PathLike | None):
        self.path = Path(path) if path is not None else None
        self._data: dict[int, Factorization] = {}
        self._dirty: set[int] = set()
        self._lock = RLock()
        if self.path is not None and self.path.exists():
            self._data.update(self._read(self.path))

    @staticmethod
    def parse_line(line: str) -> tuple[int, Factorization]:
        lhs, rhs = line.split("=")
        n = int(lhs.strip())
        entries = []
        for term in rhs.split("*"):
            p, _, e = term.strip().partition("^")
            entries.append((int(p), int(e or 1)))
        f = Factorization(tuple(sorted(entries)))
        if f.value != n:
            raise ValueError(f"corrupt cache record: {line!r}")
        return n, f

    @staticmethod
    def format_line(n: int, f: Factorization) -> str:
        return f"{n} = {f}"

    @classmethod
    def _read(cls, path: Path) -> dict[int, Factorization]:
        out = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    n, f = cls.parse_line(line)
                    out[n] = f
        return out

    def get(self, n: int) -> Factorization | None:
        return self._data.get(n)

    def put(self, n: int, f: Factorization) -> None:
        with self._lock:
            if n not in self._data:
                self._data[n] = f
                self._dirty.add(n)

    def __contains__(self, n: int) -> bool:
        return n in self._data

    def __len__(self) -> int:
        return len(self._data)

    def flush(self) -> None:
        if self.path is None:
            return
        with self._lock:
            if not self._dirty:
                return
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with FileLock(str(self.path) + ".lock"):
                merged = self._read(self.path) if self.path.exists() else {}
                merged.update(self._data)
                fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".factors-")
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    for n in sorted(merged):
                        fh.write(self.format_line(n, merged[n]) + "\n")
                os.replace(tmp, self.path)
                self._data = merged
            self._dirty.clear()


_default_cache: FactorCache | None = None


def get_default_cache() -> FactorCache:
    global _default_cache
    if _default_cache is None:
        path = os.environ.get(CACHE_ENV) or Path.cwd() / DEFAULT_CACHE_NAME
        _default_cache = FactorCache(path)
        atexit.register(_default_cache.flush)
    return _default_cache


def set_default_cache(cache: FactorCache | str | os.PathLike | None) -> FactorCache:
    """Install a cache (or a path to one, or ``None`` for memory-only)."""
    global _default_cache
    if _default_cache is not None:
        _default_cache.flush()
    if not isinstance(cache, FactorCache):
        cache = FactorCache(cache)
    _default_cache = cache
    atexit.register(cache.flush)
    return cache


# ---------------------------------------------------------------------------
# factoring


def _brent_rho(n: int, rng: random.Random, budget: list[int]) -> int | None:
    """Return a nontrivial factor of composite odd n, or None when out of budget."""
    while budget[0] > 0:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            budget[0] -= r
            if budget[0] <= 0 and g == 1:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def _perfect_power(n: int) -> tuple[int, int] | None:
    for k in range(2, n.bit_length() + 1):
        root, exact = gmpy2.iroot(n, k)
        if exact:
            return int(root), k
        if root < 2:
            break
    return None


def _factor_uncached(n: int, budget: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n == 1:
        return out
    rng = random.Random(RHO_SEED)
    left = [budget]
    original = n
    stack = [(n, 1)]
    while stack:
        m, mult = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + mult
            continue
        pp = _perfect_power(m)
        if pp is not None:
            stack.append((pp[0], mult * pp[1]))
            continue
        d = _brent_rho(m, rng, left)
        if d is None:
            raise FactoringBudgetExceeded(original, m)
        stack.append((d, mult))
        stack.append((m // d, mult))
    return out


@lru_cache(maxsize=65536)
def _factor_small(n: int) -> Factorization:
    return Factorization.from_dict(_factor_uncached(n, RHO_BUDGET))


def factor(n: int, *, budget: int = RHO_BUDGET, cache: FactorCache | None = None) -> Factorization:
    """Complete prime factorization of ``n >= 1``.

    Raises FactoringBudgetExceeded rather than return a partial result.
    """
    n = int(n)
    if n < 1:
        raise InvalidInput(f"factor() needs a positive integer, got {n}")
    if n < PERSIST_THRESHOLD:
        return _factor_small(n)
    cache = cache if cache is not None else get_default_cache()
    hit = cache.get(n)
    if hit is not None:
        return hit
    f = Factorization.from_dict(_factor_uncached(n, budget))
    cache.put(n, f)
    return f


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k`` or None."""
    if n < 2:
        return None
    f = factor(n)
    if len(f) == 1:
        return f.entries[0]
    return None


# ---------------------------------------------------------------------------
# multiplicative orders


def _order_dividing(n: int, modulus: int, bound: Factorization) -> int:
    d = bound.value
    for p, e in bound.entries:
        for _ in range(e):
            if pow(n, d // p, modulus) == 1:
                d //= p
            else:
                break
    return d


def mult_order(r: int, n: int) -> int:
    """e(r, n): order of n modulo the prime r, with the 2-adic convention.

    For r = 2 the value is 1 when n = 1 (mod 4) and 2 otherwise.
    """
    if not is_prime(r):
        raise InvalidInput(f"modulus {r} is not prime")
    if r == 2:
        if n % 2 == 0:
            raise InvalidInput("e(2, n) needs odd n")
        return 1 if n % 4 == 1 else 2
    if n % r == 0:
        raise InvalidInput(f"{n} is not coprime to {r}")
    return _order_dividing(n % r, r, factor(r - 1))


def mult_order_prime_power(modulus: int, n: int) -> int:
    """Least d with n**d = 1 modulo an odd prime power."""
    pp = is_prime_power(modulus)
    if pp is None or pp[0] == 2:
        raise InvalidInput(f"{modulus} is not a power of an odd prime")
    r, e = pp
    if n % r == 0:
        raise InvalidInput(f"{n} is not coprime to {modulus}")
    totient = factor(r - 1) * Factorization.prime(r, e - 1)
    return _order_dividing(n % modulus, modulus, totient)


# ---------------------------------------------------------------------------
# cyclotomic values and primitive prime divisors


def _mobius(n: int) -> int:
    f = factor(n)
    if any(e > 1 for _, e in f.entries):
        return 0
    return -1 if len(f) % 2 else 1


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor(n).entries:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


@lru_cache(maxsize=4096)
def cyclotomic_value(i: int, a: int) -> int:
    """Phi_i(a), computed as prod (a^d - 1)^mu(i/d) over d | i."""
    num, den = 1, 1
    for d in _divisors(i):
        m = _mobius(i // d)
        if m == 1:
            num *= a**d - 1
        elif m == -1:
            den *= a**d - 1
    q, rem = divmod(num, den)
    assert rem == 0
    return q


@lru_cache(maxsize=4096)
def _factor_cyclotomic(i: int, a: int) -> Factorization:
    v = abs(cyclotomic_value(i, a))
    if v == 0:
        raise InvalidInput(f"Phi_{i}({a}) vanishes")
    return factor(v)


@lru_cache(maxsize=4096)
def factor_power_minus_one(a: int, i: int) -> Factorization:
    """Factorization of |a**i - 1| assembled from cyclotomic pieces."""
    if abs(a) < 2 or i < 1:
        raise InvalidInput("need |a| > 1 and i >= 1")
    out = Factorization()
    for d in _divisors(i):
        out = out * _factor_cyclotomic(d, a)
    return out


def _check_base(a: int, i: int) -> None:
    if abs(a) <= 1:
        raise InvalidInput(f"|a| must exceed 1, got {a}")
    if i < 1:
        raise InvalidInput(f"i must be positive, got {i}")


@lru_cache(maxsize=4096)
def _zsigmondy(a: int, i: int) -> tuple[int, ...]:
    # every primitive divisor of a^i - 1 divides Phi_i(a)
    cands = _factor_cyclotomic(i, a).primes
    return tuple(r for r in cands if mult_order(r, a) == i)


def zsigmondy_set(a: int, i: int) -> frozenset[int]:
    """R_i(a): all primes r with e(r, a) = i."""
    _check_base(a, i)
    return frozenset(_zsigmondy(a, i))


def r_i(a: int, i: int) -> int | None:
    """Smallest primitive prime divisor of a**i - 1, or None."""
    s = zsigmondy_set(a, i)
    return min(s) if s else None


def k_i(a: int, i: int) -> int:
    """Product of primitive prime divisors of a**i - 1 with multiplicity.

    k_2(a) is k_1(-a) by convention; an empty set gives 1.
    """
    _check_base(a, i)
    if i == 2:
        return k_i(-a, 1)
    full = factor_power_minus_one(a, i)
    out = 1
    for r in zsigmondy_set(a, i):
        out *= r ** full.exponent(r)
    return out


def eta(k: int) -> int:
    if k < 1:
        raise InvalidInput("eta needs a positive integer")
    return k // 2 if k % 2 == 0 else k


def varphi(r: int, group) -> int:
    """Unified order function of a prime r for a classical simple group.

    ``group`` is a ``Linear`` or ``Symplectic`` expression.
    """
    from .groups import Linear, Symplectic

    if isinstance(group, Linear):
        if r == group.p:
            raise InvalidInput("r equals the defining characteristic")
        return mult_order(r, group.eps * group.q)
    if isinstance(group, Symplectic):
        if r == group.p:
            raise InvalidInput("r equals the defining characteristic")
        return eta(mult_order(r, group.q))
    raise InvalidInput(f"varphi is defined for classical groups, not {group!r}")


def primes_of(values: Iterable[Factorization]) -> list[int]:
    out: set[int] = set()
    for f in values:
        out.update(f.primes)
    return sorted(out)
