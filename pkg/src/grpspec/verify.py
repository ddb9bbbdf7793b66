"""Executable checkers for the arithmetic facts behind spectrum recognition.

Every checker returns a :class:`CheckReport`, which serializes to
``{"check", "params", "passed", "details"}`` in that key order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any

from .arith import _sieve, eta, factor, is_prime, k_i, mult_order, r_i, zsigmondy_set
from .errors import GrpSpecError, InvalidInput, PreconditionError
from .groups import Cyclic, GroupExpr, Linear, Product, SimpleGroup, Symplectic
from .membership import adjacent_in_gamma_L2, mem_linear2, mem_power
from .spectrum import MuSet, exponent_of, mu_linear_unitary, mu_of, mu_power, mu_product, spectra_equal


@dataclass
class CheckReport:
    check: str
    params: dict[str, Any]
    passed: bool
    details: list[Any] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "params": self.params,
            "passed": self.passed,
            "details": self.details,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)

    def __bool__(self) -> bool:
        return self.passed


def _is_power_of(x: int, p: int) -> bool:
    """True for x = p^j with j >= 0."""
    if x < 1:
        return False
    while x % p == 0:
        x //= p
    return x == 1


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


# ---------------------------------------------------------------------------
# index witness and its prime product


@dataclass(frozen=True)
class PsiWitness:
    i: int
    k: int
    n: int
    pairs: tuple[tuple[int, int], ...]
    primes: tuple[int, ...]  # r(i_1), r(j_1), r(i_2), r(j_2), ...
    pi: int

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(x for pair in self.pairs for x in pair)

    def invariant_failures(self) -> list[str]:
        n, i = self.n, self.i
        bad = []
        if len(self.pairs) != self.k:
            bad.append("wrong number of pairs")
        for a, b in self.pairs:
            if a + b != n:
                bad.append(f"{a}+{b} != {n}")
            if not (n / 2 < a <= n):
                bad.append(f"{a} outside (n/2, n]")
            if not (n / 3 < b < n / 2):
                bad.append(f"{b} outside (n/3, n/2)")
        idx = self.indices
        if len(set(idx)) != len(idx):
            bad.append("indices not distinct")
        for a, b in combinations(idx, 2):
            if a % b == 0 or b % a == 0:
                bad.append(f"{a} and {b} divide each other")
        for a in idx:
            if a % i == 0 or i % a == 0:
                bad.append(f"{a} and i={i} divide each other")
        if len(set(self.primes)) != len(self.primes) or math.prod(self.primes) != self.pi:
            bad.append("prime product is not squarefree product of the listed primes")
        for j, r in zip(idx, self.primes):
            if r != r_i(2, j):
                bad.append(f"{r} is not the chosen primitive divisor for index {j}")
        return bad

    def to_dict(self) -> dict[str, Any]:
        return {
            "i": self.i,
            "k": self.k,
            "n": self.n,
            "pairs": [[str(a), str(b)] for a, b in self.pairs],
            "primes": [str(r) for r in self.primes],
            "pi": str(self.pi),
        }


def psi_set(i: int, k: int, n: int) -> PsiWitness:
    """Greedy index witness: k pairs (i_m, j_m) summing to n, mutually indivisible and avoiding i."""
    if i < 2 or k < 2:
        raise PreconditionError("need i, k >= 2")
    if not _is_power_of_two(n):
        raise PreconditionError(f"n = {n} is not a power of 2")
    if n < i:
        raise PreconditionError(f"need n >= i, got n = {n}, i = {i}")
    if n <= 18 * (k + 1):
        raise PreconditionError(f"need n > 18(k+1) = {18 * (k + 1)}, got n = {n}")
    half = n // 2
    shift = 0
    pairs = []
    for _ in range(k + 1):
        for t in (1, 2, 3):
            a, b = half + shift + t, half - shift - t
            if a % i and b % i:
                shift += t
                pairs.append((a, b))
                break
        else:
            raise GrpSpecError(f"no step in {{1,2,3}} avoids multiples of {i}")
    violators = [p for p in pairs if i == 2 * p[1]]
    if violators:
        pairs.remove(min(violators, key=lambda p: p[1]))
    pairs = pairs[:k]
    primes = []
    for a, b in pairs:
        for j in (a, b):
            r = r_i(2, j)
            if r is None:
                raise GrpSpecError(f"no primitive prime divisor of 2^{j} - 1")
            primes.append(r)
    w = PsiWitness(i, k, n, tuple(pairs), tuple(primes), math.prod(primes))
    bad = w.invariant_failures()
    if bad:
        raise GrpSpecError("witness invariants violated: " + "; ".join(bad))
    return w


def verify_pi_properties(w: PsiWitness) -> CheckReport:
    n, k = w.n, w.k
    details = []
    slots = []
    for m, (a, b) in enumerate(w.pairs):
        ra, rb = w.primes[2 * m], w.primes[2 * m + 1]
        slots.append(mem_linear2(ra * rb, n))
    in_power = mem_power(w.pi, n, k)
    details.append({"claim": "pi in spectrum of power", "slots": slots, "ok": all(slots) and in_power})
    two = not mem_power(2 * w.pi, n, k)
    details.append({"claim": "2*pi not in spectrum of power", "ok": two})
    if w.i != 6:
        ri = r_i(2, w.i)
        extra = not mem_power(ri * w.pi, n, k)
        details.append({"claim": "r_i*pi not in spectrum of power", "r_i": str(ri), "ok": extra})
    passed = all(d["ok"] for d in details)
    return CheckReport("pi-properties", {"i": w.i, "k": k, "n": n}, passed, details)


def pi_smaller_dimension_check(w: PsiWitness, n_small: int) -> bool:
    """Pi is not an element order of L_{n_small}(2)^k once n_small < n.

    Each pair sums to n, so no slot of the smaller power can host a pair.
    """
    if n_small >= w.n:
        raise PreconditionError("n_small must be below n")
    return not mem_power(w.pi, n_small, w.k)


# ---------------------------------------------------------------------------
# stabilization of direct powers


@dataclass(frozen=True)
class K0Result:
    k0: int
    N: int
    verified: bool
    exponent_matches: bool


def two_exponent_linear2(n: int) -> int:
    """Largest 2^e that is an element order of L_n(2): 2^(e-1) + 1 <= n."""
    e = 1
    while 2**e + 1 <= n:
        e += 1
    return 2**e


def k0_stabilization(n: int) -> K0Result:
    if not _is_power_of_two(n) or n < 4:
        raise PreconditionError("n must be a power of 2, at least 4")
    k0 = (n + 3) // 2
    t = (n + 2) // 2
    N = math.lcm(two_exponent_linear2(n), *(2**j - 1 for j in range(t, n + 1)))
    mu = mu_linear_unitary(n, 2, 1)
    at_k0 = mu_power(mu, k0)
    after = mu_product(at_k0, mu)
    verified = at_k0.values == (N,) and spectra_equal(at_k0, after)
    return K0Result(k0, N, verified, exponent_of(mu) == N)


# ---------------------------------------------------------------------------
# squares and cubes that do not see an extra cyclic factor


@dataclass(frozen=True)
class UnrecognizabilityReport:
    group: GroupExpr
    r: int
    coprime_mu_count: int
    square_stable: bool
    cube_stable: bool
    count_bound_ok: bool
    m_probe: int = 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": str(self.group),
            "r": str(self.r),
            "coprime_mu_count": self.coprime_mu_count,
            "square_stable": self.square_stable,
            "cube_stable": self.cube_stable,
            "count_bound_ok": self.count_bound_ok,
            "m_probe": self.m_probe,
        }


def _unrec_hypothesis(g: SimpleGroup, r: int) -> int:
    """Check the hypothesis for (g, r); return the dimension parameter compared with p-powers."""
    if not is_prime(r):
        raise PreconditionError(f"{r} is not prime")
    if isinstance(g, Linear):
        if (g.q - g.eps) % r:
            raise PreconditionError(f"{r} does not divide q - eps1 = {g.q - g.eps}")
        if g.n % r == 0:
            raise PreconditionError(f"{r} divides n = {g.n}")
        return g.n - 1
    if isinstance(g, Symplectic):
        if r != 2:
            raise PreconditionError("symplectic case is stated for r = 2")
        return 2 * g.n - 1
    raise PreconditionError("group must be linear, unitary or symplectic")


def unrec_witness(g: SimpleGroup, r: int, m_probe: int = 1) -> UnrecognizabilityReport:
    """Count mu-elements coprime to r and test whether L^2, L^3 absorb Z_r^m."""
    if m_probe < 1:
        raise InvalidInput("m_probe must be positive")
    dim = _unrec_hypothesis(g, r)
    mu = mu_of(g)
    count = sum(1 for v in mu.values if v % r)
    extra = Product(((Cyclic(r), m_probe),))
    square = spectra_equal(mu_of(Product(((g, 2),))), mu_of(Product(((g, 2), (extra, 1)))))
    cube = spectra_equal(mu_of(Product(((g, 3),))), mu_of(Product(((g, 3), (extra, 1)))))
    bound_ok = count <= 2 and (count == 1 or _is_power_of(dim, g.p))
    return UnrecognizabilityReport(g, r, count, square, cube, bound_ok, m_probe)


# ---------------------------------------------------------------------------
# elementary counting facts


def composite_count_check(n: int) -> bool:
    """At least [2n/3] + 3 composites among n, ..., 2n."""
    if n < 59:
        raise PreconditionError("the composite count is only claimed for n >= 59")
    primes = sum(1 for x in range(n, 2 * n + 1) if is_prime(x))
    return (n + 1) - primes >= (2 * n) // 3 + 3


def composite_count_sweep(lo: int = 59, hi: int = 10_000) -> CheckReport:
    if lo < 59:
        raise PreconditionError("sweep must start at n >= 59")
    flags = bytearray(2 * hi + 2)
    for p in _sieve(2 * hi + 1):
        flags[p] = 1
    prefix = [0]
    for x in range(2 * hi + 2):
        prefix.append(prefix[-1] + flags[x])
    failures = []
    for n in range(lo, hi + 1):
        primes = prefix[2 * n + 1] - prefix[n]
        if (n + 1) - primes < (2 * n) // 3 + 3:
            failures.append(n)
    return CheckReport("composite-count", {"lo": lo, "hi": hi}, not failures, failures)


def theta_size(x: Fraction) -> int:
    x = Fraction(x)
    if x < 0:
        raise InvalidInput("x must be nonnegative")
    # eta(i) >= i/2, so i <= 2x
    return sum(1 for i in range(1, math.floor(2 * x) + 1) if eta(i) <= x)


def eta_bound_check(x) -> bool:
    x = Fraction(x)
    size = theta_size(x)
    return Fraction(3, 2) * x - Fraction(3, 2) <= size <= Fraction(3, 2) * x + Fraction(1, 2)


def eta_bound_sweep(hi: int = 500, step: Fraction = Fraction(1, 2)) -> CheckReport:
    failures = []
    x = Fraction(0)
    while x <= hi:
        if not eta_bound_check(x):
            failures.append(str(x))
        x += step
    return CheckReport("eta-bound", {"hi": hi, "step": str(step)}, not failures, failures)


# ---------------------------------------------------------------------------
# primitive divisors and adjacency criteria

ZSIGMONDY_EXCEPTIONS = frozenset({(2, 1), (2, 6), (-2, 2), (-2, 3), (3, 1), (-3, 2)})


def zsigmondy_sweep(bases=(2, -2, 3, -3), imax: int = 40) -> CheckReport:
    details = []
    for a in bases:
        for i in range(1, imax + 1):
            rs = zsigmondy_set(a, i)
            empty_expected = (a, i) in ZSIGMONDY_EXCEPTIONS
            if bool(rs) == empty_expected:
                details.append({"a": a, "i": i, "problem": "emptiness mismatch"})
            for r in rs:
                if mult_order(r, a) != i:
                    details.append({"a": a, "i": i, "r": str(r), "problem": "order mismatch"})
    return CheckReport("zsigmondy", {"bases": list(bases), "imax": imax}, not details, details)


def odd_primes_linear2(n: int) -> list[int]:
    out: set[int] = set()
    for i in range(1, n + 1):
        out.update(r for r in zsigmondy_set(2, i) if r != 2)
    return sorted(out)


def adjacency_criteria_check(n: int, mu: MuSet | None = None) -> CheckReport:
    """Compare order-based adjacency predictions for L_n(2) with the membership oracle.

    When ``mu`` is given the oracle is also compared with the graph read off mu.
    """
    if n < 4:
        raise PreconditionError("adjacency criteria need n >= 4")
    mismatches = []
    checked = 0
    for r, s in combinations(odd_primes_linear2(n), 2):
        er, es = mult_order(r, 2), mult_order(s, 2)
        actual = adjacent_in_gamma_L2(r, s, n)
        if mu is not None and actual != any(v % (r * s) == 0 for v in mu.values):
            mismatches.append({"r": r, "s": s, "rule": "mu-graph"})
        predicted = []
        if er <= n / 2 and es <= n / 2:
            predicted.append(("small orders", True))
        if n / 2 < er <= n and n / 2 < es <= n:
            predicted.append(("large orders", er == es))
        if er == es:
            predicted.append(("equal orders", True))
        for rule, value in predicted:
            checked += 1
            if value != actual:
                mismatches.append({"r": r, "s": s, "rule": rule})
    return CheckReport("adjacency-criteria", {"n": n, "checked": checked}, not mismatches, mismatches)


def substitution_check(n: int, max_size: int = 3) -> CheckReport:
    """Primes with distinct orders > 2 behave like the full primitive parts k_i(2)."""
    by_order: dict[int, list[int]] = {}
    for r in odd_primes_linear2(n):
        e = mult_order(r, 2)
        if e > 2:
            by_order.setdefault(e, []).append(r)
    primes = sorted(r for rs in by_order.values() for r in rs)
    mismatches = []
    checked = 0
    for size in range(1, max_size + 1):
        for combo in combinations(primes, size):
            orders = [mult_order(r, 2) for r in combo]
            if len(set(orders)) != size:
                continue
            checked += 1
            lhs = mem_linear2(math.prod(combo), n)
            rhs = mem_linear2(math.prod(k_i(2, e) for e in orders), n)
            if lhs != rhs:
                mismatches.append({"primes": list(combo), "orders": orders})
    return CheckReport("substitution", {"n": n, "max_size": max_size, "checked": checked}, not mismatches, mismatches)
