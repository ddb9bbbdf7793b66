"""Exit criteria for the package, runnable from the CLI and from pytest."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .arith import r_i
from .graph import build_graph, omega_coclique
from .groups import Linear, Symplectic, parse
from .membership import mem_linear2
from .oracles import alternating_element_orders, gl2_element_orders, mu_from_orders
from .spectrum import contains, mu_linear_unitary, mu_of, spectra_equal
from .verify import (
    CheckReport,
    adjacency_criteria_check,
    composite_count_sweep,
    eta_bound_sweep,
    k0_stabilization,
    psi_set,
    substitution_check,
    unrec_witness,
    verify_pi_properties,
    zsigmondy_sweep,
)


def brute_force_agreement() -> CheckReport:
    n3, orders3 = gl2_element_orders(3)
    n8, orders8 = alternating_element_orders(8)
    mu3, mu4 = mu_linear_unitary(3, 2), mu_linear_unitary(4, 2)
    details = [
        {"group": "L(3,2)", "elements": n3, "brute": list(mu_from_orders(orders3).values), "formula": list(mu3.values)},
        {"group": "L(4,2)=Alt8", "elements": n8, "brute": list(mu_from_orders(orders8).values), "formula": list(mu4.values)},
    ]
    passed = (
        n3 == 168
        and n8 == 20160
        and mu_from_orders(orders3) == mu3
        and mu_from_orders(orders8) == mu4
        and mu3.values == (3, 4, 7)
        and mu4.values == (4, 6, 7, 15)
    )
    return CheckReport("brute-force", {}, passed, details)


def product_identities() -> CheckReport:
    pairs = [("L(4,2)^2", "L(4,2)*L(3,2)"), ("L(8,2)^3", "L(8,2)^2*L(7,2)")]
    details = []
    for a, b in pairs:
        eq = spectra_equal(mu_of(parse(a)), mu_of(parse(b)))
        details.append({"a": a, "b": b, "equal": eq})
    return CheckReport("product-identities", {}, all(d["equal"] for d in details), details)


def power_stabilization() -> CheckReport:
    details = []
    for n in (4, 8, 16):
        res = k0_stabilization(n)
        ok = res.verified and res.k0 == (n + 3) // 2
        details.append({"n": n, "k0": res.k0, "N": str(res.N), "verified": ok, "exponent_matches": res.exponent_matches})
    return CheckReport("k0", {"n": [4, 8, 16]}, all(d["verified"] for d in details), details)


def cyclic_absorption() -> CheckReport:
    cases = [
        (Linear(3, 5, 1), 2, 1, True, True),
        (Linear(3, 4, -1), 5, 2, False, True),
        (Symplectic(2, 5), 2, 1, True, True),
    ]
    details = []
    passed = True
    for g, r, count, square, cube in cases:
        rep = unrec_witness(g, r)
        ok = (
            rep.coprime_mu_count == count
            and rep.square_stable == square
            and rep.cube_stable == cube
            and rep.count_bound_ok
        )
        passed &= ok
        details.append(dict(rep.to_dict(), ok=ok))
    return CheckReport("unrec", {}, passed, details)


def zsigmondy_exceptions() -> CheckReport:
    return zsigmondy_sweep((2, -2, 3, -3), 40)


def large_order_coclique() -> CheckReport:
    details = []
    passed = True
    for n in (12, 16):
        omega = omega_coclique(n)
        graph = build_graph(mu_linear_unitary(n, 2))
        ok = len(omega) == (n + 1) // 2 and graph.is_coclique(omega) and set(omega) <= set(graph.vertices)
        passed &= ok
        details.append({"n": n, "coclique": [str(r) for r in omega], "ok": ok})
    mu16 = mu_linear_unitary(16, 2)
    two_part = contains(mu16, 16) and not contains(mu16, 32)
    details.append({"n": 16, "16 in spectrum, 32 not": two_part})
    return CheckReport("large-order-coclique", {"n": [12, 16]}, passed and two_part, details)


def _divisors(f) -> list[int]:
    out = [1]
    for p, e in f.entries:
        out = [d * p**k for d in out for k in range(e + 1)]
    return out


# primes dividing |L_14(2)|, a few outsiders, and small prime squares
PERTURB = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 73, 89, 127, 8191, 4, 9, 25, 49)


def membership_corpus(n: int) -> tuple[set[int], set[int]]:
    """Divisors of mu-elements, and multiples of them by PERTURB that are not divisors."""
    mu = mu_linear_unitary(n, 2)
    divs: set[int] = set()
    for f in mu.elements:
        divs.update(_divisors(f))
    perturbed = {d * p for d in divs for p in PERTURB} - divs
    return divs, perturbed


def membership_agreement() -> CheckReport:
    total = members = nonmembers = 0
    bad = []
    for n in range(2, 15):
        mu = mu_linear_unitary(n, 2)
        divs, perturbed = membership_corpus(n)
        for x in sorted(divs | perturbed):
            truth = contains(mu, x)
            total += 1
            members += truth
            nonmembers += not truth
            if mem_linear2(x, n) != truth:
                bad.append({"n": n, "x": str(x)})
    passed = not bad and total >= 10_000 and members > 0 and nonmembers > 0
    params = {"n_max": 14, "corpus": total, "members": members, "nonmembers": nonmembers}
    return CheckReport("membership-agreement", params, passed, bad)


def psi_at_scale() -> CheckReport:
    w = psi_set(2, 2, 64)
    rep = verify_pi_properties(w)
    bad = w.invariant_failures()
    details = [w.to_dict()] + rep.details
    three = next(d for d in rep.details if d["claim"].startswith("r_i"))
    passed = rep.passed and not bad and three["r_i"] == str(r_i(2, 2)) == "3"
    return CheckReport("psi-at-scale", {"i": 2, "k": 2, "n": 64}, passed, details)


def counting_sweeps() -> CheckReport:
    comp = composite_count_sweep(59, 10_000)
    et = eta_bound_sweep(500)
    details = [comp.to_dict(), et.to_dict()]
    return CheckReport("counting-sweeps", {}, comp.passed and et.passed, details)


def adjacency_consistency() -> CheckReport:
    details = []
    for n in (8, 16):
        mu = mu_linear_unitary(n, 2)
        details.append(adjacency_criteria_check(n, mu).to_dict())
        details.append(substitution_check(n, 4).to_dict())
    return CheckReport("adjacency-consistency", {"n": [8, 16]}, all(d["passed"] for d in details), details)


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    run: Callable[[], CheckReport]
    seconds: float


CRITERIA = (
    Criterion(1, "brute-force oracle equality for L3(2), L4(2)", brute_force_agreement, 5),
    Criterion(2, "product spectrum identities", product_identities, 10),
    Criterion(3, "direct powers stabilize at k0", power_stabilization, 120),
    Criterion(4, "squares/cubes absorb a cyclic factor", cyclic_absorption, 5),
    Criterion(5, "primitive prime divisor exceptions", zsigmondy_exceptions, 30),
    Criterion(6, "large-order coclique and 2-part bound", large_order_coclique, 120),
    Criterion(7, "membership oracle agrees with mu", membership_agreement, 60),
    Criterion(8, "index witness at n = 64", psi_at_scale, 120),
    Criterion(9, "composite count and eta bound sweeps", counting_sweeps, 30),
    Criterion(10, "adjacency criteria and substitution", adjacency_consistency, 120),
)


def run_criterion(c: Criterion) -> tuple[CheckReport, float]:
    t0 = time.perf_counter()
    rep = c.run()
    return rep, time.perf_counter() - t0


def run_all(echo: Callable[[str], None] = print) -> bool:
    ok = True
    for c in CRITERIA:
        rep, dt = run_criterion(c)
        passed = rep.passed and dt < c.seconds
        ok &= passed
        echo(f"{'PASS' if passed else 'FAIL'} [{c.number}] {c.title} ({dt:.2f}s / {c.seconds:g}s)")
    return ok

