"""Command-line front end.

Exit status: 0 success (or a true/passing verdict), 1 a false/failing
verdict, 2 usage or input errors, 3 computation-budget failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import arith
from .errors import ComputationBudgetExceeded, InvalidInput
from .graph import build_graph, max_coclique, to_dot
from .groups import Linear, Product, parse
from .membership import mem_linear2, mem_power
from .spectrum import contains, mu_of, spectra_equal

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _linear2_power(g):
    """Return (n, k) when g is L(n,2)^k, else None."""
    if isinstance(g, Linear) and g.q == 2 and g.eps == 1:
        return g.n, 1
    if isinstance(g, Product) and len(g.factors) == 1:
        inner, k = g.factors[0]
        sub = _linear2_power(inner)
        if sub is not None:
            return sub[0], sub[1] * k
    return None


def cmd_mu(args, out):
    out.write(mu_of(parse(args.expr)).to_json() + "\n")
    return EXIT_OK


def cmd_isospectral(args, out):
    eq = spectra_equal(mu_of(parse(args.a)), mu_of(parse(args.b)))
    out.write(("true" if eq else "false") + "\n")
    return EXIT_OK if eq else EXIT_FALSE


def cmd_graph(args, out):
    g = build_graph(mu_of(parse(args.expr)))
    if args.dot:
        hl = max_coclique(g, greedy=True) if args.highlight_coclique else ()
        out.write(to_dot(g, hl))
    else:
        out.write(_dump({
            "vertices": [str(v) for v in g.vertices],
            "edges": [[str(a), str(b)] for a, b in sorted(g.edges)],
        }) + "\n")
    return EXIT_OK


def cmd_coclique(args, out):
    g = build_graph(mu_of(parse(args.expr)))
    c = max_coclique(g, greedy=args.greedy)
    out.write(_dump({"coclique": [str(v) for v in c], "size": len(c)}) + "\n")
    return EXIT_OK


def cmd_zsigmondy(args, out):
    rs = sorted(arith.zsigmondy_set(args.a, args.i))
    out.write(_dump([str(r) for r in rs]) + "\n")
    return EXIT_OK


def cmd_member(args, out):
    g = parse(args.group)
    lin = _linear2_power(g)
    if lin is not None:
        n, k = lin
        ok = mem_linear2(args.x, n) if k == 1 else mem_power(args.x, n, k)
        method = "oracle"
    else:
        ok = contains(mu_of(g), args.x)
        method = "mu"
    out.write(_dump({"x": str(args.x), "group": str(g), "member": ok, "method": method}) + "\n")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_psi(args, out):
    from .verify import psi_set

    out.write(_dump(psi_set(args.i, args.k, args.n).to_dict()) + "\n")
    return EXIT_OK


def _verify_report(name, params):
    from . import verify as v

    def ints(count):
        if len(params) != count:
            raise InvalidInput(f"check {name!r} takes {count} integer parameter(s)")
        return [int(p) for p in params]

    if name == "zsigmondy":
        imax = ints(1)[0] if params else 40
        return v.zsigmondy_sweep((2, -2, 3, -3), imax)
    if name == "composite-count":
        lo, hi = ints(2) if params else (59, 10_000)
        return v.composite_count_sweep(lo, hi)
    if name == "eta-bound":
        hi = ints(1)[0] if params else 500
        return v.eta_bound_sweep(hi)
    if name == "eta":
        if len(params) != 1:
            raise InvalidInput("eta takes one rational parameter")
        x = Fraction(params[0])
        return v.CheckReport("eta", {"x": str(x)}, v.eta_bound_check(x), [v.theta_size(x)])
    if name == "k0":
        (n,) = ints(1)
        res = v.k0_stabilization(n)
        return v.CheckReport("k0", {"n": n}, res.verified, [{"k0": res.k0, "N": str(res.N)}])
    if name == "pi-properties":
        i, k, n = ints(3)
        return v.verify_pi_properties(v.psi_set(i, k, n))
    if name == "unrec":
        if len(params) not in (2, 3):
            raise InvalidInput("unrec takes <group> <r> [m]")
        g = parse(params[0])
        rep = v.unrec_witness(g, int(params[1]), int(params[2]) if len(params) == 3 else 1)
        return v.CheckReport("unrec", {"group": str(g), "r": params[1]}, rep.count_bound_ok, [rep.to_dict()])
    if name == "adjacency":
        (n,) = ints(1)
        return v.adjacency_criteria_check(n)
    if name == "substitution":
        (n,) = ints(1)
        return v.substitution_check(n)
    raise InvalidInput(f"unknown check {name!r}")


def cmd_verify(args, out):
    if args.check == "all":
        from .acceptance import run_all

        ok = run_all(lambda line: out.write(line + "\n"))
        return EXIT_OK if ok else EXIT_FALSE
    rep = _verify_report(args.check, args.params)
    out.write(rep.to_json() + "\n")
    return EXIT_OK if rep.passed else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grpspec", description="Element-order spectra of classical simple groups.")
    ap.add_argument("--cache", help=f"factor cache file (default ${arith.CACHE_ENV} or ./{arith.DEFAULT_CACHE_NAME})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", help="print mu(G) as JSON")
    p.add_argument("expr")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("isospectral", help="compare two spectra")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_isospectral)

    p = sub.add_parser("graph", help="prime graph")
    p.add_argument("expr")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--highlight-coclique", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("coclique", help="maximum coclique of the prime graph")
    p.add_argument("expr")
    p.add_argument("--greedy", action="store_true", help="fall back to a greedy bound for large graphs")
    p.set_defaults(func=cmd_coclique)

    p = sub.add_parser("zsigmondy", help="primitive prime divisors of a^i - 1")
    p.add_argument("a", type=int)
    p.add_argument("i", type=int)
    p.set_defaults(func=cmd_zsigmondy)

    p = sub.add_parser("member", help="is x an element order of the group?")
    p.add_argument("x", type=int)
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("psi", help="index witness for (i, k, n)")
    p.add_argument("i", type=int)
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("verify", help="run a checker, or 'all' for the acceptance suite")
    p.add_argument("check")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_verify)
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.cache:
        arith.set_default_cache(args.cache)
    try:
        return args.func(args, out)
    except InvalidInput as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except ComputationBudgetExceeded as e:
        err.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET
    finally:
        arith.get_default_cache().flush()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
