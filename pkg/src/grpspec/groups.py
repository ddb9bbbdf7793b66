"""Symbolic group expressions and the textual grammar for them.

Grammar (whitespace ignored)::

    expr    := power ('*' power)*
    power   := atom ('^' INT)?
    atom    := 'L(' INT ',' INT ')' | 'U(' INT ',' INT ')'
             | 'S(' INT ',' INT ')' | 'Z(' INT ')' | '(' expr ')'

``S(2n,q)`` takes the dimension ``2n`` of the natural module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .arith import is_prime_power
from .errors import InvalidInput


def _prime_power(q: int) -> tuple[int, int]:
    pp = is_prime_power(q)
    if pp is None:
        raise InvalidInput(f"{q} is not a prime power")
    return pp


@dataclass(frozen=True)
class Linear:
    """L_n(q) for eps = +1, U_n(q) for eps = -1."""

    n: int
    q: int
    eps: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInput("linear/unitary groups need n >= 2")
        if self.eps not in (1, -1):
            raise InvalidInput("eps must be +1 or -1")
        _prime_power(self.q)

    @property
    def p(self) -> int:
        return _prime_power(self.q)[0]

    def __str__(self):
        return f"{'L' if self.eps == 1 else 'U'}({self.n},{self.q})"


@dataclass(frozen=True)
class Symplectic:
    """S_{2n}(q) for odd q; ``n`` is the Lie rank."""

    n: int
    q: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInput("symplectic groups need rank n >= 2")
        p, _ = _prime_power(self.q)
        if p == 2:
            raise InvalidInput("only odd q is supported for symplectic groups")

    @property
    def p(self) -> int:
        return _prime_power(self.q)[0]

    def __str__(self):
        return f"S({2 * self.n},{self.q})"


@dataclass(frozen=True)
class Cyclic:
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise InvalidInput("cyclic group order must be positive")

    def __str__(self):
        return f"Z({self.r})"


@dataclass(frozen=True)
class Product:
    factors: tuple[tuple["GroupExpr", int], ...]

    def __post_init__(self):
        if not self.factors:
            raise InvalidInput("empty product")
        if any(m < 1 for _, m in self.factors):
            raise InvalidInput("multiplicities must be positive")

    def __str__(self):
        parts = []
        for g, m in self.factors:
            s = f"({g})" if isinstance(g, Product) else str(g)
            parts.append(s if m == 1 else f"{s}^{m}")
        return " * ".join(parts)


GroupExpr = Union[Linear, Symplectic, Cyclic, Product]
SimpleGroup = Union[Linear, Symplectic]


def power(g: GroupExpr, k: int) -> GroupExpr:
    return g if k == 1 else Product(((g, k),))


def product(*gs: GroupExpr) -> GroupExpr:
    return gs[0] if len(gs) == 1 else Product(tuple((g, 1) for g in gs))


_TOKEN = re.compile(r"\s*(?:(\d+)|([LUSZ])|(.))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str]] = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.tokens.append(("int", m.group(1)))
            elif m.group(2):
                self.tokens.append(("name", m.group(2)))
            elif m.group(3) and not m.group(3).isspace():
                self.tokens.append(("sym", m.group(3)))
        self.pos = 0

    def error(self, msg):
        raise InvalidInput(f"cannot parse {self.text!r}: {msg}")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind, value=None):
        k, v = self.peek()
        if k != kind or (value is not None and v != value):
            self.error(f"expected {value or kind} at token {self.pos}")
        self.pos += 1
        return v

    def expr(self):
        items = [self.power()]
        while self.peek() == ("sym", "*"):
            self.pos += 1
            items.append(self.power())
        if len(items) == 1:
            g, m = items[0]
            return power(g, m)
        return Product(tuple(items))

    def power(self):
        g = self.atom()
        m = 1
        if self.peek() == ("sym", "^"):
            self.pos += 1
            m = int(self.take("int"))
            if m < 1:
                self.error("exponent must be positive")
        return g, m

    def atom(self):
        k, v = self.peek()
        if k == "sym" and v == "(":
            self.pos += 1
            g = self.expr()
            self.take("sym", ")")
            return g
        name = self.take("name")
        self.take("sym", "(")
        a = int(self.take("int"))
        if name == "Z":
            self.take("sym", ")")
            return Cyclic(a)
        self.take("sym", ",")
        b = int(self.take("int"))
        self.take("sym", ")")
        if name == "L":
            return Linear(a, b, 1)
        if name == "U":
            return Linear(a, b, -1)
        if a % 2:
            self.error("S(2n,q) needs an even dimension")
        return Symplectic(a // 2, b)


def parse(text: str) -> GroupExpr:
    p = _Parser(text)
    if not p.tokens:
        p.error("empty expression")
    g = p.expr()
    if p.pos != len(p.tokens):
        p.error(f"trailing input at token {p.pos}")
    return g
