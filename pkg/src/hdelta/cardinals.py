"""Symbolic cardinal expressions: alephs, beths, successor, ``2^x`` and ``2^{<x}``.

Only ZFC identities are applied during normalization; in particular
``pow2(aleph(k))`` for ``k >= 1`` is left alone (no continuum hypothesis).

Normal forms keep ``beth(k)`` only over the base ``aleph(0)``. Over any other
base ``beth(k; b)`` is unfolded to ``k`` nested ``pow2`` nodes, so that
``beth(1; x)`` and ``pow2(x)`` share one representation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import InputError

__all__ = [
    "Aleph",
    "Beth",
    "Succ",
    "Pow2",
    "Pow2Lt",
    "Var",
    "CardExpr",
    "normalize",
    "sigma",
    "equals",
    "parse",
    "render",
    "walk",
]


@dataclass(frozen=True)
class Aleph:
    k: int

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 0:
            raise InputError(f"aleph index must be a natural number, got {self.k!r}")


ALEPH0 = Aleph(0)


@dataclass(frozen=True)
class Beth:
    k: int
    base: "CardExpr" = ALEPH0

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 0:
            raise InputError(f"beth index must be a natural number, got {self.k!r}")


@dataclass(frozen=True)
class Succ:
    x: "CardExpr"


@dataclass(frozen=True)
class Pow2:
    x: "CardExpr"


@dataclass(frozen=True)
class Pow2Lt:
    x: "CardExpr"


@dataclass(frozen=True)
class Var:
    """An unspecified infinite cardinal, e.g. ``lambda``."""

    name: str


CardExpr = Union[Aleph, Beth, Succ, Pow2, Pow2Lt, Var]


def _pow2(x: CardExpr) -> CardExpr:
    # x is normal
    if x == ALEPH0:
        return Beth(1)
    if isinstance(x, Beth):
        return Beth(x.k + 1)
    return Pow2(x)


def normalize(e: CardExpr) -> CardExpr:
    if isinstance(e, (Aleph, Var)):
        return e
    if isinstance(e, Beth):
        base = normalize(e.base)
        if e.k == 0:
            return base
        if base == ALEPH0:
            return Beth(e.k)
        if isinstance(base, Beth):
            return Beth(base.k + e.k)
        out = base
        for _ in range(e.k):
            out = _pow2(out)
        return out
    if isinstance(e, Pow2):
        return _pow2(normalize(e.x))
    if isinstance(e, Pow2Lt):
        x = normalize(e.x)
        if isinstance(x, Succ):
            return _pow2(x.x)
        if isinstance(x, Aleph):
            # 2^{<aleph_0} = aleph_0; aleph_k is the successor of aleph_{k-1}
            return ALEPH0 if x.k == 0 else _pow2(Aleph(x.k - 1))
        return Pow2Lt(x)
    if isinstance(e, Succ):
        x = normalize(e.x)
        if isinstance(x, Aleph):
            return Aleph(x.k + 1)
        return Succ(x)
    raise InputError(f"not a cardinal expression: {e!r}")


def sigma(lam: CardExpr, n: int) -> CardExpr:
    """``sigma(lam, 1) = lam`` and ``sigma(lam, n+1) = (2^{<sigma(lam, n)})^+``, normalized."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"sigma needs n >= 1, got {n!r}")
    out = normalize(lam)
    for _ in range(n - 1):
        out = normalize(Succ(Pow2Lt(out)))
    return out


def equals(a: CardExpr, b: CardExpr) -> str:
    """``'yes'``, ``'no'`` or ``'unknown'``, decided on normal forms."""
    return _equals(normalize(a), normalize(b))


def _equals(a: CardExpr, b: CardExpr) -> str:
    if a == b:
        return "yes"
    if isinstance(b, Aleph) and not isinstance(a, Aleph):
        a, b = b, a
    if isinstance(a, Aleph):
        if isinstance(b, Aleph):
            return "no"
        if isinstance(b, Beth):
            # aleph_k <= beth_k < beth_j for j > k
            return "no" if a.k == 0 or b.k > a.k else "unknown"
        if isinstance(b, Succ):
            return "no" if a.k == 0 else _equals(Aleph(a.k - 1), b.x)
        return "unknown"
    if isinstance(a, Beth) and isinstance(b, Beth):
        return "no"
    if isinstance(a, Succ) and isinstance(b, Succ):
        return _equals(a.x, b.x)
    return "unknown"


def render(e: CardExpr) -> str:
    if isinstance(e, Aleph):
        return f"aleph({e.k})"
    if isinstance(e, Beth):
        return f"beth({e.k})" if e.base == ALEPH0 else f"beth({e.k}; {render(e.base)})"
    if isinstance(e, Succ):
        return f"succ({render(e.x)})"
    if isinstance(e, Pow2):
        return f"pow2({render(e.x)})"
    if isinstance(e, Pow2Lt):
        return f"pow2lt({render(e.x)})"
    if isinstance(e, Var):
        return e.name
    raise InputError(f"not a cardinal expression: {e!r}")


def walk(e: CardExpr) -> Iterator[tuple]:
    """Yield ``(node, parent)`` pairs, parent ``None`` at the root."""
    stack = [(e, None)]
    while stack:
        node, parent = stack.pop()
        yield node, parent
        if isinstance(node, Beth):
            stack.append((node.base, node))
        elif isinstance(node, (Succ, Pow2, Pow2Lt)):
            stack.append((node.x, node))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")
_UNARY = {"succ": Succ, "pow2": Pow2, "pow2lt": Pow2Lt}


def _tokens(text: str) -> list:
    out = []
    for m in _TOKEN.finditer(text):
        num, name, ch = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif ch is not None and not ch.isspace():
            out.append(("sym", ch))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def fail(self, why: str) -> InputError:
        return InputError(f"cannot parse cardinal expression {self.text!r}: {why}")

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", None)

    def take(self, kind: str, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise self.fail(f"expected {want!r}, found {tok[1]!r}")
        self.i += 1
        return tok[1]

    def index(self, head: str) -> int:
        tok = self.peek()
        if tok[0] != "int":
            raise self.fail(
                f"{head} index must be a natural number; limit indices such as {tok[1]!r} are not supported"
            )
        return self.take("int")

    def expr(self) -> CardExpr:
        head = self.take("name")
        if head == "aleph":
            self.take("sym", "(")
            k = self.index(head)
            self.take("sym", ")")
            return Aleph(k)
        if head == "beth":
            self.take("sym", "(")
            k = self.index(head)
            base: CardExpr = ALEPH0
            if self.peek() == ("sym", ";"):
                self.take("sym", ";")
                base = self.expr()
            self.take("sym", ")")
            return Beth(k, base)
        if head in _UNARY:
            self.take("sym", "(")
            x = self.expr()
            self.take("sym", ")")
            return _UNARY[head](x)
        if self.peek() == ("sym", "("):
            raise self.fail(f"unknown constructor {head!r}")
        return Var(head)

    def parse(self) -> CardExpr:
        if not self.toks:
            raise self.fail("empty input")
        e = self.expr()
        if self.i != len(self.toks):
            raise self.fail(f"trailing input at {self.peek()[1]!r}")
        return e


def parse(text: str) -> CardExpr:
    """Parse ``aleph(k)``, ``beth(k)``, ``beth(k; e)``, ``succ(e)``, ``pow2(e)``,
    ``pow2lt(e)`` and bare identifiers (symbolic cardinals)."""
    return _Parser(text).parse()
