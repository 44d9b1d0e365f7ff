"""Expression language for the workbench.

Grammar (whitespace-insensitive):

    expr    := ['-'] term (('+' | '-') term)*
    term    := power ('*' power)*
    power   := atom ['^' nat]
    atom    := rational | generator | '(' expr ')'
    gen     := x(i) | y(i) | e(i) | L(i,j) | O(i,...) | Dirac | Coord

Precedence: ^ binds tighter than *, which binds tighter than + and -.
The AST mirrors the grammar exactly, so `parse(render(ast)) == ast`.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .core import AlgebraContext, WCElement
from .errors import DomainError, ParseError
from .graded import GrElement, gr_O, gr_gen, gr_scalar

Atom = Union["RatLit", "Gen", "LAtom", "OAtom", "DiracAtom", "CoordAtom", "Group"]


@dataclass(frozen=True)
class RatLit:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    kind: str  # 'x' | 'y' | 'e'
    index: int


@dataclass(frozen=True)
class LAtom:
    i: int
    j: int


@dataclass(frozen=True)
class OAtom:
    indices: Tuple[int, ...]


@dataclass(frozen=True)
class DiracAtom:
    pass


@dataclass(frozen=True)
class CoordAtom:
    pass


@dataclass(frozen=True)
class Power:
    base: Atom
    exponent: int  # >= 1; rendered bare when 1


@dataclass(frozen=True)
class Product:
    factors: Tuple[Power, ...]  # nonempty


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, Product], ...]  # (sign, term), signs in {+1, -1}


@dataclass(frozen=True)
class Group:
    inner: Sum


Expression = Sum


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z]+)|(?P<sym>[-+*^(),]))"
)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        if self.pos >= len(self.text):
            return None, self.pos
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            stripped = self.text[self.pos :].lstrip()
            if not stripped:
                return None, len(self.text)
            raise ParseError(f"unexpected character {stripped[0]!r}", self.pos)
        return m, m.start()

    def next(self):
        m, _ = self.peek()
        if m is None:
            return None
        self.pos = m.end()
        return m

    def expect_sym(self, sym: str):
        m = self.next()
        if m is None or m.group("sym") != sym:
            raise ParseError(f"expected {sym!r}", self.pos)


def parse(text: str) -> Expression:
    toks = _Tokens(text)
    expr = _parse_sum(toks)
    m, at = toks.peek()
    if m is not None:
        raise ParseError("trailing input", at)
    return expr


def _parse_sum(toks: _Tokens) -> Sum:
    terms = []
    sign = 1
    m, _ = toks.peek()
    if m is not None and m.group("sym") == "-":
        toks.next()
        sign = -1
    terms.append((sign, _parse_product(toks)))
    while True:
        m, _ = toks.peek()
        if m is None or m.group("sym") not in ("+", "-"):
            break
        toks.next()
        sign = 1 if m.group("sym") == "+" else -1
        terms.append((sign, _parse_product(toks)))
    return Sum(tuple(terms))


def _parse_product(toks: _Tokens) -> Product:
    factors = [_parse_power(toks)]
    while True:
        m, _ = toks.peek()
        if m is None or m.group("sym") != "*":
            break
        toks.next()
        factors.append(_parse_power(toks))
    return Product(tuple(factors))


def _parse_power(toks: _Tokens) -> Power:
    base = _parse_atom(toks)
    m, _ = toks.peek()
    if m is not None and m.group("sym") == "^":
        toks.next()
        m2 = toks.next()
        if m2 is None or not m2.group("num") or "/" in m2.group("num"):
            raise ParseError("expected a natural-number exponent", toks.pos)
        return Power(base, int(m2.group("num")))
    return Power(base, 1)


def _parse_indices(toks: _Tokens, minimum: int, maximum: int | None) -> Tuple[int, ...]:
    toks.expect_sym("(")
    out = []
    while True:
        m = toks.next()
        if m is None or not m.group("num") or "/" in m.group("num"):
            raise ParseError("expected an index", toks.pos)
        out.append(int(m.group("num")))
        m = toks.next()
        if m is None or m.group("sym") not in (",", ")"):
            raise ParseError("expected ',' or ')'", toks.pos)
        if m.group("sym") == ")":
            break
    if len(out) < minimum or (maximum is not None and len(out) > maximum):
        raise ParseError("wrong number of indices", toks.pos)
    return tuple(out)


def _parse_atom(toks: _Tokens):
    m, at = toks.peek()
    if m is None:
        raise ParseError("unexpected end of input", at)
    if m.group("num"):
        toks.next()
        return RatLit(Fraction(m.group("num")))
    if m.group("name"):
        name = m.group("name")
        toks.next()
        if name in ("x", "y", "e"):
            (i,) = _parse_indices(toks, 1, 1)
            return Gen(name, i)
        if name == "L":
            i, j = _parse_indices(toks, 2, 2)
            return LAtom(i, j)
        if name == "O":
            return OAtom(_parse_indices(toks, 2, None))
        if name == "Dirac":
            return DiracAtom()
        if name == "Coord":
            return CoordAtom()
        raise ParseError(f"unknown name {name!r}", at)
    if m.group("sym") == "(":
        toks.next()
        inner = _parse_sum(toks)
        toks.expect_sym(")")
        return Group(inner)
    raise ParseError(f"unexpected token {m.group(0).strip()!r}", at)


# --- rendering -----------------------------------------------------------------


def render(expr: Expression) -> str:
    chunks = []
    for pos, (sign, term) in enumerate(expr.terms):
        if pos == 0:
            prefix = "-" if sign < 0 else ""
        else:
            prefix = " - " if sign < 0 else " + "
        chunks.append(prefix + _render_product(term))
    return "".join(chunks)


def _render_product(term: Product) -> str:
    return " * ".join(_render_power(f) for f in term.factors)


def _render_power(p: Power) -> str:
    base = _render_atom(p.base)
    return f"{base}^{p.exponent}" if p.exponent != 1 else base


def _render_atom(a) -> str:
    if isinstance(a, RatLit):
        return str(a.value)
    if isinstance(a, Gen):
        return f"{a.kind}({a.index})"
    if isinstance(a, LAtom):
        return f"L({a.i},{a.j})"
    if isinstance(a, OAtom):
        return "O(" + ",".join(str(i) for i in a.indices) + ")"
    if isinstance(a, DiracAtom):
        return "Dirac"
    if isinstance(a, CoordAtom):
        return "Coord"
    if isinstance(a, Group):
        return "(" + render(a.inner) + ")"
    raise TypeError(f"not an atom: {a!r}")


# --- evaluation ----------------------------------------------------------------


def evaluate(expr: Expression, ctx: AlgebraContext) -> WCElement:
    """Evaluate in the filtered Weyl-Clifford algebra."""
    out = ctx.zero()
    for sign, term in expr.terms:
        val = _eval_product(term, ctx)
        out = out + (val if sign > 0 else -val)
    return out


def _eval_product(term: Product, ctx: AlgebraContext) -> WCElement:
    out = ctx.one()
    for p in term.factors:
        out = out * (_eval_atom(p.base, ctx) ** p.exponent if p.exponent != 1 else _eval_atom(p.base, ctx))
    return out


def _eval_atom(a, ctx: AlgebraContext) -> WCElement:
    from .diagrams import L_of_chord
    from .symmetries import o_of_word, osp_generators

    if isinstance(a, RatLit):
        return ctx.scalar(a.value)
    if isinstance(a, Gen):
        return {"x": ctx.x, "y": ctx.y, "e": ctx.e}[a.kind](a.index)
    if isinstance(a, LAtom):
        return L_of_chord(ctx, (a.i, a.j))
    if isinstance(a, OAtom):
        if len(set(a.indices)) != len(a.indices):
            raise DomainError("O(...) needs distinct indices")
        if len(a.indices) > ctx.n:
            raise DomainError("O(...) arity exceeds the dimension")
        return o_of_word(ctx, a.indices)
    if isinstance(a, DiracAtom):
        return osp_generators(ctx).dirac
    if isinstance(a, CoordAtom):
        return osp_generators(ctx).coord
    if isinstance(a, Group):
        return evaluate(a.inner, ctx)
    raise TypeError(f"not an atom: {a!r}")


def evaluate_gr(expr: Expression, ctx: AlgebraContext) -> GrElement:
    """Evaluate in the associated graded algebra (O atoms of arity 2 only)."""
    out = gr_scalar(ctx, 0)
    for sign, term in expr.terms:
        val = gr_scalar(ctx, 1)
        for p in term.factors:
            base = _eval_atom_gr(p.base, ctx)
            for _ in range(p.exponent):
                val = val * base
        out = out + (val if sign > 0 else -val)
    return out


def _eval_atom_gr(a, ctx: AlgebraContext) -> GrElement:
    from .graded import gr_L

    if isinstance(a, RatLit):
        return gr_scalar(ctx, a.value)
    if isinstance(a, Gen):
        return gr_gen(ctx, a.kind, a.index)
    if isinstance(a, LAtom):
        return gr_L(ctx, a.i, a.j)
    if isinstance(a, OAtom):
        if len(a.indices) != 2:
            raise DomainError("graded evaluation supports O(i,j) only")
        return gr_O(ctx, *a.indices)
    if isinstance(a, (DiracAtom, CoordAtom)):
        kind = "y" if isinstance(a, DiracAtom) else "x"
        out = gr_scalar(ctx, 0)
        for j in range(1, ctx.n + 1):
            out = out + gr_gen(ctx, kind, j) * gr_gen(ctx, "e", j)
        return out
    if isinstance(a, Group):
        return evaluate_gr(a.inner, ctx)
    raise TypeError(f"not an atom: {a!r}")


# --- random expressions (round-trip property) -------------------------------------


def random_expression(rng: random.Random, n: int, depth: int = 4) -> Expression:
    """A random AST in exactly the shape the parser produces."""
    return _random_sum(rng, n, depth)


def _random_sum(rng, n, depth) -> Sum:
    terms = tuple(
        (rng.choice((1, -1)), _random_product(rng, n, depth))
        for _ in range(rng.randint(1, 3))
    )
    return Sum(terms)


def _random_product(rng, n, depth) -> Product:
    return Product(tuple(_random_power(rng, n, depth) for _ in range(rng.randint(1, 3))))


def _random_power(rng, n, depth) -> Power:
    exponent = rng.choice((1, 1, 1, 2, 3))
    return Power(_random_atom(rng, n, depth), exponent)


def _random_atom(rng, n, depth):
    kinds = ["rat", "gen", "L", "O", "dirac", "coord"]
    if depth > 0:
        kinds += ["group", "group"]
    kind = rng.choice(kinds)
    if kind == "rat":
        return RatLit(Fraction(rng.randint(0, 9), rng.randint(1, 9)))
    if kind == "gen":
        return Gen(rng.choice("xye"), rng.randint(1, n))
    if kind == "L":
        i = rng.randint(1, n)
        j = rng.choice([v for v in range(1, n + 1) if v != i])
        return LAtom(i, j)
    if kind == "O":
        arity = rng.randint(2, min(4, n))
        return OAtom(tuple(rng.sample(range(1, n + 1), arity)))
    if kind == "dirac":
        return DiracAtom()
    if kind == "coord":
        return CoordAtom()
    return Group(_random_sum(rng, n, depth - 1))
