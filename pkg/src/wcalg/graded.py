"""The associated graded algebra: a supercommutative polynomial algebra in
the x, y symbols tensored with an exterior algebra in the e symbols.

Kept as a separate algebra (not a quotient view of the filtered one) so the
diagram rewriting can run without tracking lower-order corrections; the only
bridge back is `leading_part`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, NamedTuple

from .core import (
    HALF,
    ONE,
    ZERO,
    AlgebraContext,
    Parity,
    WCElement,
    clifford_merge,
    indices_to_mask,
    mask_to_indices,
    monomial_sort_key,
    monomial_text,
    _check_same_context,
)
from .errors import ContextMismatchError, DomainError


class GrMonomial(NamedTuple):
    alpha: tuple
    beta: tuple
    gamma: int

    @property
    def degree(self) -> int:
        return sum(self.alpha) + sum(self.beta) + self.gamma.bit_count()


class GrElement:
    """Element of the associated graded algebra; same key shape as the
    filtered monomials, but the product is supercommutative and any repeated
    exterior factor annihilates a term."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: AlgebraContext, terms: dict):
        self.ctx = ctx
        self._terms = terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def terms(self) -> Iterator[tuple]:
        for key in sorted(self._terms, key=monomial_sort_key):
            yield GrMonomial(*key), self._terms[key]

    def coefficient(self, alpha, beta, gamma=()) -> Fraction:
        key = (tuple(alpha), tuple(beta), indices_to_mask(gamma))
        return self._terms.get(key, ZERO)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(a) + sum(b) + g.bit_count() for a, b, g in self._terms)

    def parity(self) -> Parity:
        if not self._terms:
            return Parity.EVEN
        parities = {g.bit_count() & 1 for _, _, g in self._terms}
        if len(parities) > 1:
            return Parity.INHOMOGENEOUS
        return Parity.ODD if parities.pop() else Parity.EVEN

    def __eq__(self, other):
        if not isinstance(other, GrElement):
            return NotImplemented
        return self.ctx.n == other.ctx.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.ctx.n, frozenset(self._terms.items())))

    def __neg__(self):
        return GrElement(self.ctx, {k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, GrElement):
            return NotImplemented
        if self.ctx.n != other.ctx.n:
            raise ContextMismatchError("gr elements from different contexts")
        terms = dict(self._terms)
        for k, c in other._terms.items():
            s = terms.get(k, ZERO) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return GrElement(self.ctx, terms)

    def __sub__(self, other):
        if not isinstance(other, GrElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "GrElement":
        c = Fraction(c)
        if not c:
            return gr_zero(self.ctx)
        return GrElement(self.ctx, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GrElement):
            return NotImplemented
        return gr_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = gr_one(self.ctx)
        for _ in range(k):
            out = gr_multiply(out, self)
        return out

    def __repr__(self):
        return f"<GrElement n={self.ctx.n}: {gr_text(self)}>"


def gr_zero(ctx: AlgebraContext) -> GrElement:
    return GrElement(ctx, {})


def gr_one(ctx: AlgebraContext) -> GrElement:
    return gr_scalar(ctx, ONE)


def gr_scalar(ctx: AlgebraContext, c) -> GrElement:
    c = Fraction(c)
    if not c:
        return gr_zero(ctx)
    z = ctx._zero_exp
    return GrElement(ctx, {(z, z, 0): c})


def gr_gen(ctx: AlgebraContext, kind: str, i: int) -> GrElement:
    ctx.check_index(i)
    z = ctx._zero_exp
    if kind == "x":
        alpha = tuple(1 if j == i - 1 else 0 for j in range(ctx.n))
        return GrElement(ctx, {(alpha, z, 0): ONE})
    if kind == "y":
        beta = tuple(1 if j == i - 1 else 0 for j in range(ctx.n))
        return GrElement(ctx, {(z, beta, 0): ONE})
    if kind == "e":
        return GrElement(ctx, {(z, z, 1 << (i - 1)): ONE})
    raise ValueError(f"unknown generator kind {kind!r}")


def gr_multiply(u: GrElement, v: GrElement) -> GrElement:
    """Supercommutative product; overlapping exterior masks annihilate."""
    if u.ctx.n != v.ctx.n:
        raise ContextMismatchError("gr elements from different contexts")
    acc: dict = {}
    for (a1, b1, g1), c1 in u._terms.items():
        for (a2, b2, g2), c2 in v._terms.items():
            if g1 & g2:
                continue
            sign, g = clifford_merge(g1, g2)
            alpha = tuple(x + y for x, y in zip(a1, a2))
            beta = tuple(x + y for x, y in zip(b1, b2))
            key = (alpha, beta, g)
            c = c1 * c2 if sign > 0 else -c1 * c2
            s = acc.get(key, ZERO) + c
            if s:
                acc[key] = s
            else:
                del acc[key]
    return GrElement(u.ctx, acc)


def leading_part(u: WCElement) -> GrElement:
    """Image of a nonzero filtered element at its top total degree."""
    if u.is_zero():
        raise DomainError("the zero element has no leading part")
    top = u.degree()
    terms = {
        k: c
        for k, c in u._terms.items()
        if sum(k[0]) + sum(k[1]) + k[2].bit_count() == top
    }
    return GrElement(u.ctx, terms)


def gr_L(ctx: AlgebraContext, i: int, j: int) -> GrElement:
    """Angular momentum symbol x_i y_j - x_j y_i in the graded algebra."""
    if i == j:
        raise DomainError("gr_L requires i != j")
    ctx.check_index(i)
    ctx.check_index(j)
    return gr_multiply(gr_gen(ctx, "x", i), gr_gen(ctx, "y", j)) - gr_multiply(
        gr_gen(ctx, "x", j), gr_gen(ctx, "y", i)
    )


def gr_O(ctx: AlgebraContext, i: int, j: int) -> GrElement:
    """gr_L(i, j) plus half the exterior pair e_i e_j."""
    if i == j:
        raise DomainError("gr_O requires i != j")
    pair = gr_multiply(gr_gen(ctx, "e", i), gr_gen(ctx, "e", j)).scale(HALF)
    return gr_L(ctx, i, j) + pair


def gr_text(u: GrElement) -> str:
    """Canonical text form, marked with a gr: prefix."""
    if not u._terms:
        return "gr: 0"
    chunks = []
    for key in sorted(u._terms, key=monomial_sort_key):
        chunks.append(f"{u._terms[key]} * {monomial_text(key)}")
    return "gr: " + " + ".join(chunks)
