"""Slow reference implementations kept as independent test oracles.

Nothing here is used by the production code paths; the verification suites
pit these against the fast routines.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import AlgebraContext, WCElement, ZERO, ONE

# A letter is ('x', i), ('y', i) or ('e', i).

_KIND_ORDER = {"x": 0, "y": 1, "e": 2}


def _letter_key(letter):
    kind, i = letter
    return (_KIND_ORDER[kind], i)


def single_swap_multiply(ctx: AlgebraContext, word: Sequence[tuple]) -> WCElement:
    """Expand a generator word by applying the defining relations one
    adjacent swap at a time (bubble sort into x < y < e, indices ascending).

    The swap rules are exactly the commutation relations:
    y_i x_j = x_j y_i + delta_ij, e_i e_j = -e_j e_i (i != j), e_i e_i = 1,
    and x/y letters commute with e letters.
    """
    for kind, i in word:
        ctx.check_index(i)
        if kind not in _KIND_ORDER:
            raise ValueError(f"unknown letter kind {kind!r}")
    pending = [(ONE, tuple(word))]
    done: dict = {}
    while pending:
        coeff, w = pending.pop()
        pos = _first_disorder(w)
        if pos is None:
            key = _sorted_word_key(ctx, w)
            s = done.get(key, ZERO) + coeff
            if s:
                done[key] = s
            else:
                done.pop(key, None)
            continue
        a, b = w[pos], w[pos + 1]
        swapped = w[:pos] + (b, a) + w[pos + 2 :]
        ka, ia = a
        kb, ib = b
        if ka == "e" and kb == "e":
            if ia == ib:
                pending.append((coeff, w[:pos] + w[pos + 2 :]))  # e_i e_i = 1
            else:
                pending.append((-coeff, swapped))
        elif ka == "y" and kb == "x":
            pending.append((coeff, swapped))
            if ia == ib:
                pending.append((coeff, w[:pos] + w[pos + 2 :]))
        else:
            # commuting letters (xx, yy reorder; e past x/y; x past y never disordered)
            pending.append((coeff, swapped))
    out = ctx.zero()
    terms = {}
    for key, c in done.items():
        terms[key] = c
    return WCElement(ctx, terms)


def _first_disorder(w):
    for pos in range(len(w) - 1):
        ka, ia = w[pos]
        kb, ib = w[pos + 1]
        if (_KIND_ORDER[ka], 0) > (_KIND_ORDER[kb], 0) or (
            ka == kb and ia > ib
        ) or (ka == "e" and kb == "e" and ia == ib):
            return pos
    return None


def _sorted_word_key(ctx: AlgebraContext, w):
    alpha = [0] * ctx.n
    beta = [0] * ctx.n
    mask = 0
    for kind, i in w:
        if kind == "x":
            alpha[i - 1] += 1
        elif kind == "y":
            beta[i - 1] += 1
        else:
            mask |= 1 << (i - 1)
    return (tuple(alpha), tuple(beta), mask)


def fast_word_product(ctx: AlgebraContext, word: Sequence[tuple]) -> WCElement:
    """The same word expanded through the production multiplication."""
    out = ctx.one()
    gens = {"x": ctx.x, "y": ctx.y, "e": ctx.e}
    for kind, i in word:
        out = out * gens[kind](i)
    return out


def _omega(u, v) -> int:
    """Symplectic pairing on the Weyl generators: omega(y_i, x_j) = delta_ij."""
    ku, iu = u
    kv, iv = v
    if ku == "y" and kv == "x":
        return 1 if iu == iv else 0
    if ku == "x" and kv == "y":
        return -1 if iu == iv else 0
    return 0


def permanent(matrix) -> Fraction:
    """Permanent by Ryser's inclusion-exclusion formula."""
    p = len(matrix)
    if p == 0:
        return ONE
    total = ZERO
    for subset in range(1, 1 << p):
        bits = subset.bit_count()
        prod = ONE
        for r in range(p):
            row = matrix[r]
            s = ZERO
            m = subset
            c = 0
            while m:
                if m & 1:
                    s += row[c]
                m >>= 1
                c += 1
            prod *= s
            if not prod:
                break
        if prod:
            total += prod if (p - bits) % 2 == 0 else -prod
    return total


def kostant_bruteforce(word_u: Sequence[tuple], word_v: Sequence[tuple]) -> Fraction:
    """Literal permanent formula for the pairing of two raw factor words
    over the Weyl generators; words of different length pair to zero."""
    if len(word_u) != len(word_v):
        return ZERO
    matrix = [[Fraction(_omega(u, v)) for v in word_v] for u in word_u]
    return permanent(matrix)
