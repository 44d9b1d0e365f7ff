"""Chord diagrams for the angular momentum algebra.

A diagram is a weakly lex-sorted sequence of directed chords (i, j) on the
n-gon; the associated operator is the ordered product of the angular momentum
operators L_ij = x_i y_j - x_j y_i.  Non-crossing diagrams with forward
chords index a linear basis, and `uncross_to_basis` rewrites any chord word
onto it using the quadratic crossing relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from .core import ONE, ZERO, AlgebraContext, WCElement, multiply
from .errors import DomainError, ParseError, RewriteError

Chord = Tuple[int, int]


class AmaMonomialKey(NamedTuple):
    """Multidegree (alpha, beta) of the monomial x^alpha y^beta attached to
    a diagram: alpha counts initial vertices, beta terminal vertices."""

    alpha: tuple
    beta: tuple


def chord_is_forward(c: Chord) -> bool:
    return c[0] < c[1]


def chord_reverse(c: Chord) -> Chord:
    return (c[1], c[0])


def chords_cross(c1: Chord, c2: Chord) -> bool:
    """True when the chords interleave on the circle: a < c < b < d after
    forward normalization (this is orientation independent)."""
    a, b = sorted(c1)
    c, d = sorted(c2)
    return a < c < b < d or c < a < d < b


def validate_chord(n: int, c: Chord) -> None:
    i, j = c
    if i == j:
        raise DomainError(f"chord with equal endpoints {c}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"chord {c} outside 1..{n}")


@dataclass(frozen=True)
class Diagram:
    """Weakly sorted chord sequence; compares lexicographically."""

    n: int
    chords: Tuple[Chord, ...]

    def __post_init__(self):
        for c in self.chords:
            validate_chord(self.n, c)
        if any(self.chords[s] > self.chords[s + 1] for s in range(len(self.chords) - 1)):
            raise DomainError("diagram chords must be weakly lex-sorted")

    @staticmethod
    def from_chords(n: int, chords: Iterable[Chord]) -> "Diagram":
        return Diagram(n, tuple(sorted(tuple(c) for c in chords)))

    def __len__(self):
        return len(self.chords)

    def __lt__(self, other: "Diagram"):
        return (len(self.chords), self.chords) < (len(other.chords), other.chords)

    def initial_vertices(self) -> Tuple[int, ...]:
        return tuple(c[0] for c in self.chords)

    def terminal_vertices(self) -> Tuple[int, ...]:
        return tuple(c[1] for c in self.chords)

    def monomial_key(self) -> AmaMonomialKey:
        alpha = [0] * self.n
        beta = [0] * self.n
        for i, j in self.chords:
            alpha[i - 1] += 1
            beta[j - 1] += 1
        return AmaMonomialKey(tuple(alpha), tuple(beta))

    def text(self) -> str:
        body = "".join(f"({i},{j})" for i, j in self.chords)
        return f"D[n={self.n}]: {body}"

    def __str__(self):
        return self.text()


def parse_diagram(text: str) -> Diagram:
    """Parse the text form `D[n=6]: (1,3)(1,4)(2,3)(3,5)`."""
    import re

    m = re.fullmatch(r"\s*D\[n=(\d+)\]:\s*((?:\(\d+,\d+\))*)\s*", text)
    if not m:
        raise ParseError("malformed diagram text", 0)
    n = int(m.group(1))
    chords = tuple(
        (int(a), int(b)) for a, b in re.findall(r"\((\d+),(\d+)\)", m.group(2))
    )
    return Diagram(n, chords)


def is_noncrossing(d: Diagram) -> bool:
    """All chords forward and no pair in the crossing pattern
    i_s < i_t < j_s with j_t > j_s."""
    cs = d.chords
    if any(not chord_is_forward(c) for c in cs):
        return False
    for s in range(len(cs)):
        i_s, j_s = cs[s]
        for t in range(len(cs)):
            i_t, j_t = cs[t]
            if i_s < i_t < j_s and j_t > j_s:
                return False
    return True


# --- operators ---------------------------------------------------------------


def L_of_chord(ctx: AlgebraContext, c: Chord) -> WCElement:
    i, j = c
    if i == j:
        raise DomainError("angular momentum operator needs i != j")
    ctx.check_index(i)
    ctx.check_index(j)
    return ctx.x(i) * ctx.y(j) - ctx.x(j) * ctx.y(i)


def L_of_word(ctx: AlgebraContext, chords: Sequence[Chord]) -> WCElement:
    out = ctx.one()
    for c in chords:
        out = multiply(out, L_of_chord(ctx, c))
    return out


def L_of_diagram(ctx: AlgebraContext, d: Diagram) -> WCElement:
    return L_of_word(ctx, d.chords)


def crossing_relation_element(ctx: AlgebraContext, i: int, j: int, k: int, l: int) -> WCElement:
    """L_ij L_kl + L_ik L_lj + L_il L_jk minus its lower-order side
    delta_ij L_kl + delta_ik L_lj + delta_il L_jk.

    Identically zero in the Weyl algebra for every index tuple (repeats
    allowed).  Each Kronecker delta pairs the leading slot i with one of
    j, k, l while the surviving L carries the complementary pair; pairing
    the deltas the other way round is not an identity (e.g. (1,2,2,3)
    would give -L_13 instead of 0)."""

    def lop(a, b):
        return ctx.zero() if a == b else L_of_chord(ctx, (a, b))

    el = lop(i, j) * lop(k, l) + lop(i, k) * lop(l, j) + lop(i, l) * lop(j, k)
    if i == j:
        el = el - lop(k, l)
    if i == k:
        el = el - lop(l, j)
    if i == l:
        el = el - lop(j, k)
    return el


# --- structure constants -----------------------------------------------------


def l_commutator_terms(c1: Chord, c2: Chord) -> List[Tuple[int, Chord]]:
    """[L_ab, L_cd] as a signed combination of single angular momentum
    operators: delta_bc L_ad - delta_ac L_bd - delta_bd L_ac + delta_ad L_bc."""
    a, b = c1
    c, d = c2
    out = []
    if b == c and a != d:
        out.append((1, (a, d)))
    if a == c and b != d:
        out.append((-1, (b, d)))
    if b == d and a != c:
        out.append((-1, (a, c)))
    if a == d and b != c:
        out.append((1, (b, c)))
    return out


@dataclass(frozen=True)
class UncrossResult:
    """Expansion onto the non-crossing basis.  The rewriter always fully
    reduces, so `remainder` is the zero element; it is kept in the result so
    callers can assert the soundness identity
    sum(coeff * L_D') + remainder == L_word."""

    terms: Dict[Diagram, Fraction]
    remainder: WCElement


def _crossing_positions(word: Tuple[Chord, ...]):
    for s in range(len(word)):
        for t in range(s + 1, len(word)):
            if chords_cross(word[s], word[t]):
                return s, t
    return None


def _inversions(word: Tuple[Chord, ...]) -> int:
    return sum(
        1
        for s in range(len(word))
        for t in range(s + 1, len(word))
        if word[s] > word[t]
    )


def uncross_to_basis(ctx: AlgebraContext, word: Sequence[Chord], max_steps: int = 2_000_000) -> UncrossResult:
    """Rewrite the ordered product of chord operators onto the non-crossing
    diagram basis.

    Crossing pairs are resolved through the exact quadratic relation
    L_ik L_jl = L_ij L_kl + L_il L_jk (i < j < k < l); commutators generated
    while transposing factors recurse into strictly shorter words, so the
    procedure terminates and the output re-multiplies to the input exactly.
    """
    for c in word:
        validate_chord(ctx.n, c)
    result: Dict[Diagram, Fraction] = {}
    stack: List[Tuple[Fraction, Tuple[Chord, ...]]] = [(ONE, tuple(word))]
    steps = 0
    while stack:
        steps += 1
        if steps > max_steps:
            raise RewriteError("uncrossing step guard exceeded")
        coeff, w = stack.pop()
        # orientation normalization first: all chords forward
        flipped = None
        for pos, c in enumerate(w):
            if not chord_is_forward(c):
                flipped = pos
                break
        if flipped is not None:
            w = w[:flipped] + (chord_reverse(w[flipped]),) + w[flipped + 1 :]
            stack.append((-coeff, w))
            continue
        pair = _crossing_positions(w)
        if pair is not None:
            s, t = pair
            # transpose w[t] leftwards to sit at s+1, emitting commutator words
            for r in range(t - 1, s, -1):
                mid = w[r]
                for sgn, chord in l_commutator_terms(mid, w[t]):
                    shorter = w[:r] + (chord,) + w[r + 1 : t] + w[t + 1 :]
                    stack.append((coeff * sgn, shorter))
            adjacent = w[: s + 1] + (w[t],) + w[s + 1 : t] + w[t + 1 :]
            cs, ct = adjacent[s], adjacent[s + 1]
            if cs > ct:
                # L_v L_u = L_u L_v + [L_v, L_u]
                for sgn, chord in l_commutator_terms(cs, ct):
                    stack.append((coeff * sgn, adjacent[:s] + (chord,) + adjacent[s + 2 :]))
                cs, ct = ct, cs
            (i, k), (j, l) = cs, ct  # crossing pattern: i < j < k < l
            rest_pre, rest_post = adjacent[:s], adjacent[s + 2 :]
            stack.append((coeff, rest_pre + ((i, j), (k, l)) + rest_post))
            stack.append((coeff, rest_pre + ((i, l), (j, k)) + rest_post))
            continue
        # crossing-free: bubble toward sortedness
        inv = None
        for pos in range(len(w) - 1):
            if w[pos] > w[pos + 1]:
                inv = pos
                break
        if inv is not None:
            swapped = w[:inv] + (w[inv + 1], w[inv]) + w[inv + 2 :]
            stack.append((coeff, swapped))
            for sgn, chord in l_commutator_terms(w[inv], w[inv + 1]):
                stack.append((coeff * sgn, w[:inv] + (chord,) + w[inv + 2 :]))
            continue
        d = Diagram(ctx.n, w)
        s = result.get(d, ZERO) + coeff
        if s:
            result[d] = s
        else:
            result.pop(d, None)
    return UncrossResult(result, ctx.zero())


def remultiply(ctx: AlgebraContext, res: UncrossResult) -> WCElement:
    out = ctx.zero()
    for d, c in res.terms.items():
        out = out + L_of_diagram(ctx, d).scale(c)
    return out + res.remainder


# --- enumeration and basis checks ---------------------------------------------


def forward_chords(n: int) -> List[Chord]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def enumerate_noncrossing(n: int, p: int) -> List[Diagram]:
    """All non-crossing diagrams of length p (chords may repeat)."""
    out = []
    for combo in combinations_with_replacement(forward_chords(n), p):
        d = Diagram(n, combo)
        if is_noncrossing(d):
            out.append(d)
    return out


def check_injectivity(n: int, p: int) -> bool:
    """The monomial key is injective on non-crossing diagrams of length p."""
    seen = set()
    for d in enumerate_noncrossing(n, p):
        key = d.monomial_key()
        if key in seen:
            return False
        seen.add(key)
    return True


def reversal_expansion(d: Diagram) -> Dict[Diagram, int]:
    """Top-degree expansion of L_D by distributing each factor
    L_c = m_c - m_{reversed c}: diagram obtained by flipping the chords in S
    carries sign (-1)^|S|."""
    out: Dict[Diagram, int] = {}
    p = len(d.chords)
    for mask in range(1 << p):
        chords = tuple(
            chord_reverse(c) if mask >> s & 1 else c for s, c in enumerate(d.chords)
        )
        flipped = Diagram.from_chords(d.n, chords)
        sign = -1 if mask.bit_count() & 1 else 1
        out[flipped] = out.get(flipped, 0) + sign
    return {k: v for k, v in out.items() if v}


def check_triangularity(ctx: AlgebraContext, d: Diagram) -> bool:
    """The top-degree part of L_D is m_D plus monomials of strictly larger
    diagrams only, and agrees with the combinatorial reversal expansion."""
    from .graded import GrElement, leading_part

    if not is_noncrossing(d):
        raise DomainError("triangularity is stated for non-crossing diagrams")
    expansion = reversal_expansion(d)
    if expansion.get(d) != 1:
        return False
    if any(not d < dd for dd in expansion if dd != d):
        return False
    # algebraic confirmation in the graded algebra
    lead = leading_part(L_of_diagram(ctx, d))
    acc: Dict[tuple, Fraction] = {}
    for dd, c in expansion.items():
        key = dd.monomial_key()
        acc[key] = acc.get(key, ZERO) + c
    expected = {
        (alpha, beta, 0): c for (alpha, beta), c in acc.items() if c
    }
    return GrElement(ctx, expected) == lead
