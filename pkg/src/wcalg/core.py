"""Exact arithmetic in the Weyl-Clifford algebra.

The algebra is generated, for a fixed dimension n, by Weyl generators
x_1..x_n, y_1..y_n with [y_i, x_j] = delta_ij and Clifford generators
e_1..e_n with e_i e_j + e_j e_i = 2 delta_ij; the two families commute.
Every element is kept in normal-ordered canonical form: a finite rational
combination of monomials x^alpha y^beta e^gamma with the e-factors sorted
ascending.  Coefficients are exact `fractions.Fraction` values throughout;
there is no floating point anywhere in the package.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import ContextMismatchError, DomainError, IndexRangeError, ParityError

Rat = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class Parity(Enum):
    EVEN = 0
    ODD = 1
    INHOMOGENEOUS = 2


class WCMonomial(NamedTuple):
    """Normal-ordered monomial x^alpha y^beta e^gamma.

    `alpha` and `beta` are exponent tuples of length n; `gamma` is a bit
    mask whose bit (i-1) marks the presence of e_i.  Instances compare and
    hash exactly like the underlying plain tuples, so either form can be
    used as a dict key.
    """

    alpha: tuple
    beta: tuple
    gamma: int

    @property
    def degree(self) -> int:
        return sum(self.alpha) + sum(self.beta) + self.gamma.bit_count()

    @property
    def clifford_indices(self) -> tuple:
        return mask_to_indices(self.gamma)

    @property
    def parity(self) -> Parity:
        return Parity.ODD if self.gamma.bit_count() % 2 else Parity.EVEN


def mask_to_indices(mask: int) -> tuple:
    """1-based ascending indices present in a Clifford bit mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def clifford_merge(g1: int, g2: int) -> tuple:
    """Multiply basis Clifford monomials: e^{g1} e^{g2} = sign * e^{g1 XOR g2}.

    The sign counts the transpositions needed to merge the ascending factor
    lists; equal indices square to +1.
    """
    swaps = 0
    g = g2
    j = 0
    while g:
        if g & 1:
            swaps += (g1 >> (j + 1)).bit_count()
        g >>= 1
        j += 1
    return (-1 if swaps & 1 else 1), g1 ^ g2


@lru_cache(maxsize=None)
def _weyl_reorder_1d(b: int, a: int) -> tuple:
    """Options (k, weight) for the single-coordinate reordering
    y^b x^a = sum_k weight_k x^(a-k) y^(b-k), weight_k = k! C(a,k) C(b,k)."""
    return tuple(
        (k, math.factorial(k) * math.comb(a, k) * math.comb(b, k))
        for k in range(min(a, b) + 1)
    )


@lru_cache(maxsize=None)
def _weyl_reorder(b1: tuple, a2: tuple) -> tuple:
    """All ways to normal-order y^{b1} x^{a2}: tuples (a2', b1', weight)."""
    hot = [i for i in range(len(b1)) if b1[i] and a2[i]]
    if not hot:
        return ((a2, b1, 1),)
    per_coord = [_weyl_reorder_1d(b1[i], a2[i]) for i in hot]
    out = []
    for combo in _cartesian(*per_coord):
        a_new = list(a2)
        b_new = list(b1)
        w = 1
        for i, (k, wk) in zip(hot, combo):
            a_new[i] -= k
            b_new[i] -= k
            w *= wk
        out.append((tuple(a_new), tuple(b_new), w))
    return tuple(out)


class AlgebraContext:
    """Fixes the dimension n and the resource cap shared by all elements.

    Context objects are read-only; every operation on elements is a pure
    function, so values can be shared and evaluated concurrently.
    """

    __slots__ = ("n", "cap", "_zero_exp")

    def __init__(self, n: int, cap: int = 2_000_000):
        if n < 1:
            raise ValueError("dimension n must be >= 1")
        self.n = n
        self.cap = cap
        self._zero_exp = (0,) * n

    def __repr__(self):
        return f"AlgebraContext(n={self.n})"

    def __eq__(self, other):
        return isinstance(other, AlgebraContext) and self.n == other.n

    def __hash__(self):
        return hash(("AlgebraContext", self.n))

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexRangeError(f"index {i} outside 1..{self.n}")

    # --- element constructors -------------------------------------------

    def zero(self) -> "WCElement":
        return WCElement(self, {})

    def one(self) -> "WCElement":
        return self.scalar(ONE)

    def scalar(self, c) -> "WCElement":
        c = Fraction(c)
        if not c:
            return self.zero()
        return WCElement(self, {(self._zero_exp, self._zero_exp, 0): c})

    def x(self, i: int) -> "WCElement":
        self.check_index(i)
        alpha = tuple(1 if j == i - 1 else 0 for j in range(self.n))
        return WCElement(self, {(alpha, self._zero_exp, 0): ONE})

    def y(self, i: int) -> "WCElement":
        self.check_index(i)
        beta = tuple(1 if j == i - 1 else 0 for j in range(self.n))
        return WCElement(self, {(self._zero_exp, beta, 0): ONE})

    def e(self, i: int) -> "WCElement":
        self.check_index(i)
        return WCElement(self, {(self._zero_exp, self._zero_exp, 1 << (i - 1)): ONE})

    def monomial(self, alpha: Sequence[int], beta: Sequence[int],
                 gamma: Iterable[int] = (), coeff=ONE) -> "WCElement":
        alpha = tuple(alpha)
        beta = tuple(beta)
        if len(alpha) != self.n or len(beta) != self.n:
            raise ValueError("exponent tuples must have length n")
        if any(a < 0 for a in alpha) or any(b < 0 for b in beta):
            raise ValueError("exponents must be nonnegative")
        for i in gamma:
            self.check_index(i)
        mask = indices_to_mask(gamma)
        c = Fraction(coeff)
        if not c:
            return self.zero()
        return WCElement(self, {(alpha, beta, mask): c})


def _check_same_context(u: "WCElement", v: "WCElement") -> None:
    if u.ctx.n != v.ctx.n:
        raise ContextMismatchError(
            f"elements built under different contexts (n={u.ctx.n} vs n={v.ctx.n})")


class WCElement:
    """A finite rational combination of normal-ordered monomials.

    Immutable by convention: no method mutates `self` and the term mapping
    must not be modified by callers.
    """

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: AlgebraContext, terms: dict):
        self.ctx = ctx
        self._terms = terms

    # --- inspection ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def terms(self) -> Iterator[tuple]:
        """(WCMonomial, coefficient) pairs in canonical (grlex) order."""
        for key in sorted(self._terms, key=monomial_sort_key):
            yield WCMonomial(*key), self._terms[key]

    def coefficient(self, alpha, beta, gamma=()) -> Fraction:
        key = (tuple(alpha), tuple(beta), indices_to_mask(gamma))
        return self._terms.get(key, ZERO)

    def degree(self) -> int:
        """Top filtration degree |alpha|+|beta|+|gamma| (-1 for the zero element)."""
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

    def weyl_only(self) -> bool:
        return all(g == 0 for _, _, g in self._terms)

    def clifford_only(self) -> bool:
        zero = self.ctx._zero_exp
        return all(a == zero and b == zero for a, b, _ in self._terms)

    # --- ring operations --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, WCElement):
            return NotImplemented
        return self.ctx.n == other.ctx.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.ctx.n, frozenset(self._terms.items())))

    def __neg__(self):
        return WCElement(self.ctx, {k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, WCElement):
            return NotImplemented
        _check_same_context(self, other)
        terms = dict(self._terms)
        for k, c in other._terms.items():
            s = terms.get(k, ZERO) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return WCElement(self.ctx, terms)

    def __sub__(self, other):
        if not isinstance(other, WCElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "WCElement":
        c = Fraction(c)
        if not c:
            return self.ctx.zero()
        return WCElement(self.ctx, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, WCElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = self.ctx.one()
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __repr__(self):
        return f"<WCElement n={self.ctx.n}: {canonical_text(self)}>"


def monomial_sort_key(key: tuple) -> tuple:
    """Graded-lexicographic order on (total degree, alpha, beta, gamma)."""
    a, b, g = key
    return (sum(a) + sum(b) + g.bit_count(), a, b, mask_to_indices(g))


def multiply(u: WCElement, v: WCElement) -> WCElement:
    """Product in the Weyl-Clifford algebra, in canonical normal-ordered form."""
    _check_same_context(u, v)
    acc: dict = {}
    uterms = u._terms
    vterms = v._terms
    for (a1, b1, g1), c1 in uterms.items():
        for (a2, b2, g2), c2 in vterms.items():
            sign, g = clifford_merge(g1, g2)
            c = c1 * c2 if sign > 0 else -c1 * c2
            for a2p, b1p, w in _weyl_reorder(b1, a2):
                alpha = tuple(x + y for x, y in zip(a1, a2p))
                beta = tuple(x + y for x, y in zip(b1p, b2))
                key = (alpha, beta, g)
                s = acc.get(key, ZERO) + c * w
                if s:
                    acc[key] = s
                else:
                    del acc[key]
    return WCElement(u.ctx, acc)


def graded_commutator(u: WCElement, v: WCElement) -> WCElement:
    """u v - (-1)^{p(u) p(v)} v u for parity-homogeneous u, v."""
    pu = u.parity()
    pv = v.parity()
    if Parity.INHOMOGENEOUS in (pu, pv):
        raise ParityError("graded commutator requires parity-homogeneous inputs")
    uv = multiply(u, v)
    vu = multiply(v, u)
    if pu is Parity.ODD and pv is Parity.ODD:
        return uv + vu
    return uv - vu


# --- quantization maps ----------------------------------------------------


@lru_cache(maxsize=None)
def _symmetrize_1d(a: int, b: int) -> tuple:
    """Symmetrized product of a copies of x and b copies of y in one Weyl
    coordinate, as ((p, q, coeff), ...) for terms coeff * x^p y^q."""
    from itertools import combinations

    total = a + b
    acc: dict = {}
    # choose the positions of the x letters among a+b slots
    for xpos in combinations(range(total), a):
        xset = set(xpos)
        state = {(0, 0): ONE}
        for slot in range(total):
            nxt: dict = {}
            if slot in xset:  # multiply by x on the right: x^p y^q * x
                for (p, q), c in state.items():
                    nxt[(p + 1, q)] = nxt.get((p + 1, q), ZERO) + c
                    if q:
                        key = (p, q - 1)
                        s = nxt.get(key, ZERO) + c * q
                        nxt[key] = s
            else:  # multiply by y on the right
                for (p, q), c in state.items():
                    nxt[(p, q + 1)] = nxt.get((p, q + 1), ZERO) + c
            state = nxt
        for k, c in state.items():
            acc[k] = acc.get(k, ZERO) + c
    scale = Fraction(1, math.comb(total, a))
    return tuple((p, q, c * scale) for (p, q), c in acc.items() if c)


def quantize_w(ctx: AlgebraContext, word: Sequence[tuple]) -> WCElement:
    """Symmetrized (Weyl) quantization of a word of generators.

    `word` is a sequence of letters ('x', i) or ('y', i).  The result is the
    average over all orderings of the product, computed coordinate by
    coordinate (letters in distinct coordinates commute).
    """
    counts: dict = {}
    for kind, i in word:
        ctx.check_index(i)
        if kind not in ("x", "y"):
            raise ValueError(f"unknown Weyl letter kind {kind!r}")
        a, b = counts.get(i, (0, 0))
        counts[i] = (a + 1, b) if kind == "x" else (a, b + 1)
    out = ctx.one()
    for i in sorted(counts):
        a, b = counts[i]
        part = ctx.zero()
        terms = {}
        for p, q, c in _symmetrize_1d(a, b):
            alpha = tuple(p if j == i - 1 else 0 for j in range(ctx.n))
            beta = tuple(q if j == i - 1 else 0 for j in range(ctx.n))
            terms[(alpha, beta, 0)] = c
        part = WCElement(ctx, terms)
        out = multiply(out, part)
    return out


def quantize_c(ctx: AlgebraContext, indices: Sequence[int]) -> WCElement:
    """Antisymmetrized Clifford quantization of e_{i_1} ^ ... ^ e_{i_m}."""
    from itertools import permutations

    m = len(indices)
    for i in indices:
        ctx.check_index(i)
    if m == 0:
        return ctx.one()
    acc: dict = {}
    scale = Fraction(1, math.factorial(m))
    for perm in permutations(range(m)):
        # permutation sign by inversion count
        inv = sum(1 for s in range(m) for t in range(s + 1, m) if perm[s] > perm[t])
        sign = -1 if inv & 1 else 1
        mask = 0
        for pos in perm:
            s, mask = clifford_merge(mask, 1 << (indices[pos] - 1))
            sign *= s
        c = acc.get(mask, ZERO) + sign * scale
        if c:
            acc[mask] = c
        else:
            acc.pop(mask, None)
    zero = ctx._zero_exp
    return WCElement(ctx, {(zero, zero, g): c for g, c in acc.items()})


def clifford_word(ctx: AlgebraContext, indices: Sequence[int]) -> WCElement:
    """The product e_{a_1} e_{a_2} ... e_{a_k} as a signed canonical monomial.

    Repeated indices are reduced via e_i^2 = 1 rather than rejected; slot
    permutations in the quartic relations rely on this.
    """
    sign = 1
    mask = 0
    for i in indices:
        ctx.check_index(i)
        s, mask = clifford_merge(mask, 1 << (i - 1))
        sign *= s
    zero = ctx._zero_exp
    return WCElement(ctx, {(zero, zero, mask): Fraction(sign)})


# --- pairings --------------------------------------------------------------


def _factorial_multi(t: tuple) -> int:
    out = 1
    for a in t:
        out *= math.factorial(a)
    return out


def kostant_symbol_value(alpha: tuple, beta: tuple, mu: tuple, nu: tuple) -> Fraction:
    """Closed form of the permanent pairing on symmetric-algebra monomials:
    nonzero only for (alpha, beta) = (nu, mu), where it equals
    (-1)^|alpha| alpha! beta!."""
    if alpha != nu or beta != mu:
        return ZERO
    val = Fraction(_factorial_multi(alpha) * _factorial_multi(beta))
    return -val if sum(alpha) & 1 else val


def weyl_symbol(u: WCElement) -> dict:
    """Inverse of the symmetrized quantization: the symmetric-algebra symbol
    of a Weyl-only element, as a dict (alpha, beta) -> coefficient."""
    if not u.weyl_only():
        raise DomainError("weyl_symbol is defined on Weyl-only elements")
    ctx = u.ctx
    rest = dict(u._terms)
    symbol: dict = {}
    while rest:
        key = max(rest, key=monomial_sort_key)
        alpha, beta, _ = key
        c = rest[key]
        symbol[(alpha, beta)] = symbol.get((alpha, beta), ZERO) + c
        # subtract c * Q_w(x^alpha y^beta); its top term is exactly x^alpha y^beta
        q = _quantized_monomial(ctx, alpha, beta)
        for k, v in q._terms.items():
            s = rest.get(k, ZERO) - c * v
            if s:
                rest[k] = s
            else:
                rest.pop(k, None)
    return {k: v for k, v in symbol.items() if v}


def _quantized_monomial(ctx: AlgebraContext, alpha: tuple, beta: tuple) -> WCElement:
    word = []
    for i in range(ctx.n):
        word.extend([("x", i + 1)] * alpha[i])
        word.extend([("y", i + 1)] * beta[i])
    return quantize_w(ctx, word)


def kostant_pairing(u: WCElement, v: WCElement) -> Fraction:
    """Permanent-based pairing of two Weyl-only elements.

    Both arguments are pulled back through the symmetrized quantization and
    paired with the closed form; on that route the pairing of Q_w images
    agrees with the literal permanent of the factor words.
    """
    _check_same_context(u, v)
    if not u.weyl_only() or not v.weyl_only():
        raise DomainError("kostant_pairing requires Weyl-only elements")
    su = weyl_symbol(u)
    sv = weyl_symbol(v)
    total = ZERO
    for (alpha, beta), cu in su.items():
        cv = sv.get((beta, alpha))
        if cv is None:
            continue
        val = Fraction(_factorial_multi(alpha) * _factorial_multi(beta))
        if sum(alpha) & 1:
            val = -val
        total += cu * cv * val
    return total


def det_pairing(u: WCElement, v: WCElement) -> Fraction:
    """Determinant pairing of Clifford-only elements; the canonical monomials
    e^gamma form an orthonormal basis."""
    _check_same_context(u, v)
    if not u.clifford_only() or not v.clifford_only():
        raise DomainError("det_pairing requires Clifford-only elements")
    total = ZERO
    for (a, b, g), cu in u._terms.items():
        cv = v._terms.get((a, b, g))
        if cv is not None:
            total += cu * cv
    return total


def beta_pairing(u: WCElement, v: WCElement) -> Fraction:
    """The pairing kappa (x) delta on the canonical monomial basis:
    x^alpha y^beta e^gamma pairs only with x^beta y^alpha e^gamma, with value
    (-1)^|alpha| alpha! beta!."""
    _check_same_context(u, v)
    total = ZERO
    vterms = v._terms
    for (alpha, beta, g), cu in u._terms.items():
        cv = vterms.get((beta, alpha, g))
        if cv is None:
            continue
        val = Fraction(_factorial_multi(alpha) * _factorial_multi(beta))
        if sum(alpha) & 1:
            val = -val
        total += cu * cv * val
    return total


# --- canonical text form ----------------------------------------------------


def monomial_text(key: tuple) -> str:
    alpha, beta, gamma = key
    parts = []
    for i, a in enumerate(alpha):
        if a == 1:
            parts.append(f"x{i + 1}")
        elif a > 1:
            parts.append(f"x{i + 1}^{a}")
    for i, b in enumerate(beta):
        if b == 1:
            parts.append(f"y{i + 1}")
        elif b > 1:
            parts.append(f"y{i + 1}^{b}")
    for i in mask_to_indices(gamma):
        parts.append(f"e{i}")
    return " ".join(parts) if parts else "1"


def canonical_text(u: WCElement) -> str:
    """Golden-file text form: terms in canonical order, `c * monomial` each."""
    if not u._terms:
        return "0"
    chunks = []
    for key in sorted(u._terms, key=monomial_sort_key):
        chunks.append(f"{u._terms[key]} * {monomial_text(key)}")
    return " + ".join(chunks)
