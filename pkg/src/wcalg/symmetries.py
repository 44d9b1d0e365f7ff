"""The total angular momentum algebra: the centraliser of the
orthosymplectic pair generated by the Dirac operator and its dual inside
the Weyl-Clifford algebra.

Elements are produced through the extremal-projector action
ad_p(a) = a - 1/2 [dirac, [coord, a]] (graded commutators), whose image on
Clifford words yields the k-index symmetries.  The module also carries the
symmetrised quartic relations among 4-index symmetries, the degree-2/3
pairing-rank certificates, and the graded kernel probe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .core import (
    HALF,
    ONE,
    ZERO,
    AlgebraContext,
    WCElement,
    beta_pairing,
    clifford_word,
    graded_commutator,
    multiply,
)
from .diagrams import L_of_chord, forward_chords
from .errors import DomainError, ResourceLimitError
from .graded import GrElement, gr_O, gr_multiply, gr_one
from .linalg import RowBasis, rank_fraction_matrix


@dataclass(frozen=True)
class OspGenerators:
    """The odd pair generating the harmonic orthosymplectic superalgebra:
    dirac = sum_j y_j e_j and coord = sum_j x_j e_j."""

    dirac: WCElement
    coord: WCElement


@lru_cache(maxsize=None)
def osp_generators(ctx: AlgebraContext) -> OspGenerators:
    dirac = ctx.zero()
    coord = ctx.zero()
    for j in range(1, ctx.n + 1):
        dirac = dirac + ctx.y(j) * ctx.e(j)
        coord = coord + ctx.x(j) * ctx.e(j)
    return OspGenerators(dirac, coord)


def ad_p(ctx: AlgebraContext, a: WCElement) -> WCElement:
    """Extremal-projector action a - 1/2 ad_dirac(ad_coord(a)).

    This nested form fixes every centralising element and kills each e_i;
    the literal commutator with the projector element (which kills
    constants) is kept separately as `ad_p_literal`.
    """
    gens = osp_generators(ctx)
    inner = graded_commutator(gens.coord, a)
    outer = graded_commutator(gens.dirac, inner)
    return a - outer.scale(HALF)


def projector_element(ctx: AlgebraContext) -> WCElement:
    gens = osp_generators(ctx)
    return ctx.one() - multiply(gens.dirac, gens.coord).scale(HALF)


def ad_p_literal(ctx: AlgebraContext, a: WCElement) -> WCElement:
    """Graded commutator with the projector element itself; differs from
    `ad_p` exactly by the scalar part of `a` (commutators kill constants)."""
    return graded_commutator(projector_element(ctx), a)


def centraliser_check(ctx: AlgebraContext, u: WCElement) -> bool:
    """True iff u graded-commutes with both odd generators."""
    gens = osp_generators(ctx)
    return (
        graded_commutator(u, gens.dirac).is_zero()
        and graded_commutator(u, gens.coord).is_zero()
    )


# --- k-index symmetries -------------------------------------------------------


@lru_cache(maxsize=None)
def o2(ctx: AlgebraContext, i: int, j: int) -> WCElement:
    """2-index symmetry L_ij + 1/2 e_i e_j, antisymmetric, zero on i = j."""
    if i == j:
        return ctx.zero()
    return L_of_chord(ctx, (i, j)) + multiply(ctx.e(i), ctx.e(j)).scale(HALF)


def _validate_ascending(ctx: AlgebraContext, seq: Sequence[int]) -> None:
    if len(seq) < 2:
        raise DomainError("index sequence needs at least two entries")
    if any(seq[s] >= seq[s + 1] for s in range(len(seq) - 1)):
        raise DomainError(f"index sequence {tuple(seq)} must be strictly ascending")
    for i in seq:
        ctx.check_index(i)


@lru_cache(maxsize=None)
def o_symmetry(ctx: AlgebraContext, A: tuple) -> WCElement:
    """k-index symmetry -1/2 ad_p(e_A) for a strictly ascending sequence A."""
    _validate_ascending(ctx, A)
    return ad_p(ctx, clifford_word(ctx, A)).scale(Fraction(-1, 2))


def o_symmetry_closed(ctx: AlgebraContext, A: tuple) -> WCElement:
    """Closed form (k-1)/2 e_A - sum_{p<q} L_{a_p a_q} e_{a_p} e_{a_q} e_A;
    must agree with the projector construction term by term."""
    _validate_ascending(ctx, A)
    k = len(A)
    eA = clifford_word(ctx, A)
    out = eA.scale(Fraction(k - 1, 2))
    for p in range(k):
        for q in range(p + 1, k):
            cliff = multiply(clifford_word(ctx, (A[p], A[q])), eA)
            out = out - multiply(L_of_chord(ctx, (A[p], A[q])), cliff)
    return out


def o_of_word(ctx: AlgebraContext, seq: Sequence[int]) -> WCElement:
    """-1/2 ad_p(e_{a_1} ... e_{a_k}) for distinct indices in any order;
    antisymmetric in the entries."""
    if len(set(seq)) != len(seq):
        raise DomainError(f"indices must be distinct, got {tuple(seq)}")
    sgn_word = clifford_word(ctx, tuple(seq))
    return ad_p(ctx, sgn_word).scale(Fraction(-1, 2))


def o4_of_sequence(ctx: AlgebraContext, S: Sequence[int]) -> WCElement:
    """Quadratic extension of the 4-index symmetry to arbitrary 4-slot
    sequences:

        2 * (O_{s1 s2} O_{s3 s4} + O_{s1 s3} O_{s4 s2} + O_{s1 s4} O_{s2 s3})

    with O_ii = 0 and O_ji = -O_ij.  The factor 2 matches the projector
    normalization: on distinct slots this equals the 4-index symmetry
    -1/2 ad_p(e_A) exactly (the unscaled sum is only half of it, as direct
    expansion shows).  Slot permutations of the symmetrised relations may
    create repeats, for which this formula is the official extension
    (generally a lower-order element, not zero).
    """
    if len(S) != 4:
        raise DomainError("o4_of_sequence needs exactly 4 slots")
    a, b, c, d = S
    for i in S:
        ctx.check_index(i)
    quad = (
        multiply(o2(ctx, a, b), o2(ctx, c, d))
        + multiply(o2(ctx, a, c), o2(ctx, d, b))
        + multiply(o2(ctx, a, d), o2(ctx, b, c))
    )
    return quad.scale(2)


@dataclass(frozen=True)
class RecursionFit:
    """Outcome of fitting O_A = scalar * (signed pair sum)."""

    ok: bool
    scalar: Optional[Fraction]
    residual_terms: int


def higher_recursion_check(ctx: AlgebraContext, A: tuple) -> RecursionFit:
    """Fit the best rational scalar in
    O_A = scalar * sum_{p<q} (-1)^{p+q+1} O_{a_p a_q} O_{A minus {a_p, a_q}}
    (1-based slot signs) and report whether it is exact."""
    _validate_ascending(ctx, A)
    k = len(A)
    if k < 4:
        raise DomainError("the recursion is stated for k >= 4")
    target = o_symmetry(ctx, A)
    rhs = ctx.zero()
    for p in range(k):
        for q in range(p + 1, k):
            rest = tuple(A[r] for r in range(k) if r not in (p, q))
            term = multiply(o2(ctx, A[p], A[q]), o_symmetry(ctx, rest))
            # (-1)^{p+q+1} with 1-based slots = (-1)^{p+q+1} with 0-based
            sign = -1 if (p + q + 1) & 1 else 1
            rhs = rhs + term.scale(sign)
    if rhs.is_zero():
        return RecursionFit(target.is_zero(), None, len(target))
    key = next(iter(rhs._terms))
    num = target._terms.get(key, ZERO)
    scalar = num / rhs._terms[key]
    residual = target - rhs.scale(scalar)
    return RecursionFit(residual.is_zero(), scalar, len(residual))


def comm_2_3(ctx: AlgebraContext, i: int, j: int, p: int, q: int, r: int) -> WCElement:
    """Commutator of a 2-index with a 3-index symmetry."""
    if len({i, j}) != 2 or len({p, q, r}) != 3:
        raise DomainError("need index sets of sizes 2 and 3")
    return graded_commutator(o2(ctx, i, j), o_of_word(ctx, (p, q, r)))


@dataclass(frozen=True)
class CommCheck:
    element: WCElement
    intersection: int
    expected_zero: bool
    matches: bool
    scalar: Optional[Fraction]


def comm_2_3_check(ctx: AlgebraContext, i: int, j: int, p: int, q: int, r: int) -> CommCheck:
    """Verify the commutation rule: zero for even overlap of {i,j} with
    {p,q,r}; for odd overlap a single 3-index symmetry on the symmetric
    difference, up to sign."""
    el = comm_2_3(ctx, i, j, p, q, r)
    inter = len({i, j} & {p, q, r})
    if inter % 2 == 0:
        return CommCheck(el, inter, True, el.is_zero(), None)
    diff = tuple(sorted({i, j} ^ {p, q, r}))
    target = o_symmetry(ctx, diff)
    if el.is_zero() or target.is_zero():
        return CommCheck(el, inter, False, False, None)
    key = next(iter(target._terms))
    scalar = el._terms.get(key, ZERO) / target._terms[key]
    matches = bool(scalar) and (el - target.scale(scalar)).is_zero() and abs(scalar) == 1
    return CommCheck(el, inter, False, matches, scalar)


def bare_product_form_holds(ctx: AlgebraContext, i: int, j: int, q: int, r: int) -> bool:
    """Whether the unbracketed identity O_ij O_jqr = O_iqr holds verbatim
    (the bracketed commutator form is the one that does)."""
    lhs = multiply(o2(ctx, i, j), o_of_word(ctx, (j, q, r)))
    return lhs == o_of_word(ctx, (i, q, r))


# --- symmetrised quartic relations ---------------------------------------------

TABLEAU_MASKS: Tuple[int, ...] = tuple(range(16))


def tableau_apply(mask: int, A: Sequence[int], B: Sequence[int]) -> tuple:
    """Act by an element of the slot-swap group: bit s of `mask` swaps
    slot s of A with slot s of B."""
    Ap = tuple(B[s] if mask >> s & 1 else A[s] for s in range(4))
    Bp = tuple(A[s] if mask >> s & 1 else B[s] for s in range(4))
    return Ap, Bp


class TableauGroup:
    """The 16 simultaneous slot swaps between two 4-slot sequences."""

    masks = TABLEAU_MASKS
    apply = staticmethod(tableau_apply)

    def __len__(self):
        return 16

    def __iter__(self):
        return iter(TABLEAU_MASKS)


def _remove_two(seq: tuple, a: int, b: int) -> tuple:
    out = list(seq)
    out.remove(a)
    out.remove(b)
    return tuple(out)


def align_pair(A: Sequence[int], B: Sequence[int]) -> tuple:
    """Slot-align two distinct-entry sequences: shared values first (sorted)
    in matching slots, then each sequence's private values ascending.

    The slot-swap symmetrisation cancels term by term only when shared
    values occupy equal slots; for misaligned representatives the summed
    element is genuinely different and nonzero.
    """
    common = sorted(set(A) & set(B))
    privA = sorted(set(A) - set(B))
    privB = sorted(set(B) - set(A))
    return tuple(common + privA), tuple(common + privB)


def tableau_relation(ctx: AlgebraContext, A: Sequence[int], B: Sequence[int]) -> WCElement:
    """The symmetrised quartic relation element

        sum_sigma [ O4(A') O4(B') + sum_{{a,b} in A' cap B'} O_{A'-(a,b)} O_{B'-(a,b)} ]
        - 12 delta_{A,B}

    summed over the 16 slot swaps of the slot-aligned representatives of
    (A, B), with O4 the projector-normalized quadratic extension, the pair
    sum over unordered pairs of the set intersection, and the Kronecker
    delta comparing the aligned sequences (set equality of A and B).
    Vanishes identically.
    """
    A = tuple(A)
    B = tuple(B)
    if len(A) != 4 or len(B) != 4:
        raise DomainError("A and B must have 4 slots")
    if len(set(A)) != 4 or len(set(B)) != 4:
        raise DomainError("A and B must each have distinct entries")
    for s in (*A, *B):
        ctx.check_index(s)
    Aa, Ba = align_pair(A, B)
    total = ctx.zero()
    for mask in TABLEAU_MASKS:
        Ap, Bp = tableau_apply(mask, Aa, Ba)
        f = multiply(o4_of_sequence(ctx, Ap), o4_of_sequence(ctx, Bp))
        inter = sorted(set(Ap) & set(Bp))
        for a, b in combinations(inter, 2):
            f = f + multiply(
                o2(ctx, *_remove_two(Ap, a, b)), o2(ctx, *_remove_two(Bp, a, b))
            )
        total = total + f
    if Aa == Ba:
        total = total - ctx.scalar(12)
    return total


# --- rank certificates ----------------------------------------------------------


@dataclass(frozen=True)
class GramResult:
    size: int
    rank: int

    @property
    def full_rank(self) -> bool:
        return self.size == self.rank


def _retain_independent(elements: List[WCElement]) -> List[WCElement]:
    basis = RowBasis()
    retained = []
    for el in elements:
        if el.is_zero():
            continue
        if basis.add(el._terms):
            retained.append(el)
    return retained


def _gram_rank(retained: List[WCElement]) -> GramResult:
    gram = [[beta_pairing(u, v) for v in retained] for u in retained]
    return GramResult(len(retained), rank_fraction_matrix(gram))


def gram_rank_degree2(ctx: AlgebraContext, i: int, j: int, k: int, l: int) -> GramResult:
    """Pairing rank of the independent span of
    {O_ij O_kl, O_ik O_jl, O_il O_jk}; full rank certifies that no graded
    degree-2 combination degenerates."""
    products = [
        multiply(o2(ctx, i, j), o2(ctx, k, l)),
        multiply(o2(ctx, i, k), o2(ctx, j, l)),
        multiply(o2(ctx, i, l), o2(ctx, j, k)),
    ]
    return _gram_rank(_retain_independent(products))


@lru_cache(maxsize=1)
def _pair_matchings_6() -> tuple:
    def rec(items):
        if not items:
            yield ()
            return
        first = items[0]
        for t in range(1, len(items)):
            partner = items[t]
            rest = items[1:t] + items[t + 1 :]
            for m in rec(rest):
                yield ((first, partner),) + m

    return tuple(rec(tuple(range(6))))


def gram_rank_degree3(ctx: AlgebraContext, t: Sequence[int]) -> GramResult:
    """Pairing rank over the triple products indexed by the 15 perfect
    matchings of the six slots of `t`."""
    t = tuple(t)
    if len(t) != 6:
        raise DomainError("need a 6-tuple of indices")
    products = []
    for matching in _pair_matchings_6():
        el = ctx.one()
        for a, b in matching:
            el = multiply(el, o2(ctx, t[a], t[b]))
        products.append(el)
    return _gram_rank(_retain_independent(products))


def kernel_probe_degree(ctx: AlgebraContext, d: int) -> int:
    """Dimension of the space of degree-d multisets of 2-index symmetries
    whose top graded part vanishes, by exact rank of the expansion matrix."""
    chords = forward_chords(ctx.n)
    multisets = list(combinations_with_replacement(chords, d))
    projected = len(multisets) * (4 ** min(d, 10))
    if projected > ctx.cap:
        raise ResourceLimitError(
            f"kernel probe would expand about {projected} monomials (cap {ctx.cap})"
        )
    basis = RowBasis()
    rank = 0
    for ms in multisets:
        el = gr_one(ctx)
        for i, j in ms:
            el = gr_multiply(el, gr_O(ctx, i, j))
        if el.is_zero():
            continue
        if basis.add(el._terms):
            rank += 1
    return len(multisets) - rank
