import random
from fractions import Fraction
from itertools import product

import pytest

from wcalg import (
    AlgebraContext,
    ContextMismatchError,
    DomainError,
    Parity,
    ParityError,
    beta_pairing,
    canonical_text,
    clifford_word,
    det_pairing,
    graded_commutator,
    kostant_pairing,
    quantize_c,
    quantize_w,
)
from wcalg.core import monomial_sort_key, weyl_symbol
from wcalg.reference import fast_word_product, kostant_bruteforce, single_swap_multiply


@pytest.fixture
def ctx2():
    return AlgebraContext(2)


@pytest.fixture
def ctx4():
    return AlgebraContext(4)


def test_weyl_relation(ctx2):
    # y1 * x1 = x1 y1 + 1
    got = ctx2.y(1) * ctx2.x(1)
    want = ctx2.x(1) * ctx2.y(1) + ctx2.one()
    assert got == want


def test_clifford_square_and_anticommute(ctx2):
    assert ctx2.e(1) * ctx2.e(1) == ctx2.one()
    assert ctx2.e(2) * ctx2.e(1) == -(ctx2.e(1) * ctx2.e(2))


def test_weyl_clifford_factors_commute(ctx2):
    assert ctx2.e(1) * ctx2.x(2) == ctx2.x(2) * ctx2.e(1)
    assert ctx2.e(2) * ctx2.y(2) == ctx2.y(2) * ctx2.e(2)


def test_context_mismatch():
    a = AlgebraContext(2)
    b = AlgebraContext(3)
    with pytest.raises(ContextMismatchError):
        a.x(1) * b.x(1)


def test_graded_commutator_basics(ctx2):
    assert graded_commutator(ctx2.y(1), ctx2.x(1)) == ctx2.one()
    # distinct odd generators anticommute to zero
    assert graded_commutator(ctx2.e(1), ctx2.e(2)).is_zero()
    with pytest.raises(ParityError):
        graded_commutator(ctx2.e(1) + ctx2.one(), ctx2.x(1))


def test_commutator_of_dirac_with_x_gives_e(ctx4):
    dirac = sum((ctx4.y(j) * ctx4.e(j) for j in range(1, 5)), ctx4.zero())
    for i in range(1, 5):
        assert graded_commutator(dirac, ctx4.x(i)) == ctx4.e(i)


def test_parity(ctx2):
    assert ctx2.one().parity() is Parity.EVEN
    assert ctx2.e(1).parity() is Parity.ODD
    assert (ctx2.e(1) * ctx2.e(2)).parity() is Parity.EVEN
    assert (ctx2.e(1) + ctx2.one()).parity() is Parity.INHOMOGENEOUS


def random_word(rng, n, max_len=6):
    length = rng.randint(0, max_len)
    return tuple(
        (rng.choice("xye"), rng.randint(1, n)) for _ in range(length)
    )


def test_ordering_oracle_random_words():
    rng = random.Random(20240917)
    for _ in range(300):
        n = rng.randint(1, 4)
        ctx = AlgebraContext(n)
        w = random_word(rng, n)
        assert fast_word_product(ctx, w) == single_swap_multiply(ctx, w), w


def test_associativity_random_monomials():
    rng = random.Random(77)
    for _ in range(120):
        n = rng.randint(1, 4)
        ctx = AlgebraContext(n)
        u, v, w = (fast_word_product(ctx, random_word(rng, n, 4)) for _ in range(3))
        assert (u * v) * w == u * (v * w)


# --- pairings ---------------------------------------------------------------


def test_kostant_closed_form_examples(ctx2):
    x1y2 = ctx2.x(1) * ctx2.y(2)
    x2y1 = ctx2.x(2) * ctx2.y(1)
    assert kostant_pairing(x1y2, x2y1) == -1
    assert kostant_pairing(ctx2.x(1) ** 2, ctx2.y(1) ** 2) == 2
    assert kostant_pairing(ctx2.x(1), ctx2.x(1)) == 0


def test_kostant_rejects_clifford(ctx2):
    with pytest.raises(DomainError):
        kostant_pairing(ctx2.e(1), ctx2.e(1))


def test_kostant_bruteforce_examples():
    assert kostant_bruteforce((("x", 1), ("x", 1)), (("y", 1), ("y", 1))) == 2
    assert kostant_bruteforce((("y", 1),), (("x", 1),)) == 1
    assert kostant_bruteforce((("x", 1),), (("y", 2),)) == 0
    assert kostant_bruteforce((("x", 1),), (("x", 1), ("x", 1))) == 0


def weyl_words(n, length):
    letters = [(k, i) for k in "xy" for i in range(1, n + 1)]
    return product(letters, repeat=length)


def test_kostant_oracle_equivalence_small():
    # closed form through the quantization pull-back vs the literal permanent
    ctx = AlgebraContext(2)
    for p in range(0, 3):
        for wu in weyl_words(2, p):
            qu = quantize_w(ctx, wu)
            for wv in weyl_words(2, p):
                qv = quantize_w(ctx, wv)
                assert kostant_pairing(qu, qv) == kostant_bruteforce(wu, wv), (wu, wv)


def test_kostant_orthogonality_of_symbols():
    # the symbol-level monomial basis is orthogonal: x^a y^b pairs only
    # with x^b y^a
    ctx = AlgebraContext(2)
    monos = []
    for a1, a2, b1, b2 in product(range(3), repeat=4):
        if a1 + a2 + b1 + b2 <= 3:
            monos.append(((a1, a2), (b1, b2)))
    for (a, b) in monos:
        word = (
            [("x", 1)] * a[0] + [("x", 2)] * a[1] + [("y", 1)] * b[0] + [("y", 2)] * b[1]
        )
        for (m, nu) in monos:
            wv = (
                [("x", 1)] * m[0] + [("x", 2)] * m[1] + [("y", 1)] * nu[0] + [("y", 2)] * nu[1]
            )
            val = kostant_bruteforce(tuple(word), tuple(wv))
            if (a, b) == (nu, m):
                assert val != 0
            else:
                assert val == 0


def test_weyl_symbol_roundtrip(ctx2):
    rng = random.Random(5)
    for _ in range(40):
        w = tuple((rng.choice("xy"), rng.randint(1, 2)) for _ in range(rng.randint(0, 5)))
        el = fast_word_product(ctx2, w)
        sym = weyl_symbol(el)
        # re-quantize and compare
        back = ctx2.zero()
        for (alpha, beta), c in sym.items():
            word = []
            for i in range(2):
                word += [("x", i + 1)] * alpha[i] + [("y", i + 1)] * beta[i]
            back = back + quantize_w(ctx2, word).scale(c)
        assert back == el


def test_det_pairing(ctx2):
    e1e2 = ctx2.e(1) * ctx2.e(2)
    assert det_pairing(e1e2, e1e2) == 1
    assert det_pairing(ctx2.e(1), ctx2.e(2)) == 0
    assert det_pairing(e1e2, -e1e2) == -1
    with pytest.raises(DomainError):
        det_pairing(ctx2.x(1), ctx2.x(1))


def test_beta_pairing(ctx2):
    u = ctx2.x(1) * ctx2.y(2) * ctx2.e(1)
    v = ctx2.x(2) * ctx2.y(1) * ctx2.e(1)
    assert beta_pairing(u, v) == -1
    assert beta_pairing(ctx2.e(1), ctx2.e(1)) == 1
    assert beta_pairing(ctx2.x(1), ctx2.e(1)) == 0


def test_beta_gram_full_rank_degree_le_3():
    # nondegeneracy on the filtration piece of total degree <= 3 for n = 2
    from wcalg.linalg import rank_fraction_matrix

    ctx = AlgebraContext(2)
    monos = []
    for a1, a2, b1, b2 in product(range(4), repeat=4):
        for g in range(4):
            deg = a1 + a2 + b1 + b2 + bin(g).count("1")
            if deg <= 3:
                gamma = [i + 1 for i in range(2) if g >> i & 1]
                monos.append(ctx.monomial((a1, a2), (b1, b2), gamma))
    gram = [[beta_pairing(u, v) for v in monos] for u in monos]
    assert rank_fraction_matrix(gram) == len(monos) == 70


# --- quantization maps ------------------------------------------------------


def test_quantize_w_examples(ctx2):
    got = quantize_w(ctx2, (("y", 1), ("x", 1)))
    want = ctx2.x(1) * ctx2.y(1) + ctx2.scalar(Fraction(1, 2))
    assert got == want
    assert quantize_w(ctx2, (("x", 1), ("x", 1))) == ctx2.x(1) ** 2
    assert quantize_w(ctx2, (("x", 1), ("y", 2))) == ctx2.x(1) * ctx2.y(2)


def test_quantize_w_matches_full_symmetrization():
    from itertools import permutations

    rng = random.Random(11)
    ctx = AlgebraContext(3)
    for _ in range(25):
        w = tuple((rng.choice("xy"), rng.randint(1, 3)) for _ in range(rng.randint(1, 4)))
        m = len(w)
        full = ctx.zero()
        for perm in permutations(range(m)):
            full = full + fast_word_product(ctx, tuple(w[p] for p in perm))
        full = full.scale(Fraction(1, __import__("math").factorial(m)))
        assert quantize_w(ctx, w) == full, w


def test_quantize_c_examples(ctx2):
    assert quantize_c(ctx2, (1, 2)) == ctx2.e(1) * ctx2.e(2)
    assert quantize_c(ctx2, (1, 1)).is_zero()
    assert quantize_c(ctx2, (2, 1)) == -(ctx2.e(1) * ctx2.e(2))


def test_clifford_word(ctx4):
    assert clifford_word(ctx4, (1, 2, 3)) == ctx4.e(1) * ctx4.e(2) * ctx4.e(3)
    assert clifford_word(ctx4, (2, 1)) == -(ctx4.e(1) * ctx4.e(2))
    # repeated indices reduce instead of erroring
    assert clifford_word(ctx4, (1, 1)) == ctx4.one()
    # e1 e2 * e1 e2 e3 e4 = -e3 e4
    lhs = clifford_word(ctx4, (1, 2)) * clifford_word(ctx4, (1, 2, 3, 4))
    assert lhs == -(ctx4.e(3) * ctx4.e(4))


def clifford_sequences(n, k):
    from itertools import permutations, combinations

    for combo in combinations(range(1, n + 1), k):
        yield combo


def test_clifford_identities_all_small():
    # the three product identities for distinct ascending A, |A| <= 5, n <= 5,
    # verified by brute multiplication
    n = 5
    ctx = AlgebraContext(n)
    from itertools import combinations

    for k in range(2, 6):
        for A in combinations(range(1, n + 1), k):
            eA = clifford_word(ctx, A)
            sq = (-1) ** (k * (k - 1) // 2)
            for p in range(k):
                for q in range(p + 1, k):
                    rest = tuple(A[r] for r in range(k) if r not in (p, q))
                    sgn = (-1) ** (p + q + 2)  # (-1)^{(p+1)+(q+1)} for 1-based slots
                    # e_{a_q} e_{a_p} e_{A \ {a_p, a_q}} = (-1)^{p+q} e_A
                    lhs = clifford_word(ctx, (A[q], A[p]) + rest)
                    assert lhs == eA.scale(sgn)
                    # e_{A \ {a_p, a_q}} e_A = (-1)^{k(k-1)/2} (-1)^{p+q} e_{a_p} e_{a_q}
                    lhs = clifford_word(ctx, rest) * eA
                    assert lhs == clifford_word(ctx, (A[p], A[q])).scale(sq * sgn)
                    # e_{a_p} e_{a_q} e_A = (-1)^{p+q} e_{A \ {a_p, a_q}}
                    lhs = clifford_word(ctx, (A[p], A[q])) * eA
                    assert lhs == clifford_word(ctx, rest).scale(sgn)


# --- canonical text ---------------------------------------------------------


def test_canonical_text(ctx2):
    el = ctx2.x(1) * ctx2.y(1) + ctx2.scalar(Fraction(-1, 2)) + ctx2.e(1) * ctx2.e(2)
    assert canonical_text(el) == "-1/2 * 1 + 1 * e1 e2 + 1 * x1 y1"
    assert canonical_text(ctx2.zero()) == "0"


def test_sort_key_graded_lex():
    # degree first, then lexicographic on (alpha, beta, gamma)
    k1 = ((0, 0), (0, 0), 0)
    k2 = ((0, 0), (1, 0), 0)
    k3 = ((1, 0), (0, 0), 0)
    k4 = ((1, 0), (1, 0), 0)
    assert (
        monomial_sort_key(k1)
        < monomial_sort_key(k2)
        < monomial_sort_key(k3)
        < monomial_sort_key(k4)
    )
