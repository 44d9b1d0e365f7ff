import random
from fractions import Fraction
from itertools import permutations

import pytest

from wcalg import AlgebraContext, DomainError
from wcalg.diagrams import L_of_chord
from wcalg.graded import (
    GrElement,
    gr_L,
    gr_O,
    gr_gen,
    gr_multiply,
    gr_one,
    gr_text,
    gr_zero,
    leading_part,
)


@pytest.fixture
def ctx5():
    return AlgebraContext(5)


def e(ctx, i):
    return gr_gen(ctx, "e", i)


def test_exterior_nilpotence(ctx5):
    assert gr_multiply(e(ctx5, 1), e(ctx5, 1)).is_zero()


def test_odd_anticommutation(ctx5):
    assert gr_multiply(e(ctx5, 2), e(ctx5, 1)) == -gr_multiply(e(ctx5, 1), e(ctx5, 2))


def test_even_exterior_elements_commute(ctx5):
    e12 = gr_multiply(e(ctx5, 1), e(ctx5, 2))
    e34 = gr_multiply(e(ctx5, 3), e(ctx5, 4))
    p1 = gr_multiply(e12, e34)
    p2 = gr_multiply(e34, e12)
    assert p1 == p2
    assert p1.coefficient((0,) * 5, (0,) * 5, (1, 2, 3, 4)) == 1


def test_supercommutativity_random(ctx5):
    rng = random.Random(3)
    gens = [("x", i) for i in range(1, 6)] + [("y", i) for i in range(1, 6)] + [
        ("e", i) for i in range(1, 6)
    ]
    for _ in range(60):
        u = gr_one(ctx5)
        v = gr_one(ctx5)
        for _ in range(rng.randint(0, 3)):
            u = gr_multiply(u, gr_gen(ctx5, *rng.choice(gens)))
        for _ in range(rng.randint(0, 3)):
            v = gr_multiply(v, gr_gen(ctx5, *rng.choice(gens)))
        pu, pv = u.parity().value, v.parity().value
        if u.is_zero() or v.is_zero():
            continue
        sign = -1 if (pu == 1 and pv == 1) else 1
        assert gr_multiply(u, v) == gr_multiply(v, u).scale(sign)


def test_leading_part_examples(ctx5):
    o12 = (
        L_of_chord(ctx5, (1, 2))
        + (ctx5.e(1) * ctx5.e(2)).scale(Fraction(1, 2))
    )
    assert leading_part(o12) == gr_O(ctx5, 1, 2)
    assert leading_part(ctx5.x(1) * ctx5.y(1) + ctx5.one()) == gr_multiply(
        gr_gen(ctx5, "x", 1), gr_gen(ctx5, "y", 1)
    )
    with pytest.raises(DomainError):
        leading_part(ctx5.zero())


def test_leading_part_of_L_product(ctx5):
    el = L_of_chord(ctx5, (1, 3)) * L_of_chord(ctx5, (2, 5))
    assert leading_part(el) == gr_multiply(gr_L(ctx5, 1, 3), gr_L(ctx5, 2, 5))
    assert leading_part(el).degree() == 4


def test_leading_part_multiplicative_on_O_products(ctx5):
    rng = random.Random(17)
    chords = [(i, j) for i in range(1, 6) for j in range(i + 1, 6)]
    for _ in range(30):
        cs = [rng.choice(chords) for _ in range(rng.randint(1, 3))]
        filtered = ctx5.one()
        graded = gr_one(ctx5)
        for i, j in cs:
            filtered = filtered * (
                L_of_chord(ctx5, (i, j)) + (ctx5.e(i) * ctx5.e(j)).scale(Fraction(1, 2))
            )
            graded = gr_multiply(graded, gr_O(ctx5, i, j))
        if filtered.degree() == 2 * len(cs):
            assert leading_part(filtered) == graded


def test_gr_L_antisymmetry(ctx5):
    assert gr_L(ctx5, 2, 1) == -gr_L(ctx5, 1, 2)
    with pytest.raises(DomainError):
        gr_L(ctx5, 1, 1)


def test_pluecker_relation(ctx5):
    for i, j, k, l in permutations(range(1, 6), 4):
        lhs = (
            gr_multiply(gr_L(ctx5, i, j), gr_L(ctx5, k, l))
            + gr_multiply(gr_L(ctx5, i, k), gr_L(ctx5, l, j))
            + gr_multiply(gr_L(ctx5, i, l), gr_L(ctx5, j, k))
        )
        assert lhs.is_zero(), (i, j, k, l)


def test_gr_O_square(ctx5):
    o12 = gr_O(ctx5, 1, 2)
    sq = gr_multiply(o12, o12)
    l12 = gr_L(ctx5, 1, 2)
    want = gr_multiply(l12, l12) + gr_multiply(
        l12, gr_multiply(e(ctx5, 1), e(ctx5, 2))
    )
    assert sq == want  # the quarter exterior-square vanishes


def test_gr_text_prefix(ctx5):
    assert gr_text(gr_zero(ctx5)) == "gr: 0"
    assert gr_text(gr_gen(ctx5, "e", 1)).startswith("gr: 1 * e1")
