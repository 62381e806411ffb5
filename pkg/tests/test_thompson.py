import random

import pytest
from hypothesis import given, strategies as st

from collatz_f import ALPHA, ID_STAR_ALPHA, IDENTITY, LAMBDA, RHO, compose, equal, identity, star
from collatz_f.catalogue import naturality_catalogue
from collatz_f.thompson import (
    GroupWord,
    brown_closure_word,
    check_brown_closure,
    check_brown_conjugation,
    check_conjugation_recursion,
    check_pentagon,
    check_relations,
    eval_word,
    generator,
    generator_inverse,
    parse_word,
    pentagon_sides,
    random_word,
    relation_witness,
    words_equal,
)

from oracles import agree_upto

words = st.integers(0, 2**32 - 1).map(lambda s: random_word(random.Random(s), 5, 2))


def test_first_generators():
    assert generator(0) == ALPHA
    assert generator(1) == ID_STAR_ALPHA
    assert generator(1)(7) == 3


@pytest.mark.parametrize("j", range(11))
def test_generator_modulus_divides_power_of_two(j):
    g = generator(j)
    assert (2 ** (j + 2)) % g.modulus == 0
    assert equal(compose(g, generator_inverse(j)), identity())


def test_generator_recursion_pointwise():
    # X_{j+1} fixes evens and acts as X_j on the odd half
    for j in range(5):
        g, h = generator(j), generator(j + 1)
        for n in range(500):
            assert h(2 * n) == 2 * n
            assert h(2 * n + 1) == 2 * g(n) + 1


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        generator(-1)


def test_relations_hold_up_to_six():
    assert check_relations(6) == []


def test_x_form_relation():
    # x_i⁻¹ x_j x_i = x_{j+1} read as maps
    for j in range(1, 5):
        for i in range(j):
            lhs = eval_word(GroupWord.of((i, -1), (j, 1), (i, 1)))
            assert equal(lhs, generator(j + 1))


def test_mutated_relation_index_gives_witness():
    for i, j, k in [(0, 1, 1), (0, 1, 3), (1, 2, 2), (0, 2, 4)]:
        n = relation_witness(i, j, k)
        assert n is not None
        lhs = generator(j)
        rhs = compose(generator(i), compose(generator(k), generator_inverse(i)))
        assert lhs(n) != rhs(n)


def test_generators_do_not_commute():
    assert not words_equal(parse_word("x0 x1"), parse_word("x1 x0"))


def test_word_parse_and_print():
    w = parse_word("x0 x1' x0")
    assert w.letters == ((0, 1), (1, -1), (0, 1))
    assert str(w) == "x0 x1' x0"
    assert str(parse_word("1")) == "1"
    with pytest.raises(ValueError):
        parse_word("y2")


def test_word_evaluates_right_to_left():
    w = parse_word("x0 x1' x0")
    f = compose(ALPHA, compose(generator_inverse(1), ALPHA))
    assert eval_word(w) == f
    assert agree_upto(eval_word(w), lambda n: ALPHA(generator_inverse(1)(ALPHA(n))), 2000) is None


@given(words)
def test_word_times_inverse_is_trivial(w):
    assert words_equal(w * w.inverse(), GroupWord())


@given(words)
def test_free_reduction_preserves_value(w):
    assert words_equal(w, w.free_reduce())


@given(words, words)
def test_eval_is_a_homomorphism(u, v):
    assert eval_word(u * v) == compose(eval_word(u), eval_word(v))


@given(words)
def test_shift_is_id_star(w):
    assert eval_word(w.shifted()) == star(IDENTITY, eval_word(w))


# -- pentagon -----------------------------------------------------------------------


def test_pentagon_for_alpha():
    assert check_pentagon(ALPHA)


def test_pentagon_spot_value():
    lhs, rhs = pentagon_sides(ALPHA)
    # α(3) = 1, α(1) = 2
    assert lhs(3) == rhs(3) == 2


def test_pentagon_for_identity():
    assert check_pentagon(IDENTITY)


def test_pentagon_fails_for_rho():
    assert not check_pentagon(RHO)


# -- conjugation and Brown's homomorphism ----------------------------------------------


@pytest.mark.parametrize("name", list(naturality_catalogue()))
def test_conjugation_recursion(name):
    assert check_conjugation_recursion(naturality_catalogue()[name])


@pytest.mark.parametrize("f", [RHO, LAMBDA])
def test_conjugation_recursion_on_non_group_maps(f):
    assert check_conjugation_recursion(f)


def test_brown_conjugation_examples():
    e = GroupWord()
    assert check_brown_conjugation(e, e, e)
    x0, x1 = parse_word("x0"), parse_word("x1")
    assert check_brown_conjugation(x0, x1, x0)


@given(words, words, words)
def test_brown_conjugation_random(a, b, c):
    assert check_brown_conjugation(a, b, c)


def test_brown_closure_letters():
    for j in range(4):
        for e in (1, -1):
            assert check_brown_closure(GroupWord.of((j, e)), GroupWord())
            assert check_brown_closure(GroupWord(), GroupWord.of((j, e)))


def test_brown_closure_of_empty_words():
    assert brown_closure_word(GroupWord(), GroupWord()) == GroupWord()


@given(words, words)
def test_brown_closure_random(a, b):
    assert check_brown_closure(a, b)
