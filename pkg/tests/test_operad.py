import itertools
import random

import pytest
from hypothesis import given, strategies as st

from collatz_f import (
    ALPHA,
    ID_STAR_ALPHA,
    IDENTITY,
    LAMBDA,
    RHO,
    compose,
    equal,
    identity,
    mu3,
    mu_k,
    star,
)
from collatz_f.catalogue import naturality_catalogue
from collatz_f.operad import (
    PlanarTree,
    check_naturality,
    eval_tree,
    freeness_probe,
    lambda_component_sides,
    planar_trees,
    rho_component_sides,
)
from collatz_f.randmaps import random_bijection
from collatz_f.syntax import parse_tree

from conftest import bijections
from oracles import agree_upto, girard, interleave

leaf = PlanarTree.leaf()
node = PlanarTree.node


def test_star_of_identities():
    assert star(IDENTITY, IDENTITY) == identity()


def test_star_id_alpha():
    assert star(IDENTITY, ALPHA) == ID_STAR_ALPHA
    assert star(IDENTITY, ALPHA)(5) == 9  # 2n - 1 on 4N+1


def test_star_alpha_id_at_6():
    # even branch: 2 * α(3) = 2 * 1
    assert star(ALPHA, IDENTITY)(6) == 2


@given(bijections, bijections)
def test_star_matches_pointwise_definition(a, b):
    assert agree_upto(star(a, b), girard(a, b), 2000) is None


@given(bijections, bijections, bijections, bijections)
def test_star_is_a_homomorphism(a, b, c, d):
    lhs = star(compose(a, c), compose(b, d))
    rhs = compose(star(a, b), star(c, d))
    assert equal(lhs, rhs)


@given(bijections, bijections, bijections, bijections, bijections, bijections)
def test_mu3_is_a_homomorphism(a, b, c, d, e, f):
    assert equal(mu3(compose(a, d), compose(b, e), compose(c, f)),
                 compose(mu3(a, b, c), mu3(d, e, f)))


@pytest.mark.parametrize("k", range(1, 7))
def test_mu_k_is_a_homomorphism(k):
    rng = random.Random(k)
    for _ in range(5):
        fs = [random_bijection(rng, max_parts=3) for _ in range(k)]
        gs = [random_bijection(rng, max_parts=3) for _ in range(k)]
        lhs = mu_k([compose(f, g) for f, g in zip(fs, gs)])
        assert equal(lhs, compose(mu_k(fs), mu_k(gs)))


def test_star_is_injective_on_catalogue():
    cat = list(naturality_catalogue().values())
    images = {}
    for a, b in itertools.product(cat, repeat=2):
        images.setdefault(star(a, b), []).append((a, b))
    for pairs in images.values():
        a0, b0 = pairs[0]
        assert all(equal(a, a0) and equal(b, b0) for a, b in pairs)


def test_star_components_recoverable():
    # restricting a⋆b to the evens/odds gives back a and b
    for a, b in itertools.product([RHO, LAMBDA, ALPHA], repeat=2):
        s = star(a, b)
        for n in range(300):
            assert s(2 * n) // 2 == a(n)
            assert (s(2 * n + 1) - 1) // 2 == b(n)


def test_mu3_examples():
    assert mu3(IDENTITY, IDENTITY, IDENTITY) == identity()
    # 3 ≡ 0 mod 3: 3 * α(1) = 6
    assert mu3(ALPHA, IDENTITY, IDENTITY)(3) == 6


@given(bijections, bijections, bijections)
def test_mu3_matches_pointwise_definition(f, g, h):
    assert agree_upto(mu3(f, g, h), interleave([f, g, h]), 2000) is None


def test_mu_k_small_cases_coincide():
    rng = random.Random(5)
    for _ in range(10):
        f, g, h = (random_bijection(rng) for _ in range(3))
        assert equal(mu_k([f]), f)
        assert equal(mu_k([f, g]), star(f, g))
        assert equal(mu_k([f, g, h]), mu3(f, g, h))


@pytest.mark.parametrize("k", [1, 2, 5, 8])
def test_mu_k_of_identities(k):
    assert mu_k([IDENTITY] * k) == identity()


def test_mu_k_alpha_alpha():
    assert equal(mu_k([ALPHA, ALPHA]), star(ALPHA, ALPHA))


def test_mu_k_rejects_empty():
    with pytest.raises(ValueError):
        mu_k([])


@given(st.lists(bijections, min_size=1, max_size=5))
def test_mu_k_pointwise(fs):
    assert agree_upto(mu_k(fs), interleave(fs), 1500) is None


# -- naturality --------------------------------------------------------------------


def test_naturality_identity_and_alpha():
    assert check_naturality(IDENTITY, IDENTITY, IDENTITY)
    assert check_naturality(ALPHA, ALPHA, ALPHA)


def test_naturality_alpha_pointwise():
    lhs = compose(ALPHA, star(ALPHA, star(ALPHA, ALPHA)))
    rhs = compose(star(star(ALPHA, ALPHA), ALPHA), ALPHA)
    assert agree_upto(lhs, rhs, 10_000) is None


def test_naturality_case_table():
    # both sides equal 4f(n/2), 4g((n-1)/4)+2, 2h((n-3)/4)+1 on the three classes;
    # on 4N+3: f⋆(g⋆h) gives 4h(m)+3 and α halves (x-1), so the constant is +1
    f, g, h = RHO, LAMBDA, ALPHA
    lhs = compose(ALPHA, star(f, star(g, h)))
    for n in range(3000):
        if n % 2 == 0:
            expected = 4 * f(n // 2)
        elif n % 4 == 1:
            expected = 4 * g((n - 1) // 4) + 2
        else:
            expected = 2 * h((n - 3) // 4) + 1
        assert lhs(n) == expected


@given(bijections, bijections, bijections)
def test_naturality_random(f, g, h):
    assert check_naturality(f, g, h)


def test_naturality_fails_for_wrong_associator():
    assert not equal(compose(RHO, star(ALPHA, star(ALPHA, ALPHA))),
                     compose(star(star(ALPHA, ALPHA), ALPHA), RHO))


@pytest.mark.parametrize("sides", [rho_component_sides, lambda_component_sides])
def test_component_naturality_catalogue(sides):
    cat = list(naturality_catalogue().values())
    for f, g, h in itertools.product(cat, repeat=3):
        assert equal(*sides(f, g, h))


def test_rho_component_case_table():
    # ρ ∘ mu3(f,g,h): 2f(n/3), 4g((n-1)/3)+1, 4h((n-2)/3)+3
    f, g, h = ALPHA, RHO, LAMBDA
    lhs, _ = rho_component_sides(f, g, h)
    for n in range(3000):
        r, m = n % 3, n // 3
        expected = (2 * f(m), 4 * g(m) + 1, 4 * h(m) + 3)[r]
        assert lhs(n) == expected


def test_lambda_component_case_table():
    # λ ∘ mu3(f,g,h): 4f(n/3), 4g((n-1)/3)+2, 2h((n-2)/3)+1
    f, g, h = ALPHA, RHO, LAMBDA
    lhs, _ = lambda_component_sides(f, g, h)
    for n in range(3000):
        r, m = n % 3, n // 3
        expected = (4 * f(m), 4 * g(m) + 2, 2 * h(m) + 1)[r]
        assert lhs(n) == expected


def test_printed_orientation_does_not_typecheck_as_maps():
    # ρ ∘ mu3 = (f⋆(g⋆h)) ∘ ρ holds; ρ ∘ mu3 = (f⋆(g⋆h)) ∘ ρ⁻¹ does not
    from collatz_f import inverse

    f = g = h = ALPHA
    lhs = compose(RHO, mu3(f, g, h))
    assert not equal(lhs, compose(star(f, star(g, h)), inverse(RHO)))


# -- trees -------------------------------------------------------------------------


def test_tree_leaf_and_binary():
    f, g, h = RHO, LAMBDA, ALPHA
    assert eval_tree(leaf, [f]) is f
    t = node(leaf, node(leaf, leaf))
    assert eval_tree(t, [f, g, h]) == star(f, star(g, h))


def test_tree_arity_mismatch():
    with pytest.raises(ValueError):
        eval_tree(node(leaf, leaf), [RHO])


def test_unary_nodes_only_at_root():
    assert eval_tree(node(leaf), [RHO]) == RHO
    with pytest.raises(ValueError):
        node(node(leaf), leaf)
    with pytest.raises(ValueError):
        node(node(leaf, leaf))


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 3), (4, 10), (5, 38)])
def test_tree_counts(n, count):
    # planar trees with internal arities in {2, 3}
    assert len(planar_trees(n)) == count


def test_binary_trees_are_catalan():
    assert [len(planar_trees(n, (2,))) for n in range(1, 8)] == [1, 1, 2, 5, 14, 42, 132]


def test_arity_three_distinctness():
    trees = planar_trees(3)
    maps = [eval_tree(t, [ALPHA] * 3) for t in trees]
    assert len(maps) == 3
    for a, b in itertools.combinations(maps, 2):
        assert not equal(a, b)


def test_identity_probe_collapses_everything():
    ms = {eval_tree(t, [IDENTITY] * 3) for t in planar_trees(3)}
    assert ms == {identity()}


def test_freeness_probe_four_leaves():
    trees, collisions = freeness_probe(4)
    assert len(trees) == 15 and collisions == []


@pytest.mark.parametrize("text", ["_", "(* _ _)", "(* _ (* _ _))", "(#3 _ (* _ _) _)", "(#4 _ _ _ _)"])
def test_tree_syntax_round_trip(text):
    assert str(parse_tree(text)) == text


def test_six_leaf_collision_with_equal_leaves():
    # mod-2-then-mod-3 and mod-3-then-mod-2 both split by n mod 6; with the
    # same map at every leaf the slot order no longer matters
    a, b = parse_tree("(* (#3 _ _ _) (#3 _ _ _))"), parse_tree("(#3 (* _ _) (* _ _) (* _ _))")
    assert eval_tree(a, [ALPHA] * 6) == eval_tree(b, [ALPHA] * 6)
    rng = random.Random(6)
    fs = [random_bijection(rng) for _ in range(6)]
    assert not equal(eval_tree(a, fs), eval_tree(b, fs))
