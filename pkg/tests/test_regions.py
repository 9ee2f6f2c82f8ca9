import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import brute_valuation, rationals
from ultraspec.fixtures import FIXTURES
from ultraspec.linalg import RationalPoly
from ultraspec.padic import PMagnitude
from ultraspec.pseudospectra import Verdict, member
from ultraspec.regions import (
    Ball,
    LeafClass,
    classify_ball,
    constancy_certificate,
    explore,
    magnitude_bounds,
    outer_bound_exponent,
)


def test_ball_basics():
    b = Ball(Fraction(10), 2, 3)
    assert b.center == 1  # 10 = 1 mod 9
    assert b.contains(19) and not b.contains(4)
    kids = b.children()
    assert len(kids) == 3 and all(b.contains_ball(k) for k in kids)
    assert kids[0].disjoint(kids[1])
    assert sum(k.measure for k in kids) == b.measure


def test_constancy_certificate():
    f = RationalPoly((Fraction(0), Fraction(-3), Fraction(2)), 3)  # 2x^2 - 3x
    assert constancy_certificate(f, Ball(Fraction(1), 1, 3)) == PMagnitude.finite(0)
    assert constancy_certificate(f, Ball(Fraction(0), 0, 3)) is None


@settings(max_examples=100)
@given(st.lists(rationals(20, 4), min_size=1, max_size=4), rationals(30, 5), st.integers(-1, 4), st.sampled_from([2, 3, 5]))
def test_magnitude_bounds_hold_on_samples(cs, c, r, p):
    f = RationalPoly(tuple(cs), p)
    ball = Ball(c, r, p)
    lo, hi = magnitude_bounds(f, ball)
    rng = random.Random(0)
    for _ in range(20):
        x = ball.random_point(rng)
        m = f(x)
        val = Fraction(0) if m == 0 else Fraction(p) ** -brute_valuation(m, p)
        assert lo.value(p) <= val <= hi.value(p)


def region_iii(lam):
    """Closed form for example (iii) at eps = 1/4 over Q_2: |lambda - 1| < 1/2."""
    d = lam - 1
    return d == 0 or brute_valuation(d, 2) >= 2


def test_example_iii_tree_matches_closed_form():
    fam = FIXTURES["example-final-iii"].build_family()
    tree = explore(fam, Ball(Fraction(1), 1, 2), Fraction(1, 4), 6)
    leaves = tree.leaves()
    classes = {}
    for leaf in leaves:
        classes.setdefault(leaf.leaf_class, []).append(leaf.ball)
    assert LeafClass.UNRESOLVED not in classes
    assert classes[LeafClass.CONTAINS_SPECTRUM_POINT] == [Ball(Fraction(1), 7, 2)]
    assert classes[LeafClass.NON_MEMBER] == [Ball(Fraction(3), 2, 2)]
    assert sorted(b.radius_exp for b in classes[LeafClass.MEMBER]) == [3, 4, 5, 6, 7]
    assert sum(leaf.ball.measure for leaf in leaves) == Fraction(1, 2)
    rng = random.Random(3)
    for leaf in leaves:
        for _ in range(50):
            lam = leaf.ball.random_point(rng)
            inside = region_iii(lam)
            if leaf.leaf_class is LeafClass.MEMBER:
                assert inside and member(fam, lam, Fraction(1, 4)).verdict.is_member
            elif leaf.leaf_class is LeafClass.NON_MEMBER:
                assert not inside and member(fam, lam, Fraction(1, 4)).verdict is Verdict.OUTSIDE


def test_depth_zero_single_leaf():
    fam = FIXTURES["example-final-iii"].build_family()
    tree = explore(fam, Ball(Fraction(0), 0, 2), Fraction(1, 4), 0)
    assert len(tree.leaves()) == 1 and tree.root.children == []


def test_root_avoiding_region_is_non_member():
    fam = FIXTURES["example-final-iii"].build_family()
    tree = explore(fam, Ball(Fraction(0), 1, 2), Fraction(1, 4), 5)
    assert [leaf.leaf_class for leaf in tree.leaves()] == [LeafClass.NON_MEMBER]


@pytest.mark.parametrize("name,eps", [("structured-diag", Fraction(1, 3)), ("jordan-3", Fraction(1, 9)), ("all-ones", Fraction(1, 2))])
def test_tree_leaves_agree_with_pointwise_membership(name, eps):
    problem = FIXTURES[name]
    fam = problem.build_family()
    tree = explore(fam, Ball(Fraction(0), 0, problem.prime), eps, 4)
    rng = random.Random(name)
    for leaf in tree.leaves():
        if leaf.leaf_class not in (LeafClass.MEMBER, LeafClass.NON_MEMBER):
            continue
        for _ in range(20):
            lam = leaf.ball.random_point(rng)
            assert member(fam, lam, eps).verdict.is_member == (leaf.leaf_class is LeafClass.MEMBER)


def test_classify_ball_certificate():
    fam = FIXTURES["structured-diag"].build_family()
    c = classify_ball(fam, Ball(Fraction(10), 3, 3), Fraction(1, 3))
    assert c.leaf_class is LeafClass.MEMBER
    assert c.q_lo == c.q_hi == PMagnitude.finite(2)


@pytest.mark.parametrize("name", ["example-final-i", "example-final-ii", "example-final-iii", "jordan-3", "all-ones", "structured-diag"])
def test_outer_bound(name):
    problem = FIXTURES[name]
    p, eps = problem.prime, problem.epsilon
    fam = problem.build_family()
    m = outer_bound_exponent(fam, eps)
    assert m is not None
    closed = {
        "example-final-i": oracles.final_i,
        "example-final-ii": oracles.final_ii,
        "example-final-iii": oracles.final_iii,
        "jordan-3": oracles.jordan_3,
        "all-ones": oracles.all_ones,
        "structured-diag": oracles.structured_1(1),
    }[name]
    rng = random.Random(1)
    for _ in range(100):
        lam = Fraction(rng.randint(1, 10 ** 4) * p + 1, p ** (m + 1 + rng.randint(0, 3)))
        assert closed(lam, p) <= 1 / eps.value
