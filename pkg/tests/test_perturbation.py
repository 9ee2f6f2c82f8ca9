from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import abs_p, rationals
from ultraspec.errors import NotInPseudoRegion, ZeroVector
from ultraspec.fixtures import FIXTURES
from ultraspec.linalg import RationalMatrix, sup_norm
from ultraspec.padic import PMagnitude
from ultraspec.perturbation import (
    det_identity_holds,
    ingleton_functional,
    max_exponent_below,
    perturbed_pencil,
    rank_one_witness,
    sample_perturbation,
    scale_to_magnitude,
    trial_rng,
    union_equality_campaign,
    verify_forward_inclusion,
)
from ultraspec.pseudospectra import Verdict, member

RESOLVENT_FIXTURES = ["structured-diag", "example-final-ii", "example-final-i", "example-final-iii", "jordan-3", "all-ones", "structured-example-2"]


def sympy_det(A: RationalMatrix):
    return Fraction(str(sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in A.rows]).det()))


@given(st.lists(rationals(50, 20), min_size=1, max_size=4), st.sampled_from([2, 3, 5]))
def test_ingleton_functional(x, p):
    if all(a == 0 for a in x):
        with pytest.raises(ZeroVector):
            ingleton_functional(x, p)
        return
    phi = ingleton_functional(x, p)
    assert phi(x) == 1
    norm = max(abs_p(a, p) for a in x)
    assert phi.norm.value(p) == 1 / norm


@pytest.mark.parametrize("name", RESOLVENT_FIXTURES)
@settings(max_examples=60, deadline=None)
@given(lam=rationals(300, 40))
def test_rank_one_witness(name, lam):
    problem = FIXTURES[name]
    fam, eps, p = problem.build_family(), problem.epsilon, problem.prime
    v = member(fam, lam, eps).verdict
    if v is Verdict.OUTSIDE:
        with pytest.raises(NotInPseudoRegion):
            rank_one_witness(fam, lam, eps)
        return
    w = rank_one_witness(fam, lam, eps)
    assert sup_norm(w.D).value(p) < eps.value
    assert sympy_det(perturbed_pencil(fam, w.D, lam)) == 0
    if v is Verdict.IN_PSEUDO_REGION:
        # the minimal rank-one perturbation has norm exactly 1/q(lambda)
        assert w.norm == fam.quantity_at(lam).inverse()


def test_rank_one_on_known_point():
    fam = FIXTURES["structured-diag"].build_family()
    w = rank_one_witness(fam, 10, Fraction(1, 3))
    assert w.D == RationalMatrix([[9, 0], [0, 0]], 3)
    assert w.norm == PMagnitude.finite(-2)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6), rationals(60, 9))
def test_det_identity(seed, lam):
    fam = FIXTURES["example-final-i"].build_family()
    if fam.in_spectrum(lam):
        return
    D = sample_perturbation(trial_rng(seed, 0), 2, 2, 1)
    assert det_identity_holds(fam, D, lam)


def test_scale_guard():
    D = RationalMatrix([[1, 2], [3, 4]], 3)
    with pytest.raises(ValueError):
        scale_to_magnitude(D, -1, Fraction(1, 3))
    assert sup_norm(scale_to_magnitude(D, -2, Fraction(1, 3))) == PMagnitude.finite(-2)
    assert max_exponent_below(Fraction(1, 3), 3) == -2
    assert max_exponent_below(Fraction(1, 2), 3) == -1


@pytest.mark.parametrize("name", ["structured-diag", "example-final-ii", "example-final-i", "jordan-3", "diag-ab-condition", "structured-condition-diag"])
def test_forward_inclusion(name):
    problem = FIXTURES[name]
    rep = verify_forward_inclusion(problem.build_family(), problem.epsilon, trials=40, seed=7)
    assert rep.ok, rep.counterexamples[:1]
    assert rep.checked_eigenvalues > 0


def test_union_campaign():
    problem = FIXTURES["structured-diag"]
    grid = [Fraction(k, 3) for k in range(-20, 20)] + [Fraction(1 + 9 * k) for k in range(1, 10)]
    rep = union_equality_campaign(problem.build_family(), grid, problem.epsilon, trials=5, seed=1)
    assert rep.ok
    assert rep.count(Verdict.OUTSIDE) > 0 and rep.count(Verdict.IN_PSEUDO_REGION) > 0
