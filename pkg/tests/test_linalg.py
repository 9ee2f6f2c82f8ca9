from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import matrices, rationals
from ultraspec.errors import DimensionError, PrimeMismatch, SingularMatrix, SingularPencil
from ultraspec.linalg import (
    RationalMatrix,
    RationalPoly,
    adjugate,
    char_poly,
    determinant,
    interpolate,
    inverse_at,
    is_invertible,
    poly_gcd,
    sup_norm,
    symbolic_resolvent,
    vec_norm,
)
from ultraspec.padic import PMagnitude


def sym(A: RationalMatrix):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in A.rows])


@settings(max_examples=150)
@given(matrices(3, n=3))
def test_determinant_matches_sympy(A):
    assert determinant(A).value == Fraction(str(sym(A).det()))


@settings(max_examples=150)
@given(matrices(5))
def test_adjugate_identity(A):
    d = determinant(A).value
    I = RationalMatrix.identity(A.n, 5)
    assert adjugate(A) @ A == I.scale(d)
    assert A @ adjugate(A) == I.scale(d)


@given(matrices(2))
def test_inverse(A):
    if is_invertible(A):
        assert inverse_at(A) @ A == RationalMatrix.identity(A.n, 2)
    else:
        with pytest.raises(SingularMatrix):
            inverse_at(A)


@settings(max_examples=150)
@given(matrices(3, n=2), matrices(3, n=2))
def test_sup_norm_submultiplicative(A, B):
    assert sup_norm(A @ B) <= sup_norm(A) * sup_norm(B)
    v = [Fraction(1), Fraction(3, 2)]
    assert vec_norm(A.apply(v), 3) <= sup_norm(A) * vec_norm(v, 3)


def test_mismatch_errors():
    A = RationalMatrix.identity(2, 3)
    with pytest.raises(PrimeMismatch):
        A + RationalMatrix.identity(2, 5)
    with pytest.raises(DimensionError):
        A @ RationalMatrix.identity(3, 3)
    with pytest.raises(DimensionError):
        RationalMatrix([[1, 2], [3]], 3)


@settings(max_examples=100)
@given(matrices(7, n=3), matrices(7, n=3))
def test_char_poly_of_pencil_matches_sympy(A, M):
    lam = sympy.Symbol("lam")
    expected = sympy.Poly((sym(A) - lam * sym(M)).det(), lam)
    if expected.is_zero:
        with pytest.raises(SingularPencil):
            char_poly(A, M)
        return
    got = char_poly(A, M)
    want = [Fraction(str(c)) for c in reversed(expected.all_coeffs())]
    assert list(got.coeffs) == want


@settings(max_examples=100)
@given(matrices(3, n=2), rationals(20, 7))
def test_symbolic_resolvent_matches_direct_inverse(A, lam):
    B = RationalMatrix([[1, 1], [1, 1]], 3)
    C = RationalMatrix([[1, 0], [0, 0]], 3)
    R = symbolic_resolvent(A, None, B, C)
    P = A - RationalMatrix.identity(2, 3).scale(lam)
    val = R.evaluate(lam)
    if not is_invertible(P):
        assert val is None and R.norm_at(lam) == PMagnitude.infinite()
    else:
        direct = B @ inverse_at(P) @ C
        assert val == direct
        assert R.norm_at(lam) == sup_norm(direct)


@given(st.lists(rationals(20, 5), min_size=1, max_size=5, unique=True), rationals(20, 5))
def test_interpolation_and_shift(roots, c):
    f = RationalPoly.from_roots(roots, 5)
    for r in roots:
        assert f(r) == 0
    xs = list(range(len(roots) + 1))
    assert interpolate(xs, [f(x) for x in xs], 5) == f
    g = f.taylor_shift(c)
    for x in (Fraction(0), Fraction(2, 3), Fraction(-5)):
        assert g(x) == f(c + x)


@given(st.lists(rationals(10, 3), min_size=1, max_size=3), st.lists(rationals(10, 3), min_size=1, max_size=3))
def test_divmod_and_gcd(r1, r2):
    f, g = RationalPoly.from_roots(r1, 3), RationalPoly.from_roots(r2, 3)
    q, r = divmod(f * g + f, g)
    assert q * g + r == f * g + f
    assume(not r.is_zero())
    h = poly_gcd(f, g)
    assert (f % h).is_zero() and (g % h).is_zero()
