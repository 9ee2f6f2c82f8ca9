"""Closed-form quantities for the worked examples, written directly in terms of
|.|_p with no library code. None stands for an eigenvalue (infinite quantity).
"""

from fractions import Fraction

from conftest import abs_p


def _div(num, den):
    return None if den == 0 else num / den


def jordan_3(lam, p):
    d = abs_p(1 - lam, p)
    return None if d == 0 else max(1 / d, abs_p(3, p) / d ** 2)


def all_ones(lam, p):
    d = abs_p(lam * (2 - lam), p)
    return None if d == 0 else max(1 / d, abs_p(1 - lam, p) / d)


def diag_pseudo(l1, l2):
    def q(lam, p):
        a, b = abs_p(l1 - lam, p), abs_p(l2 - lam, p)
        return None if a == 0 or b == 0 else max(1 / a, 1 / b)

    return q


def diag_condition(a, b):
    def q(lam, p):
        x, y = abs_p(a - lam, p), abs_p(b - lam, p)
        return None if x == 0 or y == 0 else max(x / y, y / x)

    return q


def final_i(lam, p):
    a, b = abs_p(1 - 2 * lam, p), abs_p(1 - lam, p)
    if a == 0 or b == 0:
        return None
    return max(abs_p(8 * lam, p) / (a * b), 1 / a, abs_p(4, p) / b)


def final_ii(lam, p):
    return _div(abs_p(1 - 2 * lam, p), abs_p(lam * (2 * lam - 3), p))


def final_iii(lam, p):
    return _div(Fraction(1), abs_p(2 * (lam - 1), p))


def structured_1(l1):
    return lambda lam, p: _div(Fraction(1), abs_p(l1 - lam, p))


def structured_2(lam, p):
    a, b = abs_p(1 - lam, p), abs_p(lam, p)
    return None if a == 0 or b == 0 else max(1 / a, 1 / b)


def structured_3(lam, p):
    return _div(Fraction(1), abs_p(1 - lam, p))
