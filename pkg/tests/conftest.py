from fractions import Fraction

from hypothesis import strategies as st

from ultraspec.linalg import RationalMatrix

PRIMES = [2, 3, 5, 7]


def rationals(span=60, max_den=40, nonzero=False):
    s = st.builds(Fraction, st.integers(-span, span), st.integers(1, max_den))
    return s.filter(lambda x: x != 0) if nonzero else s


@st.composite
def matrices(draw, p, n=None, span=9, max_den=6):
    n = n or draw(st.integers(1, 3))
    return RationalMatrix([[draw(rationals(span, max_den)) for _ in range(n)] for _ in range(n)], p)


def brute_valuation(x: Fraction, p: int) -> int:
    """v_p by repeated division, independent of the library."""
    num, den, v = x.numerator, x.denominator, 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def abs_p(x, p) -> Fraction:
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    return Fraction(p) ** -brute_valuation(x, p)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
