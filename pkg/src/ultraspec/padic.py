"""Exact rationals viewed inside Q_p.

Every magnitude in the toolkit is a power of p, so all comparisons reduce to
integer comparisons here; nothing is ever converted to a float.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Union

from .errors import DivisionByZero, ParseError, PrimeMismatch

INF = math.inf

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

# Deterministic Miller-Rabin witness set, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p) -> int:
    if isinstance(p, bool) or not isinstance(p, int):
        raise ValueError(f"prime must be an int, got {p!r}")
    if p >= 1 << 64:
        raise ValueError(f"prime {p} exceeds the 64-bit range")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"``; nothing else is accepted."""
    if not isinstance(text, str):
        raise ParseError(f"rational literal must be a string, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"malformed rational literal {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def int_valuation(n: int, p: int) -> int:
    """v_p of a nonzero integer."""
    n = abs(n)
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    # strip big chunks first so huge powers of p stay cheap
    pk, k = p, 1
    while n % pk == 0:
        n //= pk
        v += k
        pk, k = pk * pk, k * 2
    while n % p == 0:
        n //= p
        v += 1
    return v


def frac_valuation(x: Fraction, p: int):
    """v_p of a rational; ``INF`` for zero."""
    if x == 0:
        return INF
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def p_power(p: int, e: int) -> Fraction:
    return Fraction(p) ** e


@total_ordering
@dataclass(frozen=True)
class PMagnitude:
    """An exact p-adic absolute value: 0, p**exponent, or infinity.

    The prime is not stored; magnitudes are only ever compared with others
    computed over the same field.
    """

    kind: str
    exponent: int = 0

    ZERO = "zero"
    FINITE = "finite"
    INFINITE = "infinite"

    def __post_init__(self):
        if self.kind not in (self.ZERO, self.FINITE, self.INFINITE):
            raise ValueError(f"bad magnitude kind {self.kind!r}")
        if self.kind != self.FINITE and self.exponent != 0:
            raise ValueError("only finite magnitudes carry an exponent")

    @classmethod
    def zero(cls) -> "PMagnitude":
        return cls(cls.ZERO)

    @classmethod
    def finite(cls, exponent: int) -> "PMagnitude":
        return cls(cls.FINITE, int(exponent))

    @classmethod
    def infinite(cls) -> "PMagnitude":
        return cls(cls.INFINITE)

    @property
    def is_zero(self) -> bool:
        return self.kind == self.ZERO

    @property
    def is_finite(self) -> bool:
        return self.kind == self.FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind == self.INFINITE

    def _key(self):
        if self.kind == self.ZERO:
            return (0, 0)
        if self.kind == self.FINITE:
            return (1, self.exponent)
        return (2, 0)

    def __lt__(self, other):
        if not isinstance(other, PMagnitude):
            return NotImplemented
        return self._key() < other._key()

    def __mul__(self, other):
        if not isinstance(other, PMagnitude):
            return NotImplemented
        kinds = {self.kind, other.kind}
        if kinds == {self.ZERO, self.INFINITE}:
            raise ArithmeticError("0 * infinity is undefined")
        if self.ZERO in kinds:
            return PMagnitude.zero()
        if self.INFINITE in kinds:
            return PMagnitude.infinite()
        return PMagnitude.finite(self.exponent + other.exponent)

    def inverse(self) -> "PMagnitude":
        if self.is_zero:
            return PMagnitude.infinite()
        if self.is_infinite:
            return PMagnitude.zero()
        return PMagnitude.finite(-self.exponent)

    def __truediv__(self, other):
        if not isinstance(other, PMagnitude):
            return NotImplemented
        return self * other.inverse()

    def value(self, p: int):
        """Exact value as a Fraction (``INF`` for the infinite magnitude)."""
        if self.is_zero:
            return Fraction(0)
        if self.is_infinite:
            return INF
        return p_power(p, self.exponent)

    def to_json(self):
        if self.is_finite:
            return {"kind": self.kind, "exponent": self.exponent}
        return {"kind": self.kind}

    def __str__(self):
        if self.is_finite:
            return f"p^{self.exponent}"
        return "0" if self.is_zero else "inf"


def magnitude_max(mags) -> PMagnitude:
    return max(mags, default=PMagnitude.zero())


def frac_abs(x: Fraction, p: int) -> PMagnitude:
    if x == 0:
        return PMagnitude.zero()
    return PMagnitude.finite(-frac_valuation(x, p))


@dataclass(frozen=True)
class Epsilon:
    """A strictly positive exact rational threshold."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        if v <= 0:
            raise ValueError(f"epsilon must be positive, got {v}")
        object.__setattr__(self, "value", v)

    @classmethod
    def of(cls, x) -> "Epsilon":
        if isinstance(x, Epsilon):
            return x
        if isinstance(x, str):
            x = parse_rational(x)
        return cls(Fraction(x))

    def __mul__(self, other):
        return Epsilon(self.value * Fraction(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Epsilon(self.value / Fraction(other))

    def __lt__(self, other):
        return self.value < Epsilon.of(other).value

    def __str__(self):
        return format_rational(self.value)


def magnitude_compare_vs_inv_eps(m: PMagnitude, eps, p: int) -> int:
    """Sign of ``m - 1/eps`` computed exactly: -1, 0 or 1."""
    eps = Epsilon.of(eps).value
    if m.is_infinite:
        return 1
    if m.is_zero:
        return -1
    # p^e * eps  vs  1
    a, b = eps.numerator, eps.denominator
    if m.exponent >= 0:
        lhs, rhs = p ** m.exponent * a, b
    else:
        lhs, rhs = a, b * p ** (-m.exponent)
    return (lhs > rhs) - (lhs < rhs)


Number = Union[int, Fraction, "PadicScalar"]


class PadicScalar:
    """An exact rational regarded as an element of Q_p."""

    __slots__ = ("value", "prime")

    def __init__(self, value, prime: int):
        if isinstance(value, PadicScalar):
            if value.prime != prime:
                raise PrimeMismatch(f"primes {value.prime} and {prime} differ")
            value = value.value
        elif isinstance(value, str):
            value = parse_rational(value)
        elif isinstance(value, float):
            raise TypeError("floating-point values are not accepted")
        object.__setattr__(self, "value", Fraction(value))
        object.__setattr__(self, "prime", check_prime(prime))

    def __setattr__(self, name, val):
        raise AttributeError("PadicScalar is immutable")

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def _coerce(self, other) -> Fraction:
        if isinstance(other, PadicScalar):
            if other.prime != self.prime:
                raise PrimeMismatch(f"primes {self.prime} and {other.prime} differ")
            return other.value
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        raise TypeError(f"cannot combine PadicScalar with {type(other).__name__}")

    def _new(self, v: Fraction) -> "PadicScalar":
        return PadicScalar(v, self.prime)

    def __add__(self, other):
        return self._new(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self._new(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self._new(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other)
        if d == 0:
            raise DivisionByZero("division by zero in Q_p")
        return self._new(self.value / d)

    def __rtruediv__(self, other):
        return self._new(self._coerce(other)) / self

    def __neg__(self):
        return self._new(-self.value)

    def invert(self) -> "PadicScalar":
        if self.value == 0:
            raise DivisionByZero("0 has no inverse")
        return self._new(1 / self.value)

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        return self._new(self.value ** k)

    def __eq__(self, other):
        if isinstance(other, PadicScalar):
            return self.prime == other.prime and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.prime))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"PadicScalar({format_rational(self.value)!r}, p={self.prime})"

    def __str__(self):
        return format_rational(self.value)


def valuation(x: PadicScalar):
    """v_p(x), or ``INF`` when x == 0."""
    return frac_valuation(x.value, x.prime)


def padic_abs(x: PadicScalar) -> PMagnitude:
    return frac_abs(x.value, x.prime)


def unit_residue(x: Fraction, p: int, k: int) -> int:
    """For a p-adic unit x, the integer in [0, p**k) congruent to x."""
    mod = p ** k
    return x.numerator * pow(x.denominator, -1, mod) % mod
