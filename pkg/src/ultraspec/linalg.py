"""Exact matrices and polynomials over Q (read inside Q_p).

Matrices keep plain ``Fraction`` entries plus the prime; ``PadicScalar`` is
only materialised at the API boundary. Norms are the coordinate-max norm and
its induced operator norm, which is the entrywise max magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, PrimeMismatch, SingularMatrix, SingularPencil
from .padic import (
    PadicScalar,
    PMagnitude,
    check_prime,
    frac_abs,
    magnitude_max,
    parse_rational,
)

MAX_DIM = 12


def _as_fraction(x, prime: int) -> Fraction:
    if isinstance(x, PadicScalar):
        if x.prime != prime:
            raise PrimeMismatch(f"entry over Q_{x.prime} in a Q_{prime} matrix")
        return x.value
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floating-point entries are not accepted")
    return Fraction(x)


Vector = tuple  # tuple[Fraction, ...]


def vec_norm(v: Sequence[Fraction], p: int) -> PMagnitude:
    return magnitude_max(frac_abs(x, p) for x in v)


class RationalMatrix:
    """Square matrix with exact rational entries over Q_p."""

    __slots__ = ("rows", "prime", "n")

    def __init__(self, rows, prime: int):
        check_prime(prime)
        rows = tuple(tuple(_as_fraction(x, prime) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square and non-empty")
        if n > MAX_DIM:
            raise DimensionError(f"dimension {n} exceeds the cap of {MAX_DIM}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, val):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, n: int, prime: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], prime)

    @classmethod
    def zeros(cls, n: int, prime: int) -> "RationalMatrix":
        return cls([[0] * n for _ in range(n)], prime)

    @classmethod
    def diag(cls, values, prime: int) -> "RationalMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], prime)

    def __getitem__(self, ij) -> PadicScalar:
        i, j = ij
        return PadicScalar(self.rows[i][j], self.prime)

    def _check(self, other: "RationalMatrix"):
        if not isinstance(other, RationalMatrix):
            raise TypeError(f"expected RationalMatrix, got {type(other).__name__}")
        if other.prime != self.prime:
            raise PrimeMismatch(f"primes {self.prime} and {other.prime} differ")
        if other.n != self.n:
            raise DimensionError(f"dimensions {self.n} and {other.n} differ")

    def _new(self, rows) -> "RationalMatrix":
        return RationalMatrix(rows, self.prime)

    def __add__(self, other):
        self._check(other)
        return self._new([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return self._new([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self._new([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "RationalMatrix":
        c = _as_fraction(c, self.prime)
        return self._new([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other):
        self._check(other)
        cols = list(zip(*other.rows))
        return self._new([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            return self @ other
        return self.scale(other)

    __rmul__ = scale

    def apply(self, v: Sequence) -> Vector:
        v = [_as_fraction(x, self.prime) for x in v]
        if len(v) != self.n:
            raise DimensionError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "RationalMatrix":
        return self._new(list(zip(*self.rows)))

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.prime == other.prime and self.rows == other.rows

    def __hash__(self):
        return hash((self.rows, self.prime))

    def is_identity(self) -> bool:
        return all(a == (i == j) for i, r in enumerate(self.rows) for j, a in enumerate(r))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def commutes_with(self, other: "RationalMatrix") -> bool:
        return self @ other == other @ self

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"RationalMatrix([{body}], p={self.prime})"


def sup_norm(A: RationalMatrix) -> PMagnitude:
    """Operator norm for the max vector norm: the largest entry magnitude."""
    return magnitude_max(frac_abs(a, A.prime) for r in A.rows for a in r)


def _det_rows(rows) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        pk = m[k][k]
        det *= pk
        for i in range(k + 1, n):
            f = m[i][k]
            if f:
                f /= pk
                row_k = m[k]
                m[i] = [a - f * b for a, b in zip(m[i], row_k)]
    return det


def determinant(A: RationalMatrix) -> PadicScalar:
    return PadicScalar(_det_rows(A.rows), A.prime)


def _inverse_rows(rows):
    n = len(rows)
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        m[k], m[piv] = m[piv], m[k]
        pk = m[k][k]
        m[k] = [a / pk for a in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return [r[n:] for r in m]


def inverse_at(A: RationalMatrix) -> RationalMatrix:
    """Exact inverse; raises SingularMatrix when det(A) = 0."""
    return RationalMatrix(_inverse_rows(A.rows), A.prime)


def is_invertible(A: RationalMatrix) -> bool:
    return _det_rows(A.rows) != 0


def adjugate(A: RationalMatrix) -> RationalMatrix:
    n = A.n
    det = _det_rows(A.rows)
    if det != 0:
        inv = _inverse_rows(A.rows)
        return RationalMatrix([[det * a for a in r] for r in inv], A.prime)
    if n == 1:
        return RationalMatrix([[1]], A.prime)
    # singular: cofactors, adj[i][j] = (-1)^(i+j) * minor(j, i)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [A.rows[r][c] for c in range(n) if c != i] for r in range(n) if r != j
            ]
            row.append((-1) ** (i + j) * _det_rows(minor))
        out.append(row)
    return RationalMatrix(out, A.prime)


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial with exact rational coefficients, ascending order."""

    coeffs: tuple
    prime: int

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        check_prime(self.prime)

    @classmethod
    def from_roots(cls, roots, prime: int, lead=1) -> "RationalPoly":
        f = cls((lead,), prime)
        for r in roots:
            f = f * cls((-Fraction(r), 1), prime)
        return f

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly((other,), self.prime)
        if other.prime != self.prime:
            raise PrimeMismatch(f"primes {self.prime} and {other.prime} differ")
        return other

    def __add__(self, other):
        other = self._check(other)
        k = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(k)), self.prime)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(tuple(-c for c in self.coeffs), self.prime)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly((), self.prime)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(tuple(out), self.prime)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RationalPoly((1,), self.prime)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [Fraction(0)] * max(len(rem) - dq, 1)
        lead = other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                q[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return RationalPoly(tuple(q), self.prime), RationalPoly(tuple(rem[:dq]), self.prime)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        return RationalPoly(tuple(c / self.lead for c in self.coeffs), self.prime)

    def derivative(self) -> "RationalPoly":
        return RationalPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k), self.prime)

    def __call__(self, x) -> Fraction:
        if isinstance(x, PadicScalar):
            x = x.value
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def taylor_shift(self, c) -> "RationalPoly":
        """Coefficients of t -> f(c + t)."""
        c = Fraction(c.value if isinstance(c, PadicScalar) else c)
        cs = list(self.coeffs)
        n = len(cs)
        # repeated synthetic division by (t - c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += c * cs[j + 1]
        return RationalPoly(tuple(cs), self.prime)

    def substitute_scale(self, s) -> "RationalPoly":
        """Coefficients of u -> f(s*u)."""
        s = Fraction(s)
        return RationalPoly(tuple(c * s ** k for k, c in enumerate(self.coeffs)), self.prime)

    def integer_coeffs(self) -> list:
        """Primitive integer multiple of f, positive leading coefficient."""
        from math import gcd

        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for a in ints:
            g = gcd(g, a)
        ints = [a // g for a in ints]
        if ints[-1] < 0:
            ints = [-a for a in ints]
        return ints

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})" + ("" if k == 0 else "*x" if k == 1 else f"*x^{k}"))
        return " + ".join(terms)

    def to_json(self) -> list:
        from .padic import format_rational

        return [format_rational(c) for c in self.coeffs]


def poly_gcd(f: RationalPoly, g: RationalPoly) -> RationalPoly:
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def poly_eval(f: RationalPoly, lam: PadicScalar) -> PadicScalar:
    return PadicScalar(f(lam), f.prime)


def interpolate(xs, ys, prime: int) -> RationalPoly:
    """Exact Newton-form interpolation through (xs[i], ys[i])."""
    xs = [Fraction(x) for x in xs]
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = RationalPoly((coef[-1],), prime)
    for i in range(n - 2, -1, -1):
        poly = poly * RationalPoly((-xs[i], 1), prime) + coef[i]
    return poly


def _pencil_rows(A: RationalMatrix, M: RationalMatrix, t: Fraction):
    return [[a - t * m for a, m in zip(ra, rm)] for ra, rm in zip(A.rows, M.rows)]


def char_poly(A: RationalMatrix, M: RationalMatrix | None = None) -> RationalPoly:
    """det(A - lambda*M) as a polynomial in lambda (M defaults to I)."""
    if M is None:
        M = RationalMatrix.identity(A.n, A.prime)
    A._check(M)
    ts = list(range(A.n + 1))
    dets = [_det_rows(_pencil_rows(A, M, Fraction(t))) for t in ts]
    f = interpolate(ts, dets, A.prime)
    if f.is_zero():
        raise SingularPencil("det(A - lambda*M) is identically zero")
    return f


def _interp_points(d: RationalPoly, count: int):
    pts, k = [], 0
    while len(pts) < count:
        t = Fraction((k + 1) // 2 * (1 if k % 2 else -1))
        if d(t) != 0:
            pts.append(t)
        k += 1
    return pts


@dataclass(frozen=True)
class RationalFunctionMatrix:
    """Matrix of polynomials sharing one denominator polynomial."""

    numerators: tuple  # tuple[tuple[RationalPoly, ...], ...]
    denominator: RationalPoly

    @property
    def n(self) -> int:
        return len(self.numerators)

    @property
    def prime(self) -> int:
        return self.denominator.prime

    def entries(self):
        for row in self.numerators:
            yield from row

    def evaluate(self, lam) -> RationalMatrix | None:
        """Exact value at lambda, or None where the denominator vanishes."""
        d = self.denominator(lam)
        if d == 0:
            return None
        return RationalMatrix([[f(lam) / d for f in row] for row in self.numerators], self.prime)

    def norm_at(self, lam) -> PMagnitude:
        p = self.prime
        d = self.denominator(lam)
        if d == 0:
            return PMagnitude.infinite()
        top = magnitude_max(frac_abs(f(lam), p) for f in self.entries())
        return top / frac_abs(d, p)


@dataclass(frozen=True)
class SymbolicResolvent(RationalFunctionMatrix):
    """B * adj(A - lambda*M) * C over det(A - lambda*M)."""

    A: RationalMatrix = field(default=None, compare=False)
    M: RationalMatrix = field(default=None, compare=False)
    B: RationalMatrix = field(default=None, compare=False)
    C: RationalMatrix = field(default=None, compare=False)


def symbolic_resolvent(A, M=None, B=None, C=None) -> SymbolicResolvent:
    n, p = A.n, A.prime
    I = RationalMatrix.identity(n, p)
    M = I if M is None else M
    B = I if B is None else B
    C = I if C is None else C
    for X in (M, B, C):
        A._check(X)
    d = char_poly(A, M)
    ts = _interp_points(d, n)
    samples = []
    for t in ts:
        P = RationalMatrix(_pencil_rows(A, M, t), p)
        samples.append(B @ adjugate(P) @ C)
    nums = tuple(
        tuple(interpolate(ts, [S.rows[i][j] for S in samples], p) for j in range(n))
        for i in range(n)
    )
    return SymbolicResolvent(nums, d, A=A, M=M, B=B, C=C)


def structure_pencil(A, M, Binv, Cinv) -> RationalFunctionMatrix:
    """Cinv * (A - lambda*M) * Binv as a degree <= 1 polynomial matrix."""
    p = A.prime
    c0 = Cinv @ A @ Binv
    c1 = -(Cinv @ M @ Binv)
    nums = tuple(
        tuple(RationalPoly((c0.rows[i][j], c1.rows[i][j]), p) for j in range(A.n))
        for i in range(A.n)
    )
    return RationalFunctionMatrix(nums, RationalPoly((1,), p))
