"""Spectra of matrices and pencils inside Q_p.

Rational eigenvalues are found exactly. The remaining square-free factors are
searched for Q_p roots with the Newton polygon and Hensel lifting; such roots
are only ever reported to a stated p-adic precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from sympy import Symbol, discriminant, divisors
from sympy import Poly as _SymPoly

from .errors import HenselConditionFailed
from .linalg import RationalMatrix, RationalPoly, char_poly, poly_gcd
from .padic import (
    PadicScalar,
    PMagnitude,
    format_rational,
    frac_valuation,
    int_valuation,
)

DEFAULT_PRECISION = 64
_BRUTE_FORCE_LIMIT = 1 << 16
_X = Symbol("x")


# -- integer polynomial helpers (coefficient lists, ascending) -------------

def _ieval(cs, x: int, mod: int | None = None) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * x + c
        if mod:
            acc %= mod
    return acc


def _ideriv(cs):
    return [k * c for k, c in enumerate(cs) if k]


def _ival(n: int, p: int) -> float:
    return int_valuation(n, p) if n else float("inf")


def roots_mod_p(cs, p: int) -> list:
    """Roots in [0, p) of an integer polynomial reduced mod p."""
    red = [c % p for c in cs]
    while red and red[-1] == 0:
        red.pop()
    if not red:
        return list(range(p)) if p <= _BRUTE_FORCE_LIMIT else _all_residues_error(p)
    if len(red) == 1:
        return []
    if p <= _BRUTE_FORCE_LIMIT:
        return [x for x in range(p) if _ieval(red, x, p) == 0]
    poly = _SymPoly(list(reversed(red)), _X, modulus=p)
    roots = set()
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            roots.add(int(-b * pow(int(a) % p, -1, p)) % p)
    return sorted(roots)


def _all_residues_error(p):
    raise ValueError(f"polynomial vanishes mod {p}; not primitive")


def _primitive(cs, p: int):
    """Divide out the largest power of p dividing every coefficient."""
    v = min(_ival(c, p) for c in cs if c)
    return [c // p ** v for c in cs]


# -- public operations ------------------------------------------------------

def rational_roots(f: RationalPoly) -> list:
    """All rational roots of f with multiplicities, sorted by value.

    Uses the rational root theorem on the primitive integer form.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has every point as a root")
    cs = f.integer_coeffs()
    out = []
    zero_mult = 0
    while cs and cs[0] == 0:
        cs.pop(0)
        zero_mult += 1
    if zero_mult:
        out.append((PadicScalar(0, f.prime), zero_mult))
    if len(cs) > 1:
        candidates = set()
        for a in divisors(abs(cs[0])):
            for b in divisors(abs(cs[-1])):
                candidates.add(Fraction(a, b))
                candidates.add(Fraction(-a, b))
        g = RationalPoly(tuple(cs), f.prime)
        for r in sorted(candidates):
            # integer test: b^deg * g(a/b) == 0
            a, b = r.numerator, r.denominator
            deg = len(cs) - 1
            if sum(c * a ** k * b ** (deg - k) for k, c in enumerate(cs)) != 0:
                continue
            lin = RationalPoly((-r, 1), f.prime)
            m = 0
            while True:
                q, rem = divmod(g, lin)
                if not rem.is_zero():
                    break
                g, m = q, m + 1
            out.append((PadicScalar(r, f.prime), m))
    out.sort(key=lambda rm: rm[0].value)
    return out


def newton_polygon(f: RationalPoly) -> list:
    """Lower convex hull of (i, v_p(c_i)) as (slope, length) segments.

    A segment of slope s and length L accounts for L roots (in an algebraic
    closure) of valuation -s. Zero coefficients are skipped, so a root at 0
    simply shifts the hull's starting point.
    """
    p = f.prime
    pts = [(i, frac_valuation(c, p)) for i, c in enumerate(f.coeffs) if c != 0]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above segment hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return [
        (Fraction(y2 - y1, x2 - x1), x2 - x1)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    ]


def _hensel(cs, p: int, seed: int, N: int) -> int:
    d = _ideriv(cs)
    fd = _ieval(d, seed)
    if fd % p == 0:
        raise HenselConditionFailed(
            f"f'({seed}) is divisible by {p}",
            derivative_abs=PMagnitude.zero() if fd == 0 else PMagnitude.finite(-int_valuation(fd, p)),
        )
    if _ieval(cs, seed) % p:
        raise HenselConditionFailed(f"{seed} is not a root mod {p}")
    r, k = seed % p, 1
    while k < N:
        k = min(2 * k, N)
        mod = p ** k
        r = (r - _ieval(cs, r, mod) * pow(_ieval(d, r, mod), -1, mod)) % mod
    return r % p ** N


def hensel_lift(f: RationalPoly, seed: int, N: int) -> int:
    """The unique root of f in Z_p congruent to ``seed``, reduced mod p**N.

    Needs f(seed) = 0 mod p and f'(seed) != 0 mod p on the primitive integer
    form of f; otherwise HenselConditionFailed carries |f'(seed)|_p.
    """
    if N < 1:
        raise ValueError("precision N must be >= 1")
    return _hensel(f.integer_coeffs(), f.prime, seed, N)


def hensel_seeds(f: RationalPoly) -> list:
    """Residues mod p that are roots of f's primitive integer form."""
    return roots_mod_p(_primitive(f.integer_coeffs(), f.prime), f.prime)


def _zp_roots(cs, p: int, N: int, depth: int = 0):
    """Roots in Z_p of a primitive square-free integer polynomial.

    Yields residues mod p**N. Roots that are not simple mod p are refined by
    the substitution x = r + p*t.
    """
    if N <= 0:
        return
    d = _ideriv(cs)
    for r in roots_mod_p(cs, p):
        if _ieval(d, r) % p:
            yield _hensel(cs, p, r, N)
            continue
        if depth > 4 * N:
            continue
        # g(t) = f(r + p t) / p^k
        shifted = RationalPoly(tuple(cs), p).taylor_shift(r).substitute_scale(p)
        g = [int(c) for c in shifted.coeffs]
        if not any(g):
            continue
        g = _primitive(g, p)
        for t in _zp_roots(g, p, N - 1, depth + 1):
            yield (r + p * t) % p ** N


@dataclass(frozen=True)
class LiftedRoot:
    """A Q_p root p**valuation * u with the unit u known mod p**precision."""

    valuation: int
    residue: int
    precision: int
    multiplicity: int
    prime: int

    @property
    def approximation(self) -> Fraction:
        return Fraction(self.prime) ** self.valuation * self.residue

    @property
    def absolute_precision(self) -> int:
        """|root - approximation| <= p**(-absolute_precision)."""
        return self.valuation + self.precision

    def to_json(self) -> dict:
        return {
            "valuation": self.valuation,
            "residue": str(self.residue),
            "precision": self.precision,
            "multiplicity": self.multiplicity,
            "approximation": format_rational(self.approximation),
        }


def squarefree_decomposition(f: RationalPoly) -> list:
    """Yun's algorithm: [(g_m, m)] with f = lead * prod g_m**m, g_m monic."""
    out = []
    if f.degree < 1:
        return out
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f // a
    c = fp // a
    d = c - b.derivative()
    m = 1
    while b.degree >= 1:
        g = poly_gcd(b, d)
        if g.degree >= 1:
            out.append((g, m))
        b = b // g
        c = d // g
        d = c - b.derivative()
        m += 1
    return out


def padic_roots(g: RationalPoly, N: int = DEFAULT_PRECISION, multiplicity: int = 1) -> list:
    """Nonzero Q_p roots of a square-free polynomial, as LiftedRoot records."""
    p = g.prime
    cs = g.integer_coeffs()
    while cs and cs[0] == 0:
        cs.pop(0)
    if len(cs) < 2:
        return []
    base = RationalPoly(tuple(cs), p)
    found = []
    for slope, _length in newton_polygon(base):
        if slope.denominator != 1:
            continue
        v = -int(slope)
        # roots of valuation v: x = p^v u with u a unit
        scaled = base.substitute_scale(Fraction(p) ** v)
        us = _primitive(scaled.integer_coeffs(), p)
        # roots that agree mod p^k for k up to v_p(disc) need extra digits to separate
        disc = int(discriminant(_SymPoly(list(reversed(us)), _X)))
        work = N + (int_valuation(disc, p) if disc else 0) + 1
        for u in sorted({w % p ** N for w in _zp_roots(us, p, work)}):
            if u % p == 0:
                continue
            if _ival(_ieval(us, u), p) < N:
                raise AssertionError("lifted root failed its residue check")
            found.append(LiftedRoot(v, u, N, multiplicity, p))
    return found


@dataclass(frozen=True)
class SpectrumResult:
    """Exact and p-adically approximated eigenvalues of a pencil.

    ``unresolved_factors`` holds the rational-root-free square-free parts
    (g, m) of det(A - lambda*M). Their Q_p roots appear in ``lifted_points``;
    their other roots lie outside Q_p and are not spectrum points.
    """

    rational_points: tuple  # ((PadicScalar, multiplicity), ...)
    lifted_points: tuple
    unresolved_factors: tuple  # ((RationalPoly, multiplicity), ...)
    infinite_eigenvalue: bool
    char_poly: RationalPoly

    @property
    def points(self) -> set:
        return {r for r, _ in self.rational_points}

    def degree_accounted(self) -> int:
        return sum(m for _, m in self.rational_points) + sum(
            g.degree * m for g, m in self.unresolved_factors
        )

    def to_json(self) -> dict:
        return {
            "rational_points": [str(r) for r, _ in self.rational_points],
            "multiplicities": [m for _, m in self.rational_points],
            "lifted_points": [r.to_json() for r in self.lifted_points],
            "unresolved_factors": [
                {"coefficients": g.to_json(), "multiplicity": m}
                for g, m in self.unresolved_factors
            ],
            "infinite_eigenvalue": self.infinite_eigenvalue,
            "char_poly": self.char_poly.to_json(),
        }


def polynomial_spectrum(f: RationalPoly, n: int | None = None, N: int = DEFAULT_PRECISION) -> SpectrumResult:
    rat = rational_roots(f)
    rest = f
    for r, m in rat:
        rest = rest // RationalPoly((-r.value, 1), f.prime) ** m
    unresolved, lifted = [], []
    for g, m in squarefree_decomposition(rest):
        unresolved.append((g, m))
        lifted.extend(padic_roots(g, N, m))
    lifted.sort(key=lambda r: (r.valuation, r.residue))
    return SpectrumResult(
        rational_points=tuple(rat),
        lifted_points=tuple(lifted),
        unresolved_factors=tuple(unresolved),
        infinite_eigenvalue=n is not None and f.degree < n,
        char_poly=f,
    )


def spectrum(A: RationalMatrix, M: RationalMatrix | None = None, N: int = DEFAULT_PRECISION) -> SpectrumResult:
    """sigma(A, M); M defaults to the identity. Raises SingularPencil."""
    return polynomial_spectrum(char_poly(A, M), A.n, N)
