"""Certified ball-tree descriptions of pseudospectral regions in Q_p.

A ball is certified when the family's quantity is bounded on it from both
sides by the ultrametric Taylor-shift argument: if
``max_{k>=1} |c_k| p^{-rk} < |c_0|`` for f(center + t), then |f| = |c_0| on the
whole ball, and in any case ``sup |f| <= max_k |c_k| p^{-rk}``.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import RationalPoly
from .padic import (
    Epsilon,
    PMagnitude,
    format_rational,
    frac_abs,
    frac_valuation,
    magnitude_compare_vs_inv_eps,
    magnitude_max,
    p_power,
    unit_residue,
)
from .pseudospectra import Family
from .spectra import newton_polygon, polynomial_spectrum


def canonical_center(c: Fraction, r: int, p: int) -> Fraction:
    """Representative of the ball |x - c| <= p^-r with p-adic digits below r only."""
    c = Fraction(c)
    if c == 0:
        return c
    v = frac_valuation(c, p)
    if v >= r:
        return Fraction(0)
    u = c / p_power(p, v)
    return p_power(p, v) * unit_residue(u, p, r - v)


@dataclass(frozen=True)
class Ball:
    """Closed ball {x in Q_p : |x - center| <= p**(-radius_exp)}."""

    center: Fraction
    radius_exp: int
    prime: int

    def __post_init__(self):
        object.__setattr__(self, "center", canonical_center(self.center, self.radius_exp, self.prime))

    def contains(self, x) -> bool:
        d = Fraction(x) - self.center
        return d == 0 or frac_valuation(d, self.prime) >= self.radius_exp

    def contains_ball(self, other: "Ball") -> bool:
        return other.radius_exp >= self.radius_exp and self.contains(other.center)

    def disjoint(self, other: "Ball") -> bool:
        return not (self.contains_ball(other) or other.contains_ball(self))

    def children(self) -> list:
        step = p_power(self.prime, self.radius_exp)
        return [Ball(self.center + k * step, self.radius_exp + 1, self.prime) for k in range(self.prime)]

    @property
    def measure(self) -> Fraction:
        return p_power(self.prime, -self.radius_exp)

    def random_point(self, rng: random.Random, span: int = 10 ** 6) -> Fraction:
        p = self.prime
        den = rng.randint(1, 1000)
        while den % p == 0:
            den += 1
        return self.center + p_power(p, self.radius_exp) * Fraction(rng.randint(-span, span), den)

    def __str__(self):
        return f"B({format_rational(self.center)}, {self.prime}^-{self.radius_exp})"


def _term_magnitudes(f: RationalPoly, ball: Ball) -> list:
    """|c_k| * p^(-r k) for f(center + t) = sum c_k t^k."""
    shifted = f.taylor_shift(ball.center)
    out = []
    for k, c in enumerate(shifted.coeffs):
        m = frac_abs(c, ball.prime)
        out.append(m if m.is_zero else PMagnitude.finite(m.exponent - ball.radius_exp * k))
    return out


def constancy_certificate(f: RationalPoly, ball: Ball):
    """|f| on the ball when it is provably constant, else None.

    The zero polynomial is constant (magnitude zero).
    """
    if f.is_zero():
        return PMagnitude.zero()
    terms = _term_magnitudes(f, ball)
    if magnitude_max(terms[1:]) < terms[0]:
        return terms[0]
    return None


def magnitude_bounds(f: RationalPoly, ball: Ball):
    """(lo, hi) with lo <= |f(x)| <= hi for every x in the ball."""
    if f.is_zero():
        return PMagnitude.zero(), PMagnitude.zero()
    terms = _term_magnitudes(f, ball)
    hi = magnitude_max(terms)
    lo = terms[0] if magnitude_max(terms[1:]) < terms[0] else PMagnitude.zero()
    return lo, hi


def _matrix_bounds(entries, ball: Ball):
    lo, hi = PMagnitude.zero(), PMagnitude.zero()
    for f in entries:
        a, b = magnitude_bounds(f, ball)
        lo, hi = max(lo, a), max(hi, b)
    return lo, hi


class LeafClass(enum.Enum):
    MEMBER = "member"
    NON_MEMBER = "non_member"
    CONTAINS_SPECTRUM_POINT = "contains_spectrum_point"
    UNRESOLVED = "unresolved"
    NOT_CONSTANT = "not_constant"  # classify_ball only: caller must subdivide


class SpectrumLocator:
    """Answers 'does this ball contain a Q_p eigenvalue?' exactly.

    Rational eigenvalues are tested directly; irrational Q_p eigenvalues are
    tested through Hensel approximations, re-lifted when a ball is finer than
    the current precision.
    """

    def __init__(self, denominator: RationalPoly, precision: int = 64):
        self.denominator = denominator
        self._precision = 0
        self._rational = []
        self._lifted = []
        if denominator.degree >= 1:
            self._refresh(precision)

    def _refresh(self, precision: int):
        res = polynomial_spectrum(self.denominator, None, precision)
        self._rational = [r.value for r, _ in res.rational_points]
        self._lifted = list(res.lifted_points)
        self._precision = precision

    def contains(self, ball: Ball) -> bool:
        if any(ball.contains(r) for r in self._rational):
            return True
        for root in self._lifted:
            if root.absolute_precision < ball.radius_exp:
                self._refresh(max(2 * self._precision, ball.radius_exp - root.valuation + 8))
                return self.contains(ball)
            if ball.contains(root.approximation):
                return True
        return False


@dataclass(frozen=True)
class BallClassification:
    leaf_class: LeafClass
    q_lo: PMagnitude | None = None
    q_hi: PMagnitude | None = None

    def certificate(self):
        if self.q_lo is None:
            return None
        return {"q_lo": self.q_lo.to_json(), "q_hi": self.q_hi.to_json()}


def classify_ball(family: Family, ball: Ball, eps, locator: SpectrumLocator | None = None) -> BallClassification:
    eps = Epsilon.of(eps)
    p = family.prime
    R = family.resolvent
    locator = locator or SpectrumLocator(R.denominator)
    if locator.contains(ball):
        return BallClassification(LeafClass.CONTAINS_SPECTRUM_POINT)
    den = constancy_certificate(R.denominator, ball)
    if den is None:
        return BallClassification(LeafClass.NOT_CONSTANT)
    lo, hi = _matrix_bounds(R.entries(), ball)
    if family.kind.is_condition:
        klo, khi = _matrix_bounds(family.scaled_pencil.entries(), ball)
        lo, hi = lo * klo, hi * khi
    q_lo, q_hi = lo / den, hi / den
    if magnitude_compare_vs_inv_eps(q_lo, eps, p) > 0:
        return BallClassification(LeafClass.MEMBER, q_lo, q_hi)
    if magnitude_compare_vs_inv_eps(q_hi, eps, p) <= 0:
        return BallClassification(LeafClass.NON_MEMBER, q_lo, q_hi)
    return BallClassification(LeafClass.NOT_CONSTANT)


@dataclass
class RegionNode:
    ball: Ball
    depth: int
    leaf_class: LeafClass | None = None
    certificate: dict | None = None
    children: list = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self):
        if self.is_leaf:
            yield self
        else:
            for c in self.children:
                yield from c.leaves()

    def to_json(self) -> dict:
        out = {
            "center": format_rational(self.ball.center),
            "radius_exp": self.ball.radius_exp,
            "class": self.leaf_class.value if self.is_leaf else "split",
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass
class RegionTree:
    root: RegionNode
    eps: Epsilon
    max_depth: int

    def leaves(self) -> list:
        return list(self.root.leaves())

    def to_json(self) -> dict:
        return {"epsilon": str(self.eps), "max_depth": self.max_depth, "tree": self.root.to_json()}


def explore(family: Family, root: Ball, eps, max_depth: int) -> RegionTree:
    """Breadth-first p-ary subdivision with certified leaves.

    Balls containing an eigenvalue are split until ``max_depth`` and then kept
    as CONTAINS_SPECTRUM_POINT leaves; other balls still uncertified at
    ``max_depth`` become UNRESOLVED.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    if root.prime != family.prime:
        raise ValueError("root ball and family use different primes")
    eps = Epsilon.of(eps)
    locator = SpectrumLocator(family.resolvent.denominator)
    top = RegionNode(root, 0)
    level = [top]
    while level:
        nxt = []
        for node in level:
            cls = classify_ball(family, node.ball, eps, locator)
            if cls.leaf_class in (LeafClass.MEMBER, LeafClass.NON_MEMBER):
                node.leaf_class, node.certificate = cls.leaf_class, cls.certificate()
            elif node.depth >= max_depth:
                node.leaf_class = (
                    LeafClass.CONTAINS_SPECTRUM_POINT
                    if cls.leaf_class is LeafClass.CONTAINS_SPECTRUM_POINT
                    else LeafClass.UNRESOLVED
                )
            else:
                node.children = [RegionNode(b, node.depth + 1) for b in node.ball.children()]
                nxt.extend(node.children)
        level = nxt
    return RegionTree(top, eps, max_depth)


def outer_bound_exponent(family: Family, eps):
    """An m such that every lambda with |lambda| > p**m is Outside, or None.

    Past the largest root magnitude of det(A - lambda M) its leading term
    dominates, so the quantity is bounded by a max of p-powers whose exponents
    are linear in s = log_p|lambda|; if all of them decrease, the threshold is
    found by stepping s upward.
    """
    eps = Epsilon.of(eps)
    p = family.prime
    R = family.resolvent
    d = R.denominator
    nums = [f for f in R.entries() if not f.is_zero()]
    if not nums:
        return 0
    if d.degree < 1:
        return None
    slopes = [s for s, _ in newton_polygon(d)]
    start = max(0, math.ceil(max(slopes)) if slopes else 0)
    lead = frac_abs(d.lead, p).exponent
    # (intercept, slope) pairs of the exponent of each term bound, as functions of s
    lines = []
    for f in nums:
        for k, c in enumerate(f.coeffs):
            if c:
                lines.append((frac_abs(c, p).exponent - lead, k - d.degree))
    if family.kind.is_condition:
        klines = []
        for f in family.scaled_pencil.entries():
            for k, c in enumerate(f.coeffs):
                if c:
                    klines.append((frac_abs(c, p).exponent, k))
        lines = [(a + b, s + t) for a, s in lines for b, t in klines]
    if any(s >= 0 for _, s in lines):
        return None
    m = start
    while True:
        s = m + 1
        worst = max(a + sl * s for a, sl in lines)
        if magnitude_compare_vs_inv_eps(PMagnitude.finite(worst), eps, p) <= 0:
            return m
        m += 1
