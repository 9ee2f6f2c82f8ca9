"""Constructive side of the perturbation-union theorems.

Given a member lambda, build a rank-one D with ``A + C D B - lambda M``
singular and ``||D||`` under the family's bound; conversely, sample admissible
D and check that every rational eigenvalue they produce is a member.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotInPseudoRegion, ZeroVector
from .linalg import RationalMatrix, _det_rows, char_poly, inverse_at, sup_norm, vec_norm
from .padic import Epsilon, PMagnitude, format_rational, frac_abs
from .pseudospectra import (
    Family,
    Verdict,
    _frac,
    _max_column,
    member,
    normalize_vector,
)
from .spectra import rational_roots


@dataclass(frozen=True)
class IngletonFunctional:
    """phi(y) = scale * y[index], with phi(x) = 1 and ||phi|| = 1/||x||."""

    index: int
    scale: Fraction
    prime: int

    def __call__(self, y) -> Fraction:
        return self.scale * Fraction(y[self.index])

    @property
    def norm(self) -> PMagnitude:
        # sup over basis vectors e_j of |phi(e_j)|
        return frac_abs(self.scale, self.prime)

    def row(self, n: int) -> tuple:
        return tuple(self.scale if j == self.index else Fraction(0) for j in range(n))


def ingleton_functional(x, prime: int) -> IngletonFunctional:
    """Norming functional for x: first coordinate of maximal magnitude."""
    x = [Fraction(a) for a in x]
    norm = vec_norm(x, prime)
    if norm.is_zero:
        raise ZeroVector("x must be nonzero")
    i = next(i for i, a in enumerate(x) if frac_abs(a, prime) == norm)
    phi = IngletonFunctional(i, 1 / x[i], prime)
    assert phi(x) == 1 and phi.norm == norm.inverse()
    return phi


@dataclass(frozen=True)
class RankOnePerturb:
    """D y = phi(y) * column; D = 0 when lambda is already an eigenvalue."""

    column: tuple
    functional: IngletonFunctional | None
    D: RationalMatrix
    lam: Fraction
    bound: Fraction  # strict upper bound on ||D|| (as an exact rational)

    @property
    def norm(self) -> PMagnitude:
        return sup_norm(self.D)


def assemble(column, phi: IngletonFunctional, prime: int) -> RationalMatrix:
    n = len(column)
    row = phi.row(n)
    return RationalMatrix([[c * r for r in row] for c in column], prime)


def perturbation_bound(family: Family, lam, eps) -> Fraction:
    """Strict bound on ||D||: eps, or eps * ||K(lambda)|| for condition families."""
    eps = Epsilon.of(eps).value
    if not family.kind.is_condition:
        return eps
    p = family.prime
    return eps * family.scaled_pencil.norm_at(_frac(lam, p)).value(p)


def perturbed_pencil(family: Family, D: RationalMatrix, lam) -> RationalMatrix:
    """A + C D B - lambda M."""
    return family.A + family.C @ D @ family.B - family.M.scale(_frac(lam, family.prime))


def certificate_holds(family: Family, w: RankOnePerturb) -> bool:
    """Strict norm bound and exact singularity, from stored fields alone."""
    p = family.prime
    norm_ok = w.norm.value(p) < w.bound
    rank_ok = w.functional is None or sup_norm(w.D) == vec_norm(w.column, p) * w.functional.norm
    return norm_ok and rank_ok and _det_rows(perturbed_pencil(family, w.D, w.lam).rows) == 0


def rank_one_witness(family: Family, lam, eps) -> RankOnePerturb:
    """Rank-one D certifying that lambda lies in the perturbation union.

    With S = B (A - lambda M)^{-1} C pick a column e_j of maximal norm, set
    y = S e_j = c z with ||z|| = 1 and D = -(e_j / c) phi_z^T.  Then
    (A + C D B - lambda M)(A - lambda M)^{-1} C e_j = 0 and ||D|| = 1/||S||.
    When B, C are invertible, -e_j/c equals -C^{-1}(A - lambda M)B^{-1} z.
    """
    eps = Epsilon.of(eps)
    p = family.prime
    lam = _frac(lam, p)
    verdict = member(family, lam, eps).verdict
    bound = perturbation_bound(family, lam, eps) if verdict is not Verdict.IN_SPECTRUM else eps.value
    if verdict is Verdict.IN_SPECTRUM:
        w = RankOnePerturb((Fraction(0),) * family.n, None, RationalMatrix.zeros(family.n, p), lam, bound)
    elif verdict is Verdict.IN_PSEUDO_REGION:
        S = family.resolvent.evaluate(lam)
        j = _max_column(S)
        z, c = normalize_vector(S.column(j), p)
        phi = ingleton_functional(z, p)
        column = tuple(-Fraction(int(i == j)) / c for i in range(family.n))
        w = RankOnePerturb(column, phi, assemble(column, phi, p), lam, bound)
    else:
        raise NotInPseudoRegion(f"lambda={lam} is outside")
    if not certificate_holds(family, w):
        raise AssertionError("rank-one witness failed verification")
    return w


def det_identity_holds(family: Family, D: RationalMatrix, lam) -> bool:
    """det(I + C D B R) == det(I + D B R C), R = (A - lambda M)^{-1}."""
    R = inverse_at(family.pencil_at(lam))
    I = RationalMatrix.identity(family.n, family.prime)
    lhs = _det_rows((I + family.C @ D @ family.B @ R).rows)
    rhs = _det_rows((I + D @ family.B @ R @ family.C).rows)
    return lhs == rhs


# -- sampling ----------------------------------------------------------------

def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}/{trial}")


def random_rational(rng: random.Random, span: int = 9, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def max_exponent_below(bound: Fraction, p: int) -> int:
    """Largest integer e with p**e < bound."""
    e = 0
    while Fraction(p) ** e >= bound:
        e -= 1
    while Fraction(p) ** (e + 1) < bound:
        e += 1
    return e


def scale_to_magnitude(D: RationalMatrix, exponent: int, bound: Fraction | None = None) -> RationalMatrix:
    """Rescale D by a power of p so that ||D|| = p**exponent exactly.

    Refuses (ValueError) if p**exponent would not be strictly below ``bound``.
    """
    p = D.prime
    if bound is not None and Fraction(p) ** exponent >= bound:
        raise ValueError(f"|D| = {p}^{exponent} is not below the bound {bound}")
    norm = sup_norm(D)
    if norm.is_zero:
        raise ZeroVector("cannot rescale the zero matrix")
    # |p^k| = p^-k, so multiply by p^(norm - exponent)
    return D.scale(Fraction(p) ** (norm.exponent - exponent))


def sample_perturbation(rng: random.Random, n: int, p: int, exponent: int, rank: int = 2) -> RationalMatrix:
    """Random D = sum of ``rank`` outer products with ||D|| = p**exponent."""
    while True:
        rows = [[Fraction(0)] * n for _ in range(n)]
        for _ in range(min(rank, n)):
            u = [random_rational(rng) for _ in range(n)]
            v = [random_rational(rng) for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    rows[i][j] += u[i] * v[j]
        D = RationalMatrix(rows, p)
        if not D.is_zero():
            return scale_to_magnitude(D, exponent)


def planted_perturbation(family: Family, mu: Fraction, rng: random.Random):
    """Some rank-one D making mu an eigenvalue of (A + C D B, M), or None.

    The direction u is random, so ||D|| is usually above the minimum.
    """
    S = family.resolvent.evaluate(mu)
    if S is None:
        return None
    p = family.prime
    for _ in range(4):
        u = [random_rational(rng) for _ in range(family.n)]
        y = S.apply(u)
        if vec_norm(y, p).is_zero:
            continue
        phi = ingleton_functional(y, p)
        return assemble(tuple(-a for a in u), phi, p)
    return None


def _eigen_candidates(family: Family, D: RationalMatrix):
    try:
        f = char_poly(family.A + family.C @ D @ family.B, family.M)
    except ArithmeticError:
        return None
    return [r.value for r, _ in rational_roots(f)]


@dataclass
class ForwardReport:
    family: str
    eps: str
    seed: int
    trials: int
    checked_perturbations: int = 0
    checked_eigenvalues: int = 0
    skipped_inadmissible: int = 0
    counterexamples: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "epsilon": self.eps,
            "seed": self.seed,
            "trials": self.trials,
            "checked_perturbations": self.checked_perturbations,
            "checked_eigenvalues": self.checked_eigenvalues,
            "skipped_inadmissible": self.skipped_inadmissible,
            "counterexamples": self.counterexamples,
            "rows": self.rows,
        }


def _matrix_json(D: RationalMatrix):
    return [[format_rational(a) for a in r] for r in D.rows]


def _nearby_point(family: Family, rng: random.Random, anchors) -> Fraction:
    p = family.prime
    if anchors and rng.random() < 0.8:
        a = rng.choice(anchors)
        return a + Fraction(p) ** rng.randint(0, 5) * Fraction(rng.randint(1, 50), rng.randint(1, 7) * p + 1)
    return random_rational(rng, 30, 5)


def verify_forward_inclusion(family: Family, eps, trials: int = 50, seed: int = 0) -> ForwardReport:
    """Every rational eigenvalue of an admissible perturbed pencil is a member.

    Even trials draw a random rank-<=2 D scaled strictly below the bound; odd
    trials plant an eigenvalue near the spectrum with a random rank-one D.
    For condition families the bound depends on the eigenvalue and is checked
    per eigenvalue.
    """
    eps = Epsilon.of(eps)
    p = family.prime
    report = ForwardReport(family.kind.value, str(eps), seed, trials)
    anchors = [r.value for r, _ in rational_roots(family.resolvent.denominator)]
    for t in range(trials):
        rng = trial_rng(seed, t)
        if t % 2 == 0:
            exp = max_exponent_below(eps.value, p)
            exp += rng.randint(-2, 2) if family.kind.is_condition else -rng.randint(0, 2)
            D = sample_perturbation(rng, family.n, p, exp)
            mode = "random"
        else:
            D = planted_perturbation(family, _nearby_point(family, rng, anchors), rng)
            mode = "planted"
            if D is None:
                continue
        eigs = _eigen_candidates(family, D)
        if eigs is None:
            continue
        Dn = sup_norm(D)
        checked_any = False
        for lam in eigs:
            if Dn.value(p) >= perturbation_bound(family, lam, eps):
                report.skipped_inadmissible += 1
                continue
            v = member(family, lam, eps)
            checked_any = True
            report.checked_eigenvalues += 1
            row = {
                "trial": t,
                "mode": mode,
                "lambda": format_rational(lam),
                "verdict": v.verdict.value,
                "D": _matrix_json(D),
                "norm_exponent": Dn.exponent,
            }
            report.rows.append(row)
            if not v.verdict.is_member:
                report.counterexamples.append(row)
        report.checked_perturbations += checked_any
    return report


@dataclass
class UnionReport:
    family: str
    eps: str
    seed: int
    rows: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def count(self, verdict: Verdict) -> int:
        return sum(r["verdict"] == verdict.value for r in self.rows)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "epsilon": self.eps,
            "seed": self.seed,
            "rows": self.rows,
            "counterexamples": self.counterexamples,
        }


def union_equality_campaign(family: Family, grid, eps, trials: int = 10, seed: int = 0) -> UnionReport:
    """Two-sided certificates for the perturbation-union equality on a grid.

    Members get a verified rank-one witness (D = 0 on the spectrum). For an
    outside point the smallest rank-one candidate has ||D|| = 1/||S|| >= bound,
    and ``trials`` sampled admissible D leave A + C D B - lambda M invertible.
    """
    eps = Epsilon.of(eps)
    p = family.prime
    report = UnionReport(family.kind.value, str(eps), seed)
    for idx, lam in enumerate(grid):
        lam = _frac(lam, p)
        v = member(family, lam, eps)
        bound = perturbation_bound(family, lam, eps) if v.verdict is not Verdict.IN_SPECTRUM else eps.value
        row = {"lambda": format_rational(lam), "verdict": v.verdict.value, "norm": v.norm_value.to_json()}
        if v.verdict.is_member:
            w = rank_one_witness(family, lam, eps)
            row.update(D=_matrix_json(w.D), norm_exponent=w.norm.to_json(), det_check=True)
        else:
            # the quantity is <= 1/eps, so the best rank-one D has norm >= the bound
            S = family.resolvent.evaluate(lam)
            smallest = sup_norm(S).inverse()
            minimal_ok = smallest.value(p) >= bound
            rng = trial_rng(seed, idx)
            captured = 0
            exp = max_exponent_below(bound, p)
            for _ in range(trials):
                D = sample_perturbation(rng, family.n, p, exp - rng.randint(0, 2))
                if _det_rows(perturbed_pencil(family, D, lam).rows) == 0:
                    captured += 1
            row.update(minimal_norm=smallest.to_json(), minimal_inadmissible=minimal_ok, captured=captured)
            if captured or not minimal_ok:
                report.counterexamples.append(row)
        report.rows.append(row)
    return report
