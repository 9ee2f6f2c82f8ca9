"""Theorem verification campaigns over deterministic lambda grids.

Each campaign returns a CampaignReport whose ``counterexamples`` list is empty
exactly when every pointwise implication held.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CommutativityViolated, SingularStructure
from .linalg import RationalMatrix, determinant, is_invertible
from .padic import Epsilon, format_rational, p_power
from .perturbation import random_rational, trial_rng, union_equality_campaign, verify_forward_inclusion
from .pseudospectra import (
    Family,
    affine_image_check,
    lambda_sigma_rescale_check,
    member,
    reciprocal_check,
    similarity_sandwich_check,
)
from .spectra import rational_roots

THEOREMS = (
    "perturbation-union",
    "forward-inclusion",
    "rescale",
    "sandwich",
    "reciprocal",
    "affine",
    "det-ab-ba",
    "nesting",
)


@dataclass
class CampaignReport:
    theorem: str
    seed: int
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "seed": self.seed,
            "checked": self.checked,
            "ok": self.ok,
            "counterexamples": self.counterexamples,
            "details": self.details,
        }


def lambda_grid(family: Family, count: int, seed: int = 0) -> list:
    """Deterministic mix of eigenvalues, points p-adically close to them, and generic rationals."""
    p = family.prime
    rng = random.Random(f"grid/{seed}")
    anchors = [r.value for r, _ in rational_roots(family.resolvent.denominator)] or [Fraction(0)]
    out = list(dict.fromkeys(anchors))[:count]
    seen = set(out)
    while len(out) < count:
        if rng.random() < 0.6:
            lam = rng.choice(anchors) + p_power(p, rng.randint(-1, 6)) * random_rational(rng, 40, 6)
        else:
            lam = random_rational(rng, 200, 30)
        if lam not in seen:
            seen.add(lam)
            out.append(lam)
    return out


def _check_grid(report: CampaignReport, grid, fn):
    for lam in grid:
        report.checked += 1
        if not fn(lam):
            report.counterexamples.append({"lambda": format_rational(lam)})


def _random_invertible(rng: random.Random, n: int, p: int) -> RationalMatrix:
    while True:
        X = RationalMatrix([[random_rational(rng, 9, 4) for _ in range(n)] for _ in range(n)], p)
        if is_invertible(X):
            return X


def _eps(problem, eps):
    if eps is not None:
        return Epsilon.of(eps)
    if problem.epsilon is not None:
        return problem.epsilon
    return Epsilon(Fraction(1, problem.prime))


def run_theorem(theorem: str, problem, trials: int = 100, seed: int = 0, eps=None) -> CampaignReport:
    """Run one named campaign on a problem; ``trials`` is the grid size or pair count."""
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    eps = _eps(problem, eps)
    p = problem.prime
    report = CampaignReport(theorem, seed)
    if theorem == "det-ab-ba":
        n = problem.dimension
        I = RationalMatrix.identity(n, p)
        for t in range(trials):
            rng = trial_rng(seed, t)
            X = RationalMatrix([[random_rational(rng) for _ in range(n)] for _ in range(n)], p)
            Y = RationalMatrix([[random_rational(rng) for _ in range(n)] for _ in range(n)], p)
            report.checked += 1
            if determinant(I + X @ Y) != determinant(I + Y @ X):
                report.counterexamples.append({"trial": t})
        return report

    family = problem.build_family()
    if theorem == "forward-inclusion":
        fw = verify_forward_inclusion(family, eps, trials, seed)
        report.checked = fw.checked_eigenvalues
        report.counterexamples = fw.counterexamples
        report.details = {
            "checked_perturbations": fw.checked_perturbations,
            "skipped_inadmissible": fw.skipped_inadmissible,
        }
        return report
    grid = lambda_grid(family, trials, seed)
    if theorem == "perturbation-union":
        un = union_equality_campaign(family, grid, eps, trials=10, seed=seed)
        fw = verify_forward_inclusion(family, eps, trials, seed)
        report.checked = len(un.rows) + fw.checked_eigenvalues
        report.counterexamples = un.counterexamples + fw.counterexamples
        report.details = {
            "grid_points": len(un.rows),
            "members": sum(r["verdict"] != "outside" for r in un.rows),
            "checked_perturbations": fw.checked_perturbations,
            "checked_eigenvalues": fw.checked_eigenvalues,
        }
        return report
    if theorem == "nesting":
        small = Epsilon(eps.value / p)

        def nested(lam):
            return (not member(family, lam, small).verdict.is_member) or member(family, lam, eps).verdict.is_member

        _check_grid(report, grid, nested)
        return report

    if not family.M.is_identity():
        raise ValueError(f"{theorem} is stated for M = I only")
    A, B, C = family.A, family.B, family.C
    if theorem == "affine":
        rng = random.Random(f"affine/{seed}")

        def affine(lam):
            beta = Fraction(0)
            while beta == 0:
                beta = random_rational(rng)
            return affine_image_check(A, random_rational(rng), beta, lam, eps)

        _check_grid(report, grid, affine)
        return report
    if not (is_invertible(B) and is_invertible(C)):
        raise SingularStructure("B and C must be invertible for this theorem")
    if theorem == "rescale":
        grid = [lam for lam in grid if not family.in_spectrum(lam)] or grid
        _check_grid(report, grid, lambda lam: lambda_sigma_rescale_check(A, B, C, lam, eps))
    elif theorem == "sandwich":
        U = problem.U
        if U is None:
            U = _random_invertible(random.Random(f"sandwich/{seed}"), A.n, p)
            if not (U.commutes_with(B) and U.commutes_with(C)):
                raise CommutativityViolated("no commuting U supplied")
        _check_grid(report, grid, lambda lam: similarity_sandwich_check(A, B, C, U, lam, eps))
    elif theorem == "reciprocal":
        grid = [lam for lam in grid if lam != 0]
        _check_grid(report, grid, lambda lam: reciprocal_check(A, B, C, lam, eps))
    return report
