"""Pointwise membership oracles for the pseudospectrum families.

Each family reduces to one exact quantity at lambda:

* resolvent families (pseudo, structured, pencil-structured):
  ``||B (A - lambda M)^{-1} C||``
* condition families (condition, structured-condition):
  ``||C^{-1} (A - lambda I) B^{-1}|| * ||B (A - lambda I)^{-1} C||``

and lambda is a member when lambda is an eigenvalue or the quantity strictly
exceeds 1/eps.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import (
    CommutativityViolated,
    NotInPseudoRegion,
    SingularMatrix,
    SingularStructure,
)
from .linalg import (
    RationalFunctionMatrix,
    RationalMatrix,
    SymbolicResolvent,
    inverse_at,
    structure_pencil,
    sup_norm,
    symbolic_resolvent,
    vec_norm,
)
from .padic import (
    Epsilon,
    PadicScalar,
    PMagnitude,
    magnitude_compare_vs_inv_eps,
    p_power,
)


class FamilyKind(enum.Enum):
    PSEUDO = "pseudo"
    CONDITION_PSEUDO = "condition"
    STRUCTURED = "structured"
    STRUCTURED_CONDITION = "structured-condition"
    PENCIL_STRUCTURED = "pencil-structured"

    @property
    def is_condition(self) -> bool:
        return self in (FamilyKind.CONDITION_PSEUDO, FamilyKind.STRUCTURED_CONDITION)


class Verdict(enum.Enum):
    IN_SPECTRUM = "in_spectrum"
    IN_PSEUDO_REGION = "in_pseudo_region"
    OUTSIDE = "outside"

    @property
    def is_member(self) -> bool:
        return self is not Verdict.OUTSIDE


def _invert_structure(X: RationalMatrix, name: str) -> RationalMatrix:
    try:
        return inverse_at(X)
    except SingularMatrix:
        raise SingularStructure(f"{name} is singular") from None


@dataclass(frozen=True)
class Family:
    """One pseudospectrum family bound to its defining matrices.

    M is fixed to I except for the pencil-structured family; B and C are fixed
    to I for the unstructured families.
    """

    kind: FamilyKind
    A: RationalMatrix
    M: RationalMatrix = None
    B: RationalMatrix = None
    C: RationalMatrix = None

    def __post_init__(self):
        kind = FamilyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        A = self.A
        I = RationalMatrix.identity(A.n, A.prime)
        for name in ("M", "B", "C"):
            X = getattr(self, name)
            if X is None:
                object.__setattr__(self, name, I)
            else:
                A._check(X)
        if kind is not FamilyKind.PENCIL_STRUCTURED and not self.M.is_identity():
            raise ValueError(f"{kind.value} family does not take a pencil matrix M")
        if kind in (FamilyKind.PSEUDO, FamilyKind.CONDITION_PSEUDO):
            if not (self.B.is_identity() and self.C.is_identity()):
                raise ValueError(f"{kind.value} family has no structure matrices")
        if kind is FamilyKind.STRUCTURED_CONDITION:
            self.structure_inverses  # validates B, C

    @classmethod
    def pseudo(cls, A):
        return cls(FamilyKind.PSEUDO, A)

    @classmethod
    def condition(cls, A):
        return cls(FamilyKind.CONDITION_PSEUDO, A)

    @classmethod
    def structured(cls, A, B, C):
        return cls(FamilyKind.STRUCTURED, A, B=B, C=C)

    @classmethod
    def structured_condition(cls, A, B, C):
        return cls(FamilyKind.STRUCTURED_CONDITION, A, B=B, C=C)

    @classmethod
    def pencil(cls, A, M, B=None, C=None):
        return cls(FamilyKind.PENCIL_STRUCTURED, A, M=M, B=B, C=C)

    @property
    def prime(self) -> int:
        return self.A.prime

    @property
    def n(self) -> int:
        return self.A.n

    @cached_property
    def resolvent(self) -> SymbolicResolvent:
        return symbolic_resolvent(self.A, self.M, self.B, self.C)

    @cached_property
    def structure_inverses(self):
        """(B^{-1}, C^{-1}); raises SingularStructure."""
        return _invert_structure(self.B, "B"), _invert_structure(self.C, "C")

    @cached_property
    def scaled_pencil(self) -> RationalFunctionMatrix:
        """C^{-1} (A - lambda M) B^{-1} as a polynomial matrix."""
        Binv, Cinv = self.structure_inverses
        return structure_pencil(self.A, self.M, Binv, Cinv)

    def pencil_at(self, lam) -> RationalMatrix:
        lam = _frac(lam, self.prime)
        return self.A - self.M.scale(lam)

    def in_spectrum(self, lam) -> bool:
        return self.resolvent.denominator(_frac(lam, self.prime)) == 0

    def quantity_at(self, lam) -> PMagnitude:
        lam = _frac(lam, self.prime)
        res = self.resolvent.norm_at(lam)
        if res.is_infinite or not self.kind.is_condition:
            return res
        return self.scaled_pencil.norm_at(lam) * res

    def with_matrix(self, A: RationalMatrix) -> "Family":
        return Family(self.kind, A, self.M, self.B, self.C)


def _frac(lam, prime: int) -> Fraction:
    if isinstance(lam, PadicScalar):
        if lam.prime != prime:
            from .errors import PrimeMismatch

            raise PrimeMismatch(f"lambda over Q_{lam.prime}, family over Q_{prime}")
        return lam.value
    return Fraction(lam)


@dataclass(frozen=True)
class MembershipVerdict:
    verdict: Verdict
    norm_value: PMagnitude
    threshold: Epsilon

    def to_json(self) -> dict:
        return {
            "class": self.verdict.value,
            "norm": self.norm_value.to_json(),
            "epsilon": str(self.threshold),
        }


def resolvent_norm_at(R: RationalFunctionMatrix, lam) -> PMagnitude:
    """max_ij |N_ij(lambda)| / |d(lambda)|; infinite on the spectrum."""
    return R.norm_at(_frac(lam, R.prime))


def condition_product_at(A, B, C, lam) -> PMagnitude:
    return Family.structured_condition(A, B, C).quantity_at(lam)


def classify(quantity: PMagnitude, eps, prime: int) -> Verdict:
    if quantity.is_infinite:
        return Verdict.IN_SPECTRUM
    if magnitude_compare_vs_inv_eps(quantity, eps, prime) > 0:
        return Verdict.IN_PSEUDO_REGION
    return Verdict.OUTSIDE


def member(family: Family, lam, eps) -> MembershipVerdict:
    eps = Epsilon.of(eps)
    q = family.quantity_at(lam)
    return MembershipVerdict(classify(q, eps, family.prime), q, eps)


def outside_threshold(family: Family, lam):
    """Largest eps with lambda Outside, i.e. 1/quantity.

    None on the spectrum; ``math.inf`` when the quantity is zero.
    """
    q = family.quantity_at(lam)
    if q.is_infinite:
        return None
    return q.inverse().value(family.prime)


# -- witnesses ---------------------------------------------------------------

def _pow_p(p: int, e: int) -> Fraction:
    return p_power(p, e)


@dataclass(frozen=True)
class WitnessVector:
    """x with ||x|| = 1 certifying membership through K = C^{-1}(A - lambda M)B^{-1}.

    Condition families: ||K x|| < eps * ||K|| * ||x||.
    Resolvent families: ||K x|| < eps.
    """

    x: tuple
    column_index: int
    lam: Fraction
    eps: Epsilon
    Kx_norm: PMagnitude
    K_norm: PMagnitude


def _max_column(S: RationalMatrix) -> int:
    p = S.prime
    target = sup_norm(S)
    for j in range(S.n):
        if vec_norm(S.column(j), p) == target:
            return j
    raise AssertionError("no column attains the norm")


def normalize_vector(v, p: int):
    """Scale v by a power of p so that ||v|| = 1; returns (z, c) with v = c z."""
    norm = vec_norm(v, p)
    if norm.is_zero:
        from .errors import ZeroVector

        raise ZeroVector("cannot normalise the zero vector")
    # |c| = p^e  <=>  c = p^(-e)
    c = _pow_p(p, -norm.exponent)
    return tuple(a / c for a in v), c


def witness_vector(family: Family, lam, eps) -> WitnessVector:
    eps = Epsilon.of(eps)
    lam = _frac(lam, family.prime)
    verdict = member(family, lam, eps).verdict
    if verdict is not Verdict.IN_PSEUDO_REGION:
        raise NotInPseudoRegion(f"lambda={lam} is {verdict.value}")
    p = family.prime
    K = family.scaled_pencil.evaluate(lam)
    S = family.resolvent.evaluate(lam)
    j = _max_column(S)
    x, _ = normalize_vector(S.column(j), p)
    Kx = vec_norm(K.apply(x), p)
    Kn = sup_norm(K)
    w = WitnessVector(x, j, lam, eps, Kx, Kn)
    if not witness_holds(family, w):
        raise AssertionError("witness failed its own inequality")
    return w


def witness_holds(family: Family, w: WitnessVector) -> bool:
    """Re-check the witness inequality from scratch."""
    p = family.prime
    K = family.scaled_pencil.evaluate(w.lam)
    xn = vec_norm(w.x, p)
    if xn.is_zero:
        return False
    Kx = vec_norm(K.apply(w.x), p)
    bound = w.eps.value * (sup_norm(K) * xn).value(p) if family.kind.is_condition else w.eps.value * xn.value(p)
    return Kx.value(p) < bound


# -- theorem checks ------------------------------------------------------------

def affine_image_check(A: RationalMatrix, alpha, beta, lam, eps) -> bool:
    """Condition pseudospectra commute with lambda -> alpha + beta*lambda."""
    p = A.prime
    alpha, beta, lam = _frac(alpha, p), _frac(beta, p), _frac(lam, p)
    if beta == 0:
        raise ValueError("beta must be nonzero")
    I = RationalMatrix.identity(A.n, p)
    image = A.scale(beta) + I.scale(alpha)
    lhs = member(Family.condition(A), lam, eps).verdict
    rhs = member(Family.condition(image), alpha + beta * lam, eps).verdict
    return lhs is rhs


def _require_commuting(pairs):
    for (X, xn), (Y, yn) in pairs:
        if not X.commutes_with(Y):
            raise CommutativityViolated(f"{xn} and {yn} do not commute")


def _implies(a: bool, b: bool) -> bool:
    return (not a) or b


def reciprocal_check(A, B, C, lam, eps) -> bool:
    """lambda in Lambda_eps(A^-1,B,C)\\{0} => 1/lambda in Lambda_{eps k}(A,B,C),
    and 1/lambda in Lambda_{eps k}(A,B,C) => lambda in Lambda_{eps k^2}(A^-1,B,C),
    with k = ||A^-1|| ||A||."""
    p = A.prime
    lam = _frac(lam, p)
    eps = Epsilon.of(eps)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    Ainv = _invert_structure(A, "A")
    _require_commuting([((A, "A"), (B, "B")), ((A, "A"), (C, "C")), ((B, "B"), (C, "C"))])
    k = (sup_norm(Ainv) * sup_norm(A)).value(p)
    fam_A = Family.structured_condition(A, B, C)
    fam_Ainv = fam_A.with_matrix(Ainv)
    first = _implies(
        member(fam_Ainv, lam, eps).verdict.is_member,
        member(fam_A, 1 / lam, eps * k).verdict.is_member,
    )
    second = _implies(
        member(fam_A, 1 / lam, eps * k).verdict.is_member,
        member(fam_Ainv, lam, eps * k * k).verdict.is_member,
    )
    return first and second


def similarity_sandwich_check(A, B, C, U, lam, eps) -> bool:
    """Lambda_{eps/k^2}(A) <= Lambda_eps(V) <= Lambda_{k^2 eps}(A) at lambda,
    V = U^-1 A U, k = ||U^-1|| ||U||."""
    p = A.prime
    eps = Epsilon.of(eps)
    Uinv = _invert_structure(U, "U")
    _require_commuting([((U, "U"), (C, "C")), ((B, "B"), (U, "U"))])
    k = (sup_norm(Uinv) * sup_norm(U)).value(p)
    V = Uinv @ A @ U
    fam_A = Family.structured_condition(A, B, C)
    fam_V = fam_A.with_matrix(V)
    in_V = member(fam_V, lam, eps).verdict.is_member
    return _implies(member(fam_A, lam, eps / (k * k)).verdict.is_member, in_V) and _implies(
        in_V, member(fam_A, lam, eps * (k * k)).verdict.is_member
    )


def lambda_sigma_rescale_check(A, B, C, lam, eps) -> bool:
    """lambda in Lambda_eps(A,B,C) <=> lambda in sigma_{eps ||K||}(A,B,C), and
    lambda in sigma_eps(A,B,C) <=> lambda in Lambda_{eps/||K||}(A,B,C)."""
    p = A.prime
    eps = Epsilon.of(eps)
    fam_cond = Family.structured_condition(A, B, C)
    fam_struct = Family.structured(A, B, C)
    Kn = fam_cond.scaled_pencil.norm_at(_frac(lam, p))
    if Kn.is_zero:
        raise ValueError("||C^-1 (A - lambda I) B^-1|| vanishes")
    kval = Kn.value(p)
    one = member(fam_cond, lam, eps).verdict is member(fam_struct, lam, eps * kval).verdict
    two = member(fam_struct, lam, eps).verdict is member(fam_cond, lam, eps / kval).verdict
    return one and two
