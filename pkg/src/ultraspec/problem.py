"""Problem files: JSON with rational-string matrices.

    {
      "prime": 2,
      "dimension": 2,
      "family": "pencil-structured",
      "epsilon": "1/4",
      "A": [["2", "1"], ["0", "1"]],
      "M": [["2", "0"], ["0", "1"]],
      "B": [["1", "0"], ["0", "0"]],
      "C": [["0", "1"], ["0", "0"]]
    }

M, B, C default to the identity; U is optional (similarity checks only).
Numbers are always strings so big integers survive any JSON reader.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .linalg import RationalMatrix
from .padic import Epsilon, check_prime, format_rational, parse_rational
from .pseudospectra import Family, FamilyKind

MATRIX_FIELDS = ("A", "M", "B", "C", "U")


@dataclass(frozen=True)
class Problem:
    prime: int
    A: RationalMatrix
    family: FamilyKind
    epsilon: Epsilon | None = None
    M: RationalMatrix | None = None
    B: RationalMatrix | None = None
    C: RationalMatrix | None = None
    U: RationalMatrix | None = None

    @property
    def dimension(self) -> int:
        return self.A.n

    def build_family(self) -> Family:
        return Family(self.family, self.A, self.M, self.B, self.C)

    def to_json(self) -> dict:
        out = {
            "prime": self.prime,
            "dimension": self.dimension,
            "family": self.family.value,
        }
        if self.epsilon is not None:
            out["epsilon"] = str(self.epsilon)
        for name in MATRIX_FIELDS:
            X = getattr(self, name)
            if X is not None:
                out[name] = [[format_rational(a) for a in row] for row in X.rows]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def digest(self) -> str:
        canon = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()


def _matrix(raw, name: str, n: int, prime: int) -> RationalMatrix:
    if not isinstance(raw, list) or len(raw) != n:
        raise ParseError(f"field {name!r}: expected {n} rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"field {name!r} row {i}: expected {n} entries")
        out = []
        for j, x in enumerate(row):
            try:
                out.append(parse_rational(x))
            except ParseError as e:
                raise ParseError(f"field {name!r}[{i}][{j}]: {e}") from None
        rows.append(out)
    return RationalMatrix(rows, prime)


def from_json(data: dict) -> Problem:
    if not isinstance(data, dict):
        raise ParseError("problem must be a JSON object")
    for key in ("prime", "dimension", "A", "family"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    unknown = set(data) - {"prime", "dimension", "family", "epsilon", *MATRIX_FIELDS}
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")
    prime, n = data["prime"], data["dimension"]
    try:
        check_prime(prime)
    except ValueError as e:
        raise ParseError(f"field 'prime': {e}") from None
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError("field 'dimension': expected a positive integer")
    try:
        family = FamilyKind(data["family"])
    except ValueError:
        choices = ", ".join(k.value for k in FamilyKind)
        raise ParseError(f"field 'family': {data['family']!r} is not one of {choices}") from None
    eps = None
    if data.get("epsilon") is not None:
        try:
            eps = Epsilon(parse_rational(data["epsilon"]))
        except ValueError as e:
            raise ParseError(f"field 'epsilon': {e}") from None
    mats = {name: _matrix(data[name], name, n, prime) for name in MATRIX_FIELDS if data.get(name) is not None}
    return Problem(prime=prime, family=family, epsilon=eps, **mats)


def loads(text: str) -> Problem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return from_json(data)


def load(path) -> Problem:
    with open(path) as fh:
        return loads(fh.read())


def make_problem(prime, family, A, eps=None, M=None, B=None, C=None, U=None) -> Problem:
    mk = lambda X: None if X is None else RationalMatrix(X, prime)  # noqa: E731
    return Problem(
        prime=prime,
        family=FamilyKind(family),
        epsilon=None if eps is None else Epsilon(Fraction(eps)),
        A=mk(A),
        M=mk(M),
        B=mk(B),
        C=mk(C),
        U=mk(U),
    )
