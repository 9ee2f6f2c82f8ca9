"""Built-in problems, plus a few that deliberately violate a hypothesis.

Each entry also lists the (lambda, eps) membership queries and the region run
that make up its golden reproduction.
"""

from fractions import Fraction as F

from .problem import make_problem

ONES = [[1, 1], [1, 1]]
E11 = [[1, 0], [0, 0]]
E12 = [[0, 1], [0, 0]]

FIXTURES = {
    # sigma_eps of diag(l1, l2): max{1/|l1 - l|, 1/|l2 - l|} > 1/eps
    "diag-pseudo": make_problem(3, "pseudo", [[1, 0], [0, 2]], F(1, 3)),
    # Jordan-like block: max{1/|1-l|, |3|/|1-l|^2}
    "jordan-3": make_problem(3, "pseudo", [[1, 3], [0, 1]], F(1, 9)),
    # all-ones: spectrum {0, 2}
    "all-ones": make_problem(2, "pseudo", ONES, F(1, 2)),
    # condition pseudospectrum of diag(a, b)
    "diag-ab-condition": make_problem(3, "condition", [[1, 0], [0, 10]], F(1, 3)),
    # structured: region |l - l1| < eps
    "structured-diag": make_problem(3, "structured", [[1, 0], [0, 2]], F(1, 3), B=ONES, C=E11),
    "structured-example-2": make_problem(3, "structured", [[0, 0], [0, 1]], F(1, 3), B=[[1, 0], [1, 1]]),
    "structured-example-3": make_problem(3, "structured", [[1, 0], [1, 1]], F(1, 3), B=E11, C=E12),
    # pencil examples (i)-(iii)
    "example-final-i": make_problem(
        2, "pencil-structured", [[1, 0], [1, 1]], F(1, 4), M=[[2, 0], [0, 1]], B=[[1, 0], [0, 4]], C=[[1, 0], [1, -1]]
    ),
    "example-final-ii": make_problem(3, "pencil-structured", ONES, F(1, 3), M=[[1, 0], [0, 2]], B=E11, C=E12),
    "example-final-iii": make_problem(
        2, "pencil-structured", [[2, 1], [0, 1]], F(1, 4), M=[[2, 0], [0, 1]], B=E11, C=E12
    ),
    # structured condition pseudospectrum with commuting invertible structure
    "structured-condition-diag": make_problem(
        3, "structured-condition", [[1, 0], [0, 4]], F(1, 3), B=[[1, 0], [0, 3]], C=[[2, 0], [0, 1]], U=[[1, 0], [0, 9]]
    ),
    # U does not commute with B: the similarity theorem's hypothesis fails
    "sandwich-noncommuting": make_problem(
        3, "structured-condition", [[1, 0], [0, 4]], F(1, 3), B=[[1, 1], [0, 1]], U=[[1, 0], [0, 3]]
    ),
    # identically singular pencil
    "singular-pencil": make_problem(3, "pencil-structured", [[1, 0], [0, 0]], F(1, 3), M=[[1, 0], [0, 0]]),
}

# membership queries (lambda, eps) replayed by --all-fixtures
QUERIES = {
    "diag-pseudo": [("1", "1/3"), ("4", "1/3"), ("7/2", "1/9")],
    "jordan-3": [("1", "1/9"), ("4", "1/9"), ("10", "1/9")],
    "all-ones": [("0", "1/2"), ("2", "1/2"), ("4", "1/2"), ("1/3", "1/2")],
    "diag-ab-condition": [("1", "1/3"), ("4", "1/3"), ("2", "1/3")],
    "structured-diag": [("10", "1/3"), ("2", "1/3"), ("4", "1/3")],
    "structured-example-2": [("3", "1/3"), ("1/2", "1/3")],
    "structured-example-3": [("10", "1/3"), ("2", "1/3")],
    "example-final-i": [("1/2", "1/4"), ("2", "1/4"), ("9", "1/4")],
    "example-final-ii": [("0", "1/3"), ("3", "1/3"), ("3/2", "1/3"), ("1", "1/3")],
    "example-final-iii": [("1", "1/4"), ("5", "1/4"), ("3", "1/4")],
}

# region runs: (center, radius_exp, eps, depth)
REGIONS = {
    "example-final-iii": [("1", 1, "1/4", 6)],
    "structured-diag": [("1", 0, "1/3", 4)],
}

GOLDEN_FIXTURES = sorted(QUERIES)
