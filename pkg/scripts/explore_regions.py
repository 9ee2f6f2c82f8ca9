"""Print certified region trees for a few fixtures at several eps values."""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from ultraspec.fixtures import FIXTURES
from ultraspec.regions import Ball, explore


@dataclass
class RegionConfig:
    fixture: str = "example-final-iii"
    center: Fraction = Fraction(1)
    radius_exp: int = 0
    depth: int = 6
    eps_exponents: tuple = (0, 1, 2, 3)


def show(cfg: RegionConfig):
    problem = FIXTURES[cfg.fixture]
    fam, p = problem.build_family(), problem.prime
    for k in cfg.eps_exponents:
        eps = Fraction(1, p ** k)
        tree = explore(fam, Ball(cfg.center, cfg.radius_exp, p), eps, cfg.depth)
        print(f"{cfg.fixture}  eps = {eps}")
        for leaf in tree.leaves():
            if leaf.leaf_class.value != "non_member":
                print(f"  {leaf.ball}  {leaf.leaf_class.value}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--fixture", default="example-final-iii")
    ap.add_argument("--depth", type=int, default=6)
    args = ap.parse_args()
    show(RegionConfig(fixture=args.fixture, depth=args.depth))
