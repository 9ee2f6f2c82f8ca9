"""Run every theorem campaign on the built-in fixtures and print a summary table.

    python3 scripts/run_campaigns.py --trials 200 --seed 1 --out campaigns.json
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from ultraspec.campaigns import run_theorem
from ultraspec.errors import CommutativityViolated, SingularStructure
from ultraspec.fixtures import FIXTURES


@dataclass
class CampaignConfig:
    trials: int = 100
    seed: int = 0
    fixtures: list = field(
        default_factory=lambda: ["structured-diag", "example-final-i", "example-final-ii", "example-final-iii", "jordan-3", "structured-condition-diag"]
    )
    theorems: list = field(
        default_factory=lambda: ["perturbation-union", "forward-inclusion", "nesting", "affine", "rescale", "sandwich", "reciprocal", "det-ab-ba"]
    )


def run(cfg: CampaignConfig) -> list:
    rows = []
    for name in cfg.fixtures:
        for theorem in cfg.theorems:
            t0 = time.perf_counter()
            try:
                rep = run_theorem(theorem, FIXTURES[name], cfg.trials, cfg.seed)
                status = "ok" if rep.ok else f"{len(rep.counterexamples)} counterexamples"
                checked = rep.checked
            except (SingularStructure, CommutativityViolated, ValueError) as e:
                status, checked = f"skipped ({e})", 0
            rows.append({"fixture": name, "theorem": theorem, "checked": checked, "status": status, "seconds": round(time.perf_counter() - t0, 2)})
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()
    cfg = CampaignConfig(trials=args.trials, seed=args.seed)
    rows = run(cfg)
    for r in rows:
        print(f"{r['fixture']:<28}{r['theorem']:<20}{r['checked']:>6}  {r['status']}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
