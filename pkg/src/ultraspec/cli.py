"""ultraspec command line: spectrum | member | region | verify.

Exit codes: 0 ok, 2 parse error, 3 singular pencil, 4 structure or
hypothesis violation, 5 theorem counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .campaigns import THEOREMS, run_theorem
from .errors import (
    CommutativityViolated,
    ParseError,
    PrimeMismatch,
    SingularPencil,
    SingularStructure,
)
from .fixtures import FIXTURES, GOLDEN_FIXTURES, QUERIES, REGIONS
from .padic import Epsilon, parse_rational
from .pseudospectra import member
from .regions import Ball, explore, outer_bound_exponent
from .spectra import DEFAULT_PRECISION, spectrum

EXIT_OK, EXIT_PARSE, EXIT_SINGULAR, EXIT_HYPOTHESIS, EXIT_COUNTEREXAMPLE = 0, 2, 3, 4, 5


def load_problem(ref: str):
    from .problem import load

    if ref in FIXTURES and not Path(ref).exists():
        return FIXTURES[ref]
    try:
        return load(ref)
    except FileNotFoundError:
        raise ParseError(f"no such problem file or fixture: {ref}") from None


def _rational(text: str, what: str):
    try:
        return parse_rational(text)
    except ParseError as e:
        raise ParseError(f"{what}: {e}") from None


def _eps(args, problem) -> Epsilon:
    if args.eps is not None:
        try:
            return Epsilon(_rational(args.eps, "--eps"))
        except ValueError as e:
            raise ParseError(f"--eps: {e}") from None
    if problem.epsilon is None:
        raise ParseError("no epsilon: pass --eps or set 'epsilon' in the problem")
    return problem.epsilon


def spectrum_payload(problem, precision: int = DEFAULT_PRECISION) -> dict:
    return spectrum(problem.A, problem.M, precision).to_json()


def member_payload(problem, lam, eps) -> dict:
    v = member(problem.build_family(), lam, eps)
    return {"lambda": str(lam), **v.to_json()}


def region_payload(problem, center, radius_exp: int, eps, depth: int) -> dict:
    family = problem.build_family()
    tree = explore(family, Ball(center, radius_exp, problem.prime), eps, depth)
    counts = {}
    for leaf in tree.leaves():
        counts[leaf.leaf_class.value] = counts.get(leaf.leaf_class.value, 0) + 1
    out = tree.to_json()
    out["leaf_counts"] = dict(sorted(counts.items()))
    out["outer_bound_exponent"] = outer_bound_exponent(family, eps)
    return out


def make_report(command: dict, problem, results, seed=None) -> dict:
    return {
        "command": command,
        "input_digest": problem.digest(),
        "results": results,
        "seed": seed,
        "version": __version__,
    }


def dump(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def fixture_reproduction(name: str) -> dict:
    """Everything the golden file of a fixture records."""
    problem = FIXTURES[name]
    out = {"spectrum": spectrum_payload(problem)}
    out["member"] = [member_payload(problem, _rational(lam, "lambda"), Epsilon(_rational(e, "eps"))) for lam, e in QUERIES.get(name, [])]
    out["region"] = [
        region_payload(problem, _rational(c, "center"), r, Epsilon(_rational(e, "eps")), d)
        for c, r, e, d in REGIONS.get(name, [])
    ]
    return make_report({"fixture": name}, problem, out)


def golden_dir():
    return resources.files("ultraspec") / "golden"


def run_all_fixtures(update: bool = False, out=None) -> int:
    out = out or sys.stdout
    failed = []
    for name in GOLDEN_FIXTURES:
        text = dump(fixture_reproduction(name))
        path = golden_dir() / f"{name}.json"
        if update:
            Path(str(path)).write_text(text)
            print(f"wrote {name}", file=out)
            continue
        ok = path.is_file() and path.read_text() == text
        print(f"{'ok  ' if ok else 'FAIL'} {name}", file=out)
        if not ok:
            failed.append(name)
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ultraspec", description="Exact p-adic spectra and pseudospectra.")
    ap.add_argument("--version", action="version", version=f"ultraspec {__version__}")
    ap.add_argument("--all-fixtures", action="store_true", help="reproduce every built-in example against its golden file")
    ap.add_argument("--update-golden", action="store_true", help="with --all-fixtures: rewrite the golden files")
    ap.add_argument("--list-fixtures", action="store_true")
    sub = ap.add_subparsers(dest="cmd")

    def common(p):
        p.add_argument("--problem", required=True, help="problem JSON file or built-in fixture name")
        p.add_argument("--json", dest="json_out", help="also write the report here")

    p = sub.add_parser("spectrum", help="exact spectrum of the pencil (A, M)")
    common(p)
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="p-adic digits for irrational roots")

    p = sub.add_parser("member", help="classify one lambda")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--eps")

    p = sub.add_parser("region", help="certified ball tree of the region")
    common(p)
    p.add_argument("--eps")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--center", default="0")
    p.add_argument("--radius-exp", type=int, default=0)

    p = sub.add_parser("verify", help="run a theorem campaign")
    common(p)
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps")
    return ap


def _dispatch(args):
    problem = load_problem(args.problem)
    echo = {k: v for k, v in sorted(vars(args).items()) if v is not None and k not in ("json_out", "all_fixtures", "update_golden", "list_fixtures")}
    code = EXIT_OK
    seed = None
    if args.cmd == "spectrum":
        if args.precision < 1:
            raise ParseError("--precision must be positive")
        results = spectrum_payload(problem, args.precision)
    elif args.cmd == "member":
        results = member_payload(problem, _rational(args.lam, "--lambda"), _eps(args, problem))
    elif args.cmd == "region":
        if args.depth < 0:
            raise ParseError("--depth must be >= 0")
        center = _rational(args.center, "--center")
        results = region_payload(problem, center, args.radius_exp, _eps(args, problem), args.depth)
    else:
        if args.trials < 1 or args.seed < 0:
            raise ParseError("--trials must be positive and --seed non-negative")
        eps = _eps(args, problem) if args.eps is not None else None
        rep = run_theorem(args.theorem, problem, args.trials, args.seed, eps)
        results = rep.to_json()
        seed = args.seed
        if not rep.ok:
            code = EXIT_COUNTEREXAMPLE
            print(json.dumps(rep.counterexamples[0], sort_keys=True), file=sys.stderr)
    return make_report(echo, problem, results, seed), code


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.list_fixtures:
        for name in sorted(FIXTURES):
            print(name)
        return EXIT_OK
    if args.all_fixtures:
        return run_all_fixtures(update=args.update_golden)
    if args.cmd is None:
        ap.print_usage(sys.stderr)
        return EXIT_PARSE
    try:
        report, code = _dispatch(args)
    except (ParseError, PrimeMismatch) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except SingularPencil as e:
        print(f"singular pencil: {e}", file=sys.stderr)
        return EXIT_SINGULAR
    except (SingularStructure, CommutativityViolated) as e:
        print(f"hypothesis violated: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ValueError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    text = dump(report)
    sys.stdout.write(text)
    if args.json_out:
        Path(args.json_out).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
