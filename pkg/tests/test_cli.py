import json
import subprocess
import sys

import pytest

from ultraspec import __version__
from ultraspec.cli import main
from ultraspec.errors import ParseError
from ultraspec.fixtures import FIXTURES
from ultraspec.problem import from_json, loads


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_problem_round_trip(name):
    problem = FIXTURES[name]
    again = loads(problem.dumps())
    assert again == problem
    assert again.digest() == problem.digest()


def test_spectrum_fixtures(capsys):
    code, out, _ = run(capsys, "spectrum", "--problem", "example-final-i")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["rational_points"] == ["1/2", "1"]
    assert report["version"] == __version__
    assert report["input_digest"] == FIXTURES["example-final-i"].digest()
    code, out, _ = run(capsys, "spectrum", "--problem", "all-ones")
    assert json.loads(out)["results"]["rational_points"] == ["0", "2"]


def test_singular_pencil_exit_3(capsys):
    assert run(capsys, "spectrum", "--problem", "singular-pencil")[0] == 3


def test_member(capsys):
    code, out, _ = run(capsys, "member", "--problem", "structured-diag", "--lambda", "10", "--eps", "1/3")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["class"] == "in_pseudo_region" and res["norm"] == {"kind": "finite", "exponent": 2}
    code, out, _ = run(capsys, "member", "--problem", "structured-diag", "--lambda", "2")
    assert json.loads(out)["results"]["class"] == "in_spectrum"


def test_condition_family_with_singular_b_exit_4(tmp_path, capsys):
    data = FIXTURES["structured-condition-diag"].to_json()
    data["B"] = [["1", "1"], ["1", "1"]]
    path = tmp_path / "p.json"
    path.write_text(json.dumps(data))
    assert run(capsys, "member", "--problem", str(path), "--lambda", "2")[0] == 4


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        '{"prime": 4, "dimension": 1, "family": "pseudo", "A": [["1"]]}',
        '{"prime": 3, "dimension": 2, "family": "pseudo", "A": [["1"]]}',
        '{"prime": 3, "dimension": 1, "family": "nope", "A": [["1"]]}',
        '{"prime": 3, "dimension": 1, "family": "pseudo", "A": [["1.5"]]}',
        '{"prime": 3, "dimension": 1, "family": "pseudo", "A": [["1"]], "epsilon": "-1"}',
        '{"prime": 3, "dimension": 1, "family": "pseudo", "A": [["1"]], "Z": 1}',
    ],
)
def test_parse_errors_exit_2(tmp_path, capsys, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, _, err = run(capsys, "spectrum", "--problem", str(path))
    assert code == 2 and "parse error" in err


def test_parse_error_names_field():
    with pytest.raises(ParseError, match=r"'A'\[0\]\[1\]"):
        from_json({"prime": 3, "dimension": 2, "family": "pseudo", "A": [["1", "x"], ["0", "1"]]})
    with pytest.raises(ParseError, match="line 2"):
        loads('{\n  "prime": 3,,\n}')


def test_bad_cli_values_exit_2(capsys):
    assert run(capsys, "member", "--problem", "jordan-3", "--lambda", "1/0")[0] == 2
    assert run(capsys, "member", "--problem", "no-such-fixture", "--lambda", "1")[0] == 2
    assert run(capsys, "region", "--problem", "jordan-3", "--depth", "-1")[0] == 2


def test_region(capsys, tmp_path):
    out_path = tmp_path / "tree.json"
    argv = ["region", "--problem", "example-final-iii", "--eps", "1/4", "--depth", "6", "--center", "1", "--radius-exp", "1", "--json", str(out_path)]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out_path.read_text() == out
    tree = json.loads(out)["results"]["tree"]
    assert tree["class"] == "split" and list(tree) == ["center", "children", "class", "radius_exp"]
    code, out, _ = run(capsys, "region", "--problem", "example-final-iii", "--depth", "0")
    assert json.loads(out)["results"]["tree"]["children"] == []


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--problem", "structured-diag", "--theorem", "perturbation-union", "--trials", "50", "--seed", "42")[0] == 0
    assert run(capsys, "verify", "--problem", "sandwich-noncommuting", "--theorem", "sandwich")[0] == 4
    assert run(capsys, "verify", "--problem", "structured-diag", "--theorem", "det-ab-ba", "--trials", "100")[0] == 0
    assert run(capsys, "verify", "--problem", "structured-diag", "--theorem", "reciprocal")[0] == 4


def test_reports_are_byte_stable(capsys):
    argv = ["verify", "--problem", "example-final-ii", "--theorem", "forward-inclusion", "--trials", "30", "--seed", "9"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    assert json.loads(first)["seed"] == 9


def test_all_fixtures_match_golden(capsys):
    code, out, _ = run(capsys, "--all-fixtures")
    assert code == 0, out
    assert "FAIL" not in out and "ok   example-final-iii" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ultraspec.cli", "--list-fixtures"], capture_output=True, text=True)
    assert proc.returncode == 0 and "structured-diag" in proc.stdout.split()


def test_identity_only_theorems_refuse_pencils(capsys):
    code, _, err = run(capsys, "verify", "--problem", "example-final-i", "--theorem", "rescale")
    assert code == 4 and "M = I" in err
