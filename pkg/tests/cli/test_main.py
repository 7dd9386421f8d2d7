"""
Tests the command line through typer's runner.
"""
import json
import time
from pathlib import Path

import numpy as np
import poly
import pytest
import realization
from cli import EXIT_DEFECT, EXIT_INPUT, EXIT_OK, app, render_bivector_file
from sympy import Rational
from typer.testing import CliRunner

QUASI_POISSON_FILE = """\
dim 3
theta 1 2 x3^2
theta 1 3 x1
theta 2 3 x2
"""


def create_test_runner() -> CliRunner:
    return CliRunner()


def run(args: list[str]):
    return create_test_runner().invoke(app, args)


def read_report(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def test_realize_r_flux(tmp_path: Path) -> None:
    """ Tests that the R-flux report has exactly one nonzero Bopp shift order. """
    output = tmp_path / "r-flux.json"
    result = run(["realize", "--example", "r-flux", "--order", "3", "--output", str(output)])
    assert result.exit_code == EXIT_OK, result.output
    report = read_report(output)
    assert report["dim"] == 6 and report["order"] == 3
    assert report["input"]["example"] == "r-flux"
    assert report["input"]["params"] == ["r"]
    assert [bool(section["entries"]) for section in report["gamma"]] == [True, False, False]
    assert [section["order"] for section in report["theta_corrections"]] == [1, 2]
    assert report["jacobiator"] == [{"lead": [1, 2, 3], "poly": "r"}]
    assert {"x_x", "x_xt", "xt_xt"} <= set(report["extended_brackets"])
    assert report["extended_brackets"]["xt_xt"] == []


def test_realize_from_file(tmp_path: Path) -> None:
    """ Tests a user bivector read from a file. """
    source = tmp_path / "theta.txt"
    source.write_text(QUASI_POISSON_FILE, encoding="utf-8")
    output = tmp_path / "theta.json"
    result = run(["realize", "--input", str(source), "--order", "2", "--output", str(output)])
    assert result.exit_code == EXIT_OK, result.output
    report = read_report(output)
    assert report["input"]["file"] == str(source)
    assert report["input"]["theta"][0] == {"lead": [1, 2], "poly": "x3^2"}
    assert report["gamma"][0]["entries"][0]["lead"] == [1]
    assert report["diagnostics"]["orders"][1]["theta_sign"] == -1


@pytest.mark.parametrize("order", ["0", "-2"])
def test_order_must_be_positive(order: str) -> None:
    """ Tests that --order below 1 is an input error. """
    result = run(["realize", "--example", "su2", "--order", order])
    assert result.exit_code == EXIT_INPUT


@pytest.mark.parametrize("args", [
    [],
    ["--example", "su2", "--input", "theta.txt"],
    ["--example", "sl2"],
    ["--example", "su2", "--format", "yaml"],
    ["--example", "mtheory", "--lam", "1", "--r", "4", "--q", "3"],
    ["--example", "mtheory", "--lam", "0", "--r", "4", "--q", "0"],
    ["--example", "mtheory", "--lam", "one"],
    ["--input", "does-not-exist.txt"],
])
def test_input_errors(args: list[str]) -> None:
    """ Tests that bad inputs exit with 2. """
    result = run(["realize", "--order", "2"] + args)
    assert result.exit_code == EXIT_INPUT


def test_malformed_file(tmp_path: Path) -> None:
    """ Tests that a parse error exits with 2. """
    source = tmp_path / "theta.txt"
    source.write_text("dim 3\ntheta 1 1 x2\n", encoding="utf-8")
    result = run(["verify", "--input", str(source), "--order", "2"])
    assert result.exit_code == EXIT_INPUT


def test_verify_su2(tmp_path: Path) -> None:
    """ Tests that every check passes on su(2), oracles included. """
    output = tmp_path / "su2.json"
    result = run(["verify", "--example", "su2", "--order", "3", "--output", str(output)])
    assert result.exit_code == EXIT_OK, result.output
    checks = read_report(output)["diagnostics"]["checks"]
    assert all(checks.values())
    assert {"cyclicity", "four-term", "young", "fundamental-identity", "contract",
            "extended-brackets", "oracle-bopp", "oracle-omega", "oracle-mixed"} <= set(checks)


def test_verify_file(tmp_path: Path) -> None:
    """ Tests that a quasi-Poisson file verifies without oracles. """
    source = tmp_path / "theta.txt"
    source.write_text(QUASI_POISSON_FILE, encoding="utf-8")
    output = tmp_path / "theta.json"
    result = run(["verify", "--input", str(source), "--order", "3", "--output", str(output)])
    assert result.exit_code == EXIT_OK, result.output
    checks = read_report(output)["diagnostics"]["checks"]
    assert not any(name.startswith("oracle-") for name in checks)


def test_verify_mtheory(tmp_path: Path) -> None:
    """ Tests the M-theory example at lambda = 1/4, r = 36, q = 3. """
    output = tmp_path / "mtheory.json"
    result = run(["verify", "--example", "mtheory", "--order", "2", "--lam", "1/4", "--r", "36", "--q", "3",
                  "--output", str(output)])
    assert result.exit_code == EXIT_OK, result.output
    report = read_report(output)
    assert report["input"]["lam"] == "1/4"
    assert report["diagnostics"]["checks"]["oracle-jacobiator"]
    assert report["diagnostics"]["checks"]["octonion-identities"]
    checks = report["diagnostics"]["checks"]
    assert {"oracle-bivector", "oracle-bopp", "oracle-omega", "oracle-mixed"} <= set(checks)
    assert all(checks.values())


def test_verify_octonion_to_fourth_order(tmp_path: Path) -> None:
    """ Tests the full pipeline on the octonions through order 4. """
    output = tmp_path / "octonion.json"
    result = run(["verify", "--example", "octonion", "--order", "4", "--output", str(output)])
    assert result.exit_code == EXIT_OK, result.output
    assert all(read_report(output)["diagnostics"]["checks"].values())


def test_golden_report(tmp_path: Path) -> None:
    """ Tests that a stored report verifies and a corrupted one does not. """
    golden = tmp_path / "golden.json"
    args = ["verify", "--example", "su2", "--order", "2"]
    assert run(args + ["--output", str(golden)]).exit_code == EXIT_OK

    result = run(args + ["--golden", str(golden), "--output", str(tmp_path / "again.json")])
    assert result.exit_code == EXIT_OK, result.output

    # Corrupt one Bopp shift entry
    report = read_report(golden)
    report["gamma"][1]["entries"][0]["poly"] += " + 1"
    corrupted = tmp_path / "corrupted.json"
    corrupted.write_text(json.dumps(report), encoding="utf-8")
    result = run(args + ["--golden", str(corrupted), "--output", str(tmp_path / "third.json")])
    assert result.exit_code == EXIT_DEFECT


def test_unreadable_golden(tmp_path: Path) -> None:
    """ Tests that a golden file that is not JSON is an input error. """
    golden = tmp_path / "golden.json"
    golden.write_text("not json", encoding="utf-8")
    result = run(["verify", "--example", "su2", "--order", "2", "--golden", str(golden)])
    assert result.exit_code == EXIT_INPUT


def test_reports_are_deterministic(tmp_path: Path) -> None:
    """ Tests that two identical runs write identical bytes. """
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    for output in (first, second):
        result = run(["realize", "--example", "su2", "--order", "3", "--output", str(output)])
        assert result.exit_code == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text(encoding="utf-8").endswith("}\n")


def test_text_format(tmp_path: Path) -> None:
    """ Tests the human-readable report. """
    output = tmp_path / "su2.txt"
    result = run(["realize", "--example", "su2", "--order", "2", "--format", "text", "--output", str(output)])
    assert result.exit_code == EXIT_OK
    text = output.read_text(encoding="utf-8")
    assert text.startswith("dim 3, order 2\n")
    assert "gamma order 1:" in text and "theta correction order 1:" in text
    assert "input example: su2" in text


def test_examples_listing() -> None:
    """ Tests that every built-in example is listed. """
    result = run(["examples"])
    assert result.exit_code == EXIT_OK
    for name in ("r-flux", "su2", "octonion", "mtheory"):
        assert name in result.output


def create_test_bivector(dim: int, seed: int) -> realization.Bivector:
    """ Creates a random bivector with three monomials of degree at most 2 per entry. """
    rng = np.random.default_rng(seed)
    varset = poly.VarSet(dim)
    entries = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            entry = varset.zero()
            for _ in range(3):
                monomial = varset.one()
                for _ in range(int(rng.integers(0, 3))):
                    monomial *= varset.y(int(rng.integers(dim)))
                entry += monomial * Rational(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))
            entries[(i, j)] = entry
    return realization.Bivector.from_entries(varset, entries)


def test_verify_four_dimensions_to_fourth_order(tmp_path: Path) -> None:
    """ Tests a full verify of a random N = 4 bivector at order 4 within five minutes. """
    source = tmp_path / "theta.txt"
    source.write_text(render_bivector_file(create_test_bivector(4, seed=2)), encoding="utf-8")
    output = tmp_path / "theta.json"
    start = time.perf_counter()
    result = run(["verify", "--input", str(source), "--order", "4", "--output", str(output)])
    elapsed = time.perf_counter() - start
    assert result.exit_code == EXIT_OK, result.output
    assert all(read_report(output)["diagnostics"]["checks"].values())
    assert elapsed < 300
