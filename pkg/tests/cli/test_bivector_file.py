"""
Tests reading and writing the bivector file format.
"""
import numpy as np
import poly
import pytest
import realization
from cli import BivectorFileError, parse_bivector_file, render_bivector_file
from sympy import Rational

SU2_FILE = """\
# su(2) with a coupling
dim 3
param R
theta 1 2 R*x3
theta 1 3 -R*x2
theta 2 3 R*x1   # last entry
"""


def test_parse_su2() -> None:
    """ Tests the parameterized su(2) bivector. """
    theta = parse_bivector_file(SU2_FILE)
    varset = theta.varset
    R, x = varset.param("R"), varset.y
    assert varset.dim == 3 and varset.params == ("R",)
    assert theta(0, 1) == R * x(2)
    assert theta(2, 0) == R * x(1)
    assert theta(1, 2) == R * x(0)


def test_parse_expressions() -> None:
    """ Tests rationals, powers, parentheses and unary minus. """
    theta = parse_bivector_file("dim 2\ntheta 2 1 -3*(x1 + 1/2)^2 - -x2\n")
    x = theta.varset.y
    expected = (x(0) + Rational(1, 2)) ** 2 * (-3) + x(1)
    assert theta(1, 0) == expected
    assert theta(0, 1) == -expected


def test_declarations_in_any_order() -> None:
    """ Tests that theta lines may precede dim and param. """
    theta = parse_bivector_file("theta 1 2 k*x2\nparam k\ndim 2\n")
    assert theta(0, 1) == theta.varset.param("k") * theta.varset.y(1)


def test_unlisted_pairs_are_zero() -> None:
    """ Tests that a file with only dim is the zero bivector. """
    theta = parse_bivector_file("dim 4\n")
    assert theta.is_zero() and theta.dim == 4


@pytest.mark.parametrize("text, line, column, message", [
    ("dim 3\ntheta 2 2 x1\n", 2, 1, "diagonal"),
    ("dim 3\ntheta 1 2 Q*x3\n", 2, 11, "undeclared identifier 'Q'"),
    ("dim 3\ntheta 1 2 x1\ntheta 2 1 x2\n", 3, 1, "already given on line 2"),
    ("dim 3\ntheta 1 4 x1\n", 2, 1, "out of range"),
    ("dim 3\ntheta 1 2 x4\n", 2, 11, "out of range"),
    ("dim 3\ntheta 1 2 x1 + * x2\n", 2, 16, "unexpected '*'"),
    ("dim 3\ntheta 1 2 x1 $ x2\n", 2, 14, "unexpected character"),
    ("dim 3\ntheta 1 2 (x1 + x2\n", 2, 19, "expected ')'"),
    ("dim 3\ntheta 1 2 x1/0\n", 2, 13, "unexpected '/'"),
    ("dim 3\ntheta 1 2 1/0\n", 2, 11, "division by zero"),
    ("dim 3\ntheta 1 2\n", 2, 1, "expected 'theta i j <expr>'"),
    ("theta 1 2 x1\n", 1, 1, "missing 'dim'"),
    ("dim 3\ndim 4\n", 2, 1, "declared twice"),
    ("dim 0\n", 1, 1, "positive integer"),
    ("dim 3\nparam x2\n", 2, 1, "clashes"),
    ("dim 3\ntheta 1 2 x1\nparam alpha\n", 3, 1, "clashes"),
    ("param y1\ndim 3\n", 1, 1, "clashes"),
    ("dim 3\nomega 1 2 x1\n", 2, 1, "unknown directive 'omega'"),
])
def test_errors(text: str, line: int, column: int, message: str) -> None:
    """ Tests that malformed files name the line, the column and the problem. """
    with pytest.raises(BivectorFileError) as info:
        parse_bivector_file(text)
    assert info.value.line == line
    assert info.value.column == column
    assert message in str(info.value)


def create_test_bivector(dim: int, seed: int) -> realization.Bivector:
    """ Creates a random bivector with a parameter k. """
    rng = np.random.default_rng(seed)
    varset = poly.VarSet(dim, ("k",))
    entries = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            if rng.random() < 0.3:
                continue
            entry = varset.constant(Rational(int(rng.integers(-5, 6)), int(rng.integers(1, 5))))
            entry += varset.y(int(rng.integers(dim))) * varset.y(int(rng.integers(dim))) * int(rng.integers(-3, 4))
            entry += varset.param("k") * varset.y(int(rng.integers(dim)))
            entries[(i, j)] = entry
    return realization.Bivector.from_entries(varset, entries)


@pytest.mark.parametrize("dim, seed", [(3, 0), (4, 1), (5, 2)])
def test_render_then_parse(dim: int, seed: int) -> None:
    """ Tests that the written form reads back as the same bivector. """
    theta = create_test_bivector(dim, seed)
    text = render_bivector_file(theta)
    assert text.startswith(f"dim {dim}\nparam k\n")
    assert parse_bivector_file(text) == theta
