"""
Tests the Bivector container.
"""
import poly
import pytest
import realization


def create_test_bivector() -> realization.Bivector:
    """ Creates the su(2) bivector R eps_ijk x_k with a parameter R. """
    varset = poly.VarSet(3, ("R",))
    R, x = varset.param("R"), varset.y
    return realization.Bivector.from_entries(varset, {(0, 1): R * x(2), (0, 2): -R * x(1), (1, 2): R * x(0)})


def test_from_entries_fills_antisymmetric_part() -> None:
    """ Tests that the lower triangle is the negation of the upper one. """
    theta = create_test_bivector()
    R, x = theta.varset.param("R"), theta.varset.y
    assert theta(0, 1) == R * x(2)
    assert theta(1, 0) == -R * x(2)
    assert theta(2, 2) == theta.varset.zero()
    assert theta.dim == 3
    assert not theta.is_zero()


def test_entries_given_below_diagonal() -> None:
    """ Tests that an entry given as (j, i) lands with the right sign. """
    varset = poly.VarSet(2)
    theta = realization.Bivector.from_entries(varset, {(1, 0): varset.y(0)})
    assert theta(0, 1) == -varset.y(0)


def test_rejects_diagonal_entry() -> None:
    """ Tests that a diagonal entry is refused. """
    varset = poly.VarSet(2)
    with pytest.raises(poly.StructuralError):
        realization.Bivector.from_entries(varset, {(0, 0): varset.y(1)})


def test_rejects_non_antisymmetric_matrix() -> None:
    """ Tests that a symmetric off-diagonal pair is refused. """
    varset = poly.VarSet(2)
    zero, y1 = varset.zero(), varset.y(0)
    with pytest.raises(poly.StructuralError):
        realization.Bivector(varset, ((zero, y1), (y1, zero)))


@pytest.mark.parametrize("which", ["alpha", "pi"])
def test_rejects_entries_with_alpha_or_momenta(which: str) -> None:
    """ Tests that entries may only depend on x and parameters. """
    varset = poly.VarSet(2)
    entry = varset.alpha if which == "alpha" else varset.pi(0)
    with pytest.raises(poly.StructuralError):
        realization.Bivector.from_entries(varset, {(0, 1): entry})


def test_as_tensor() -> None:
    """ Tests the view as a lead-pair tensor without tail. """
    theta = create_test_bivector()
    tensor = theta.as_tensor()
    assert tensor.lead_arity == 2 and tensor.tail_arity == 0
    assert tensor.get((2, 1)) == theta(2, 1)
    assert len(tensor.entries) == 3


def test_evaluate() -> None:
    """ Tests substitution of images for the coordinates. """
    theta = create_test_bivector()
    varset = theta.varset
    images = [varset.y(0) + varset.alpha * varset.pi(1), varset.y(1), varset.y(2)]
    evaluated = theta.evaluate(images)
    R = varset.param("R")
    assert evaluated[1][2] == R * images[0]
    assert evaluated[2][1] == -R * images[0]
    assert theta.evaluate(images, below=1)[1][2] == R * varset.y(0)


def test_render() -> None:
    """ Tests the 1-based rendering of the upper triangle. """
    rendered = create_test_bivector().render()
    assert rendered == [
        {"lead": [1, 2], "poly": "R*x3"},
        {"lead": [1, 3], "poly": "-R*x2"},
        {"lead": [2, 3], "poly": "R*x1"},
    ]


def test_equality_and_hash() -> None:
    """ Tests value equality of bivectors. """
    assert create_test_bivector() == create_test_bivector()
    assert hash(create_test_bivector()) == hash(create_test_bivector())
