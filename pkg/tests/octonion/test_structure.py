"""
Tests the octonion structure constants and their identity sweeps.
"""
import numpy as np
import octonion
import pytest


def create_test_structure() -> octonion.OctonionStructure:
    """ Creates the standard tables. """
    return octonion.OctonionStructure.standard()


def test_eta3_seeds() -> None:
    """ Tests that every seed triple is +1 and the table is antisymmetric. """
    structure = create_test_structure()
    for a, b, c in octonion.ETA3_SEEDS:
        assert structure.eta3[a - 1, b - 1, c - 1] == 1
        assert structure.eta3[b - 1, a - 1, c - 1] == -1
        assert structure.eta3[b - 1, c - 1, a - 1] == 1

    # Seven triples, six orderings each
    assert np.count_nonzero(structure.eta3) == 42
    assert len(structure.nonzero3()) == 42


def test_derived_eta4_against_printed_seeds() -> None:
    """ Tests where the derived rank-four table agrees with the printed seed list. """
    structure = create_test_structure()
    agree = [(1, 2, 6, 7), (1, 4, 2, 5), (1, 5, 3, 7), (3, 2, 5, 6)]
    opposite = [(1, 3, 4, 6), (3, 2, 4, 7), (4, 5, 6, 7)]
    for seed in agree:
        assert structure.eta4[tuple(i - 1 for i in seed)] == 1
    for seed in opposite:
        assert structure.eta4[tuple(i - 1 for i in seed)] == -1
    assert np.count_nonzero(structure.eta4) == 7 * 24


def test_levi_civita() -> None:
    """ Tests the alternating symbol. """
    epsilon = octonion.levi_civita(3)
    assert epsilon[0, 1, 2] == 1
    assert epsilon[1, 0, 2] == -1
    assert epsilon[2, 0, 1] == 1
    assert epsilon[0, 0, 1] == 0
    assert np.count_nonzero(octonion.levi_civita(4)) == 24


def test_verify_contractions_standard() -> None:
    """ Tests that all identity sweeps pass on the standard tables. """
    report = octonion.verify_contractions()
    assert report.passed
    assert [check.name for check in report.checks] == [
        "antisymmetry", "contraction", "duality", "mixed", "jacobiator"]
    assert report.duality_orientation == -1
    assert report.check("contraction").checked == 7 ** 4
    assert report.check("mixed").checked == 7 ** 5
    assert report.check("jacobiator").counterexample is None


def test_verify_contractions_printed_seeds() -> None:
    """ Tests that the printed rank-four seed list fails the contraction sweep. """
    report = octonion.verify_contractions(octonion.OctonionStructure.from_printed_seeds())
    assert not report.passed
    assert report.check("antisymmetry").passed
    assert not report.check("contraction").passed
    assert report.check("contraction").counterexample is not None
    assert not report.check("jacobiator").passed


@pytest.mark.parametrize("index", [(0, 1, 5, 6), (3, 4, 5, 6)])
def test_corrupted_eta4_is_caught(index: tuple) -> None:
    """ Tests that flipping a single rank-four entry is caught. """
    structure = create_test_structure()
    eta4 = structure.eta4.copy()
    eta4[index] = -eta4[index]
    report = octonion.verify_contractions(octonion.OctonionStructure(structure.eta3, eta4))
    assert not report.check("antisymmetry").passed
    assert not report.check("contraction").passed
    assert report.check("contraction").counterexample == tuple(i + 1 for i in index)


def test_corrupted_eta3_is_caught() -> None:
    """ Tests that flipping a single rank-three entry is caught. """
    structure = create_test_structure()
    eta3 = structure.eta3.copy()
    eta3[0, 1, 2] = -eta3[0, 1, 2]
    report = octonion.verify_contractions(octonion.OctonionStructure(eta3, structure.eta4))
    assert not report.passed
    assert not report.check("antisymmetry").passed


def test_report_unknown_check() -> None:
    """ Tests that asking for an unknown check fails. """
    with pytest.raises(KeyError):
        octonion.verify_contractions().check("nonexistent")
