"""
Tests the tensor containers of the tensor module.
"""
import numpy as np
import poly
import pytest
import tensor
from sympy import Rational


def create_test_pair_tensor(varset: poly.VarSet) -> tensor.SymTensor:
    """ Creates an antisymmetric lead-pair tensor with T^{12} = y1 and T^{23} = 2 y3. """
    entries = {((0, 1), ()): varset.y(0), ((1, 2), ()): 2 * varset.y(2)}
    return tensor.SymTensor(varset, 2, 0, tensor.LeadSymmetry.ANTISYM_PAIR, entries)


def test_permutation_sign() -> None:
    """ Tests the sign of sorting permutations. """
    assert tensor.permutation_sign((0, 1, 2)) == 1
    assert tensor.permutation_sign((1, 0)) == -1
    assert tensor.permutation_sign((2, 0, 1)) == 1
    assert tensor.permutation_sign((2, 1, 0)) == -1
    assert tensor.permutation_sign((1, 1)) == 0


def test_multinomial() -> None:
    """ Tests the number of orderings of a tail multiset. """
    assert tensor.multinomial(()) == 1
    assert tensor.multinomial((0, 0, 1)) == 3
    assert tensor.multinomial((0, 1, 2)) == 6
    assert tensor.multinomial((2, 2, 2, 2)) == 1


def test_signed_lookup() -> None:
    """ Tests that antisymmetric leads read back with the permutation sign. """
    varset = poly.VarSet(3)
    pair = create_test_pair_tensor(varset)
    assert pair.get((0, 1)) == varset.y(0)
    assert pair.get((1, 0)) == -varset.y(0)
    assert pair.get((2, 1)) == -2 * varset.y(2)
    assert pair.get((1, 1)) == varset.zero()
    assert pair.get((0, 2)) == varset.zero()
    assert pair.term_count() == 2


def test_tensor_arithmetic() -> None:
    """ Tests addition, subtraction, scaling and equality. """
    varset = poly.VarSet(3)
    pair = create_test_pair_tensor(varset)
    assert (pair - pair).is_zero()
    assert (pair + pair) == pair.scale(2)
    assert -pair == pair.scale(-1)
    assert pair.scale(Rational(1, 2)).get((1, 2)) == varset.y(2)
    assert pair != pair.scale(3)


def test_trivector() -> None:
    """ Tests the totally antisymmetric rank-3 container. """
    varset = poly.VarSet(3)
    pi = tensor.Trivector(varset, {((0, 1, 2), ()): varset.one()})
    assert pi(0, 1, 2) == varset.one()
    assert pi(1, 0, 2) == -varset.one()
    assert pi(2, 0, 1) == varset.one()
    assert pi(0, 0, 2) == varset.zero()
    assert tensor.Trivector.from_tensor(pi) == pi


def test_extract_and_assemble() -> None:
    """ Tests that extraction divides by the multinomial count and assembly restores it. """
    varset = poly.VarSet(2)
    pi1, pi2, y1 = varset.pi(0), varset.pi(1), varset.y(0)
    component = pi1 * pi2 * 3 + y1 * pi1 ** 2
    extracted = tensor.extract_tensor({(0,): component}, 2, varset, 1)

    # The mixed monomial is shared by two orderings of the tail
    assert extracted.get((0,), (0, 1)) == varset.constant(Rational(3, 2))
    assert extracted.get((0,), (1, 0)) == varset.constant(Rational(3, 2))
    assert extracted.get((0,), (0, 0)) == y1
    assert extracted.tail_arity == 2

    assembled = tensor.assemble(extracted, (0,))
    assert assembled == varset.alpha ** 2 * component


def test_assemble_signed_lead() -> None:
    """ Tests assembly of a lead given in reversed order. """
    varset = poly.VarSet(3)
    pair = create_test_pair_tensor(varset)
    assert tensor.assemble(pair, (1, 0)) == -varset.y(0)
    assert tensor.assemble(pair, (1, 1)) == varset.zero()


@pytest.mark.parametrize("degree", [1, 3])
def test_extract_rejects_wrong_degree(degree: int) -> None:
    """ Tests that a component of the wrong pi-degree is refused. """
    varset = poly.VarSet(2)
    with pytest.raises(tensor.DegreeError):
        tensor.extract_tensor({(0,): varset.pi(0) * varset.pi(1)}, degree, varset, 1)


def test_extract_rejects_alpha() -> None:
    """ Tests that a component still containing alpha is refused. """
    varset = poly.VarSet(2)
    with pytest.raises(tensor.DegreeError):
        tensor.extract_tensor({(0,): varset.alpha * varset.pi(0)}, 1, varset, 1)


def test_consistency_error_payload() -> None:
    """ Tests that the defect and order travel with the error. """
    error = tensor.ConsistencyError("broken", {"a": 1}, 3)
    assert isinstance(error, ValueError)
    assert error.defect == {"a": 1}
    assert error.order == 3


def test_lookup_rejects_indices_out_of_range() -> None:
    """ Tests that an index at or above dim is an error, not a zero entry. """
    varset = poly.VarSet(3)
    pair = create_test_pair_tensor(varset)
    with pytest.raises(AssertionError):
        pair.get((0, 3))
    with pytest.raises(AssertionError):
        pair.get((-1, 2))
    pi = tensor.Trivector(varset, {((0, 1, 2), ()): varset.one()})
    with pytest.raises(AssertionError):
        pi(0, 1, 3)


def create_test_components(varset: poly.VarSet, n: int, seed: int) -> dict:
    """ Creates random components homogeneous of degree n in pi, one per ascending pair. """
    rng = np.random.default_rng(seed)
    components = {}
    for lead in tensor.SymTensor.canonical_leads(varset.dim, 2, tensor.LeadSymmetry.ANTISYM_PAIR):
        component = varset.zero()
        for _ in range(3):
            term = varset.constant(Rational(int(rng.integers(-5, 6)), int(rng.integers(1, 4))))
            term *= varset.y(int(rng.integers(varset.dim))) ** int(rng.integers(0, 3))
            for _ in range(n):
                term *= varset.pi(int(rng.integers(varset.dim)))
            component += term
        components[lead] = component
    return components


@pytest.mark.parametrize("n, seed", [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)])
def test_extract_then_assemble_restores_components(n: int, seed: int) -> None:
    """ Tests assemble(extract_tensor(H)) = alpha^n H on random components. """
    varset = poly.VarSet(4, ("k",))
    components = create_test_components(varset, n, seed)
    extracted = tensor.extract_tensor(components, n, varset, 2, tensor.LeadSymmetry.ANTISYM_PAIR)
    assert extracted.tail_arity == n
    for (a, b), component in components.items():
        assert tensor.assemble(extracted, (a, b)) == varset.alpha ** n * component
        assert tensor.assemble(extracted, (b, a)) == -varset.alpha ** n * component
    for (lead, tail), value in extracted.items():
        assert extracted.get(lead, tuple(reversed(tail))) == value
