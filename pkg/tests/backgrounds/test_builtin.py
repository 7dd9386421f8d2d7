"""
Tests the built-in example bivectors.
"""
import backgrounds
import octonion
import pytest
import realization
from sympy import Rational


def test_r_flux_entries() -> None:
    """ Tests {x^i, x^j} = r eps_ijk p_k and {x^i, p_j} = delta_ij. """
    theta = backgrounds.build_r_flux()
    varset = theta.varset
    r, y = varset.param("r"), varset.y
    assert theta(0, 1) == r * y(5)
    assert theta(0, 2) == -r * y(4)
    assert theta(1, 2) == r * y(3)
    for i in range(3):
        for j in range(3):
            assert theta(i, 3 + j) == (varset.one() if i == j else varset.zero())
            assert theta(3 + i, 3 + j) == varset.zero()


def test_r_flux_realization_terminates() -> None:
    """ Tests that only the first order Bopp shift and Theta correction survive. """
    real = realization.realize(backgrounds.build_r_flux(), 3)
    assert not real.gamma[0].is_zero()
    assert all(gamma.is_zero() for gamma in real.gamma[1:])
    assert not real.theta_corr[0].is_zero()
    assert real.theta_corr[1].is_zero()

    # Pi^{ijk} = r eps_ijk on the coordinates, zero elsewhere
    r = real.varset.param("r")
    assert real.jacobiator(0, 1, 2) == r
    assert real.jacobiator(0, 1, 3) == real.varset.zero()


def test_r_flux_extended_brackets() -> None:
    """ Tests {x1, x2} = alpha r p3 - alpha^2 r xt3 and {x1, xt_p2} = alpha r xt3 / 2. """
    real = realization.realize(backgrounds.build_r_flux(), 3)
    varset = real.varset
    r, y, pi, alpha = varset.param("r"), varset.y, varset.pi, varset.alpha
    brackets = realization.extended_brackets(real)
    assert brackets.x_x[0][1] == alpha * r * y(5) - alpha ** 2 * r * pi(2)
    assert brackets.x_xt[0][4] == alpha * r * pi(2) * Rational(1, 2)
    assert brackets.x_xt[0][0] == varset.one()


def test_su2_and_octonion_entries() -> None:
    """ Tests Theta^{ij} = 2 eps_ijk x_k and Theta^{AB} = 2 eta_ABC x_C. """
    su2 = backgrounds.build_su2()
    y = su2.varset.y
    assert su2(0, 1) == 2 * y(2)
    assert su2(0, 2) == -2 * y(1)
    assert su2(1, 2) == 2 * y(0)

    theta = backgrounds.build_octonion()
    structure = octonion.OctonionStructure.standard()
    y = theta.varset.y
    for a in range(7):
        for b in range(7):
            expected = theta.varset.zero()
            for c in range(7):
                expected += y(c) * (2 * int(structure.eta3[a, b, c]))
            assert theta(a, b) == expected


def test_octonion_jacobiator() -> None:
    """ Tests Pi^{ABC} = -4 eta_ABCD x_D. """
    theta = backgrounds.build_octonion()
    structure = octonion.OctonionStructure.standard()
    varset = theta.varset
    pi = realization.jacobiator(theta)
    for a, b, c in [(0, 1, 3), (0, 1, 2), (2, 4, 5), (1, 3, 6)]:
        expected = varset.zero()
        for d in range(7):
            expected += varset.y(d) * (-4 * int(structure.eta4[a, b, c, d]))
        assert pi(a, b, c) == expected
    assert not pi.is_zero()


def test_mtheory_entries() -> None:
    """ Tests the M-theory brackets at lambda = 1, r = 4, q = 2. """
    theta = backgrounds.build_mtheory(1, 4, 2).bivector
    varset = theta.varset
    y = varset.y
    x4, p = 3, (4, 5, 6)

    # {x^i, x^j} = r eps_ijk p_k
    assert theta(0, 1) == 4 * y(6)
    assert theta(0, 2) == -4 * y(5)
    assert theta(1, 2) == 4 * y(4)

    # {x4, x^i} = lambda r p_i
    for i in range(3):
        assert theta(x4, i) == 4 * y(p[i])

    # {x^i, p_j} = delta_ij x4 + lambda eps_ijk x^k
    assert theta(0, p[0]) == y(x4)
    assert theta(0, p[1]) == y(2)
    assert theta(0, p[2]) == -y(1)

    # {x4, p_i} = -lambda^2 x^i and {p_i, p_j} = -lambda eps_ijk p_k
    assert theta(x4, p[0]) == -y(0)
    assert theta(p[0], p[1]) == -y(6)


def test_mtheory_scales_with_lambda() -> None:
    """ Tests the lambda dependence at lambda = 1/4, r = 36, q = 3. """
    theta = backgrounds.build_mtheory(Rational(1, 4), 36, 3).bivector
    y = theta.varset.y
    assert theta(0, 1) == 36 * y(6)
    assert theta(3, 0) == 9 * y(4)
    assert theta(0, 5) == y(2) * Rational(1, 4)
    assert theta(3, 4) == y(0) * Rational(-1, 16)
    assert theta(4, 5) == y(6) * Rational(-1, 4)


def test_mtheory_jacobiator_matches_lambda_tensor() -> None:
    """ Tests Pi = -4 lambda^{ABCD} x^D and the transformed octonion forms through the oracle checks. """
    background = backgrounds.build_mtheory(1, 4, 2)
    real = realization.realize(background.bivector, 1)
    checks = backgrounds.check_oracles("mtheory", real, lam=1, r=4, q=2)
    assert [check.name for check in checks] == ["jacobiator", "bivector", "bopp", "omega", "mixed"]
    assert all(check.passed for check in checks)
    assert real.jacobiator(4, 5, 6) == real.varset.zero()


def test_mtheory_jacobiator_lambda_powers() -> None:
    """ Tests Pi^{p1 p2 x3} = -lambda x4 and Pi^{p1 p2 x1} = lambda^2 x2 at lambda = 1/4. """
    real = realization.realize(backgrounds.build_mtheory(Rational(1, 4), 36, 3).bivector, 1)
    y = real.varset.y
    assert real.jacobiator(4, 5, 2) == y(3) * Rational(-1, 4)
    assert real.jacobiator(4, 5, 0) == y(1) * Rational(1, 16)


def test_mtheory_singular_parameters() -> None:
    """ Tests that a zero parameter makes the transform singular. """
    with pytest.raises(backgrounds.SingularityError):
        backgrounds.build_mtheory(0, 4, 0)
    with pytest.raises(backgrounds.SingularityError):
        backgrounds.build_mtheory(1, 0, 0)


def test_mtheory_requires_square_root() -> None:
    """ Tests that q^2 must equal lambda r. """
    with pytest.raises(backgrounds.PreconditionError):
        backgrounds.build_mtheory(1, 4, 3)


def test_contraction_limit_is_r_flux() -> None:
    """ Tests that lambda -> 0 at r = 36 gives the R-flux bivector with r = 36. """
    assert backgrounds.contraction_limit() == backgrounds.build_r_flux(Rational(36))


def test_contraction_limit_needs_rational_roots() -> None:
    """ Tests that irrational sqrt(lambda r) is refused. """
    with pytest.raises(backgrounds.PreconditionError):
        backgrounds.contraction_limit(r=2)
    with pytest.raises(backgrounds.PreconditionError):
        backgrounds.contraction_limit(lambdas=(1, 1, Rational(1, 4)))


def test_build_example() -> None:
    """ Tests lookup of the built-in examples by name. """
    assert set(backgrounds.EXAMPLES) == {"r-flux", "su2", "octonion", "mtheory"}
    for name, spec in backgrounds.EXAMPLES.items():
        assert backgrounds.build_example(name).dim == spec.dim
    assert backgrounds.build_example("mtheory", lam=Rational(1, 4), r=36, q=3) \
        == backgrounds.build_mtheory(Rational(1, 4), 36, 3).bivector
    with pytest.raises(KeyError):
        backgrounds.build_example("sl2")


@pytest.mark.parametrize("name", ["r-flux", "su2", "octonion", "mtheory"])
def test_examples_satisfy_fundamental_identity(name: str) -> None:
    """ Tests the ten-term identity on every built-in bivector. """
    theta = backgrounds.build_example(name)
    assert realization.fundamental_identity_defect(theta).is_zero()
