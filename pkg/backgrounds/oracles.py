"""
Closed-form checks for the built-in examples.

The octonion and su(2) realizations are known in closed form through three
functions of t = alpha^2 xt^2:

    chi(t) = -(sqrt(t) cot sqrt(t) - 1) / t      Bopp shift and mixed bracket
    phi(t) = 2 sin(2 sqrt(t)) / sqrt(t)          first correction of omega
    psi(t) = 4 sin^2(sqrt(t)) / t                second correction of omega

Their Taylor coefficients are exact rationals: chi comes from the Bernoulli
numbers in the series of z cot z, phi and psi from the sine series. chi also
solves 2 t chi' + 3 chi - 1 - t chi^2 = 0, which is checked order by order.

With these series the closed forms are expanded to a finite order in alpha
and compared with what the recurrence produced.

The M-theory bivector is the octonion one in the coordinates x = Lambda xi,
so its realization is compared with the octonion closed forms carried
through Lambda, the momenta transforming with the inverse transpose.
"""
import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from sympy import Matrix, Rational, bernoulli, factorial, sympify

from octonion import OctonionStructure, levi_civita
from poly import Poly, Substitution, VarSet, truncate
from realization import ExtendedBrackets, Realization, bopp_apply, extended_brackets, three_bracket
from tensor import ConsistencyError

from .builtin import PreconditionError, build_mtheory, build_octonion

__all__ = [
    "DEFAULT_ORACLE_CAP",
    "SeriesOracle",
    "series_oracle",
    "ode_residual",
    "closed_form_bopp_octonion",
    "closed_form_omega_octonion",
    "closed_form_mixed_octonion",
    "OracleCheck",
    "check_oracles",
]

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 6


@dataclass(frozen=True)
class SeriesOracle:
    """ Taylor coefficients c_0..c_K of chi, phi or psi in t. """
    name: str
    coefficients: tuple

    def __getitem__(self, m: int) -> Rational:
        return self.coefficients[m]

    def __len__(self) -> int:
        return len(self.coefficients)


def _chi(m: int) -> Rational:
    return -(-4) ** (m + 1) * bernoulli(2 * m + 2) / factorial(2 * m + 2)


def _phi(m: int) -> Rational:
    return Rational((-1) ** m * 4 ** (m + 1)) / factorial(2 * m + 1)


def _psi(m: int) -> Rational:
    return Rational(2 * (-1) ** m * 4 ** (m + 1)) / factorial(2 * m + 2)


_SERIES = {"chi": _chi, "phi": _phi, "psi": _psi}


def series_oracle(name: str, K: int, cap: int = DEFAULT_ORACLE_CAP) -> SeriesOracle:
    """ Exact Taylor coefficients of one of the closed-form functions.

    Args:
        name (str): "chi", "phi" or "psi".
        K (int): Highest coefficient index.
        cap (int): Largest K allowed.

    Returns:
        SeriesOracle: c_0..c_K.

    Raises:
        PreconditionError: If K exceeds the cap.
        KeyError: If the name is unknown.

    Examples:
        >>> series_oracle("chi", 2).coefficients
        (1/3, 1/45, 2/945)
    """
    if K > cap:
        raise PreconditionError(f"oracle order {K} exceeds the cap {cap}")
    series = _SERIES[name]
    return SeriesOracle(name, tuple(Rational(series(m)) for m in range(K + 1)))


def ode_residual(oracle: SeriesOracle) -> list[Rational]:
    """ Coefficients of 2 t chi' + 3 chi - 1 - t chi^2, up to the oracle's order. """
    c = oracle.coefficients
    residual = []
    for m in range(len(c)):
        value = (2 * m + 3) * c[m] - (1 if m == 0 else 0)
        value -= sum((c[a] * c[m - 1 - a] for a in range(m)), Rational(0))
        residual.append(value)
    return residual


def _tables(example: str) -> tuple[VarSet, np.ndarray, np.ndarray | None]:
    if example == "octonion":
        structure = OctonionStructure.standard()
        return VarSet(7), structure.eta3, structure.eta4
    if example == "su2":
        return VarSet(3), levi_civita(3), None
    raise KeyError(f"no closed form for {example!r}")


def _contract(varset: VarSet, table: np.ndarray, u: list, v: list, a: int) -> Poly:
    """ table[a, b, c] u_b v_c. """
    total = varset.zero()
    for b in range(varset.dim):
        for c in range(varset.dim):
            if table[a, b, c] and u[b] and v[c]:
                total += u[b] * v[c] * int(table[a, b, c])
    return total


def _momenta(varset: VarSet) -> tuple[list, list, Poly, Poly]:
    y = [varset.y(i) for i in range(varset.dim)]
    pi = [varset.pi(i) for i in range(varset.dim)]
    square = sum((p * p for p in pi), varset.zero())
    dot = sum((a * b for a, b in zip(y, pi)), varset.zero())
    return y, pi, square, dot


def closed_form_bopp_octonion(K: int, example: str = "octonion",
                              cap: int = DEFAULT_ORACLE_CAP) -> list[Poly]:
    """ The closed-form Bopp shift expanded mod alpha^{K+1}:

        x_A = y_A - alpha eta_ABC pi_B y_C
              - sum_m c_m alpha^{2m+2} (y_A pi^2 - pi_A y.pi)(pi^2)^m,  c = chi.

    Args:
        K (int): The alpha order.
        example (str): "octonion", or "su2" for the eps version.
        cap (int): Oracle cap.

    Returns:
        list[Poly]: x_A for every A, in Darboux variables.
    """
    varset, eta3, _ = _tables(example)
    chi = series_oracle("chi", max(0, (K - 2) // 2), cap)
    y, pi, square, dot = _momenta(varset)
    alpha = varset.alpha
    images = []
    for a in range(varset.dim):
        x = y[a] - alpha * _contract(varset, eta3, pi, y, a)
        for m in range((K - 2) // 2 + 1 if K >= 2 else 0):
            x -= alpha ** (2 * m + 2) * (y[a] * square - pi[a] * dot) * square ** m * chi[m]
        images.append(truncate(x, K + 1))
    return images


def closed_form_omega_octonion(K: int, example: str = "octonion",
                               cap: int = DEFAULT_ORACLE_CAP) -> tuple:
    """ The closed-form omega(x, xt) expanded mod alpha^{K+1}:

        omega_AB = 2 eta_ABC x_C
                   + alpha phi(alpha^2 xt^2) eta_ABCD xt_C x_D
                   + alpha^2 psi(alpha^2 xt^2) eta_ABCD eta_DEF xt_C xt_E x_F.

    The su(2) version has no rank-four table and omega = 2 eps_ijk x_k.

    Args:
        K (int): The alpha order.
        example (str): "octonion" or "su2".
        cap (int): Oracle cap.

    Returns:
        tuple: omega as an N x N matrix, doubled-frame slots.
    """
    varset, eta3, eta4 = _tables(example)
    x, xt, square, _ = _momenta(varset)
    alpha = varset.alpha
    n = varset.dim
    phi = series_oracle("phi", max(0, (K - 1) // 2), cap)
    psi = series_oracle("psi", max(0, (K - 2) // 2), cap)
    rows = [[varset.zero() for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            value = sum((x[c] * (2 * int(eta3[a, b, c])) for c in range(n) if eta3[a, b, c]),
                        varset.zero())
            if eta4 is not None:
                first = varset.zero()
                second = varset.zero()
                for c in range(n):
                    for d in range(n):
                        if not eta4[a, b, c, d]:
                            continue
                        weight = int(eta4[a, b, c, d])
                        first += xt[c] * x[d] * weight
                        second += xt[c] * _contract(varset, eta3, xt, x, d) * weight
                for m in range((K - 1) // 2 + 1 if K >= 1 else 0):
                    value += alpha ** (2 * m + 1) * square ** m * first * phi[m]
                for m in range((K - 2) // 2 + 1 if K >= 2 else 0):
                    value += alpha ** (2 * m + 2) * square ** m * second * psi[m]
            value = truncate(value, K + 1)
            rows[a][b], rows[b][a] = value, -value
    return tuple(tuple(row) for row in rows)


def closed_form_mixed_octonion(K: int, example: str = "octonion",
                               cap: int = DEFAULT_ORACLE_CAP) -> tuple:
    """ The closed-form mixed bracket {x_A, xt_B} expanded mod alpha^{K+1}:

        delta_AB + alpha eta_ABC xt_C - chi(alpha^2 xt^2) alpha^2 (delta_AB xt^2 - xt_A xt_B).

    Args:
        K (int): The alpha order.
        example (str): "octonion" or "su2".
        cap (int): Oracle cap.

    Returns:
        tuple: The N x N matrix, doubled-frame slots.
    """
    varset, eta3, _ = _tables(example)
    _, xt, square, _ = _momenta(varset)
    alpha = varset.alpha
    n = varset.dim
    chi = series_oracle("chi", max(0, (K - 2) // 2), cap)
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            value = varset.one() if a == b else varset.zero()
            value += alpha * sum((xt[c] * int(eta3[a, b, c]) for c in range(n) if eta3[a, b, c]),
                                 varset.zero())
            block = (square if a == b else varset.zero()) - xt[a] * xt[b]
            for m in range((K - 2) // 2 + 1 if K >= 2 else 0):
                value -= alpha ** (2 * m + 2) * square ** m * block * chi[m]
            row.append(truncate(value, K + 1))
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class OracleCheck:
    name: str
    passed: bool
    detail: str = ""


def _compare(name: str, computed, expected) -> OracleCheck:
    if computed == expected:
        return OracleCheck(name, True)
    return OracleCheck(name, False, "computed value differs from the closed form")


def _closed_forms(example: str, n: int, cap: int) -> tuple[list, tuple, tuple]:
    """ The closed-form Bopp shift, {x, x} and {x, xt}, all mod alpha^{n+1}. """
    bopp = closed_form_bopp_octonion(n, example, cap)
    alpha = _tables(example)[0].alpha
    omega = closed_form_omega_octonion(max(n - 1, 0), example, cap)
    x_x = tuple(tuple(truncate(alpha * value, n + 1) for value in row) for row in omega)
    return bopp, x_x, closed_form_mixed_octonion(n, example, cap)


def _sandwich(varset: VarSet, left: Matrix, matrix, right: Matrix) -> tuple:
    """ left . matrix . right for rational matrices around a matrix of polynomials. """
    dim = varset.dim
    rows = []
    for a in range(dim):
        row = []
        for b in range(dim):
            total = varset.zero()
            for c in range(dim):
                if left[a, c] == 0:
                    continue
                for d in range(dim):
                    if right[d, b] != 0 and matrix[c][d]:
                        total += matrix[c][d] * (left[a, c] * right[d, b])
            row.append(total)
        rows.append(tuple(row))
    return tuple(rows)


def _transform_closed_forms(forms: tuple, transform: Matrix, varset: VarSet) -> tuple[list, tuple, tuple]:
    """ The closed forms in the coordinates x = L xi, with the momenta transformed contragrediently.

    The octonion variables are xi = L^{-1} x and pi_xi = L^T pi, so

        x^A = L^{AA'} x_xi^{A'},   {x^A, x^B} = L^{AA'} L^{BB'} {xi, xi}^{A'B'},
        {x^A, pi_B} = L^{AA'} {xi, pi_xi}_{A'B'} L^{-1}_{B'B},

    all evaluated at (L^{-1} y, L^T pi).
    """
    L, Linv = transform, transform.inv()
    dim = varset.dim
    assignment = {}
    for a in range(dim):
        assignment[varset.y(a)] = sum((varset.y(b) * Linv[a, b] for b in range(dim) if Linv[a, b] != 0),
                                      varset.zero())
        assignment[varset.pi(a)] = sum((varset.pi(b) * L[b, a] for b in range(dim) if L[b, a] != 0),
                                       varset.zero())
    change = Substitution(assignment)
    bopp, x_x, mixed = forms
    bopp = [change(value) for value in bopp]
    x_x = [[change(value) for value in row] for row in x_x]
    mixed = [[change(value) for value in row] for row in mixed]
    bopp = [sum((bopp[c] * L[a, c] for c in range(dim) if L[a, c] != 0), varset.zero()) for a in range(dim)]
    return bopp, _sandwich(varset, L, x_x, L.T), _sandwich(varset, L, mixed, Linv)


def _compare_realization(real: Realization, n: int, forms: tuple,
                         brackets: ExtendedBrackets | None) -> list[OracleCheck]:
    """ Bopp shift, {x, x} and {x, xt} of a realization against closed forms mod alpha^{n+1}. """
    bopp, x_x, mixed = forms
    computed = [truncate(x, n + 1) for x in bopp_apply(real, real.order)]
    checks = [_compare("bopp", computed, list(bopp))]
    if brackets is None:
        try:
            brackets = extended_brackets(real)
        except ConsistencyError as error:
            logger.warning("no extended brackets to compare: %s", error)
            return checks + [OracleCheck("omega", False, str(error)), OracleCheck("mixed", False, str(error))]
    for name, table, expected in (("omega", brackets.x_x, x_x), ("mixed", brackets.x_xt, mixed)):
        computed = tuple(tuple(truncate(value, n + 1) for value in row) for row in table)
        checks.append(_compare(name, computed, tuple(tuple(row) for row in expected)))
    return checks


def _jacobiator_check(real: Realization, table: np.ndarray) -> OracleCheck:
    """ {x^A, x^B, x^C} = -4 alpha^2 table[A, B, C, D] x^D, through the three-bracket. """
    varset = real.varset
    y = [varset.y(a) for a in range(varset.dim)]
    for a, b, c in combinations(range(varset.dim), 3):
        expected = varset.zero()
        for d in range(varset.dim):
            if table[a, b, c, d] != 0:
                expected += y[d] * (-4 * sympify(table[a, b, c, d]))
        if three_bracket(y[a], y[b], y[c], real.source, real.jacobiator) != varset.alpha ** 2 * expected:
            return OracleCheck("jacobiator", False, f"component ({a + 1}, {b + 1}, {c + 1}) differs")
    return OracleCheck("jacobiator", True)


def check_oracles(example: str, real: Realization, cap: int = DEFAULT_ORACLE_CAP,
                  brackets: ExtendedBrackets | None = None, **params) -> list[OracleCheck]:
    """ Compares a realization of a built-in example with its closed forms.

    The M-theory realization is compared with the octonion closed forms
    carried through its transform Lambda.

    Args:
        example (str): The example name the realization was built from.
        real (Realization): The realization.
        cap (int): Oracle cap; the comparison order is min(real.order, cap).
        brackets (ExtendedBrackets, optional): extended_brackets(real), computed if not given.
        **params: lam, r, q for the mtheory example.

    Returns:
        list[OracleCheck]: One entry per comparison that applies.
    """
    checks = []
    n = min(real.order, cap)
    if example in ("octonion", "su2"):
        checks += _compare_realization(real, n, _closed_forms(example, n, cap), brackets)
        chi = series_oracle("chi", cap, cap)
        checks.append(OracleCheck("chi-ode", not any(ode_residual(chi))))
        if example == "octonion":
            checks.append(_jacobiator_check(real, OctonionStructure.standard().eta4))
    elif example == "r-flux":
        higher = real.gamma[1:] + real.theta_corr[1:]
        checks.append(OracleCheck("terminates", all(tensor.is_zero() for tensor in higher)))
    elif example == "mtheory":
        background = build_mtheory(params.get("lam", 1), params.get("r", 4), params.get("q", 2))
        varset = real.varset
        checks.append(_jacobiator_check(real, background.lambda4))

        # Theta(x) = L Theta_xi(L^{-1} x) L^T
        L, Linv = background.transform, background.transform.inv()
        images = [sum((varset.y(b) * Linv[a, b] for b in range(7) if Linv[a, b] != 0), varset.zero())
                  for a in range(7)]
        transformed = _sandwich(varset, L, build_octonion().evaluate(images), L.T)
        checks.append(_compare("bivector", real.source.matrix, transformed))

        forms = _transform_closed_forms(_closed_forms("octonion", n, cap), background.transform, varset)
        checks += _compare_realization(real, n, forms, brackets)
    logger.debug("oracle checks for %s: %s", example, [(check.name, check.passed) for check in checks])
    return checks
