"""
Built-in bivectors: the constant R-flux algebra, su(2), the imaginary
octonions and the M-theory uplift of the R-flux algebra.

    r-flux      {x^i, x^j} = r eps_ijk p_k, {x^i, p_j} = delta_ij, {p_i, p_j} = 0
    su2         {xi_i, xi_j} = 2 eps_ijk xi_k
    octonion    {xi_A, xi_B} = 2 eta_ABC xi_C
    mtheory     {x^A, x^B} = 2 lambda^{ABC} x^C, the octonion brackets in the
                coordinates x = Lambda xi

The M-theory transform Lambda contains sqrt(lambda r) and sqrt(lambda^3 r).
Instead of extending the coefficient field it is built at rational
instantiations (lambda, r, q) with q^2 = lambda r, so everything stays exact.
Coordinates of the 7-dimensional backgrounds are 1-based (x1, x2, x3, x4,
p1, p2, p3) for mtheory and (xi1..xi7) for the octonions.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from sympy import Matrix, Rational, sqrt

from octonion import OctonionStructure, levi_civita
from poly import VarSet
from realization import Bivector

__all__ = [
    "PreconditionError",
    "SingularityError",
    "ExampleSpec",
    "MTheoryBackground",
    "EXAMPLES",
    "build_r_flux",
    "build_su2",
    "build_octonion",
    "build_mtheory",
    "lambda_tensors",
    "contraction_limit",
    "build_example",
]

logger = logging.getLogger(__name__)

DEFAULT_CONTRACTION_LAMBDAS = (Rational(1), Rational(1, 4), Rational(1, 9))


class PreconditionError(ValueError):
    """ Raised when example parameters violate their stated relation. """


class SingularityError(ValueError):
    """ Raised when the M-theory transform is not invertible. """


def build_r_flux(r: Rational | None = None) -> Bivector:
    """ The constant R-flux bivector on phase space (x1, x2, x3, p1, p2, p3).

    Args:
        r (Rational, optional): A value for r = l_s^3 R / hbar^2. If omitted,
            r is kept as the symbolic parameter "r".

    Returns:
        Bivector: Theta^{ij} = r eps_ijk p_k, Theta^{i, j+3} = delta_ij.
    """
    varset = VarSet(6, ("r",)) if r is None else VarSet(6)
    coupling = varset.param("r") if r is None else varset.constant(r)
    eps = levi_civita(3)
    entries = {}
    for i in range(3):
        for j in range(i + 1, 3):
            k = 3 - i - j
            entries[(i, j)] = coupling * int(eps[i, j, k]) * varset.y(3 + k)
        entries[(i, 3 + i)] = varset.one()
    return Bivector.from_entries(varset, entries)


def _lie_bivector(varset: VarSet, table: np.ndarray, scale: int = 2) -> Bivector:
    """ Theta^{AB} = scale * table[A, B, C] x_C. """
    entries = {}
    for a, b, c in zip(*np.nonzero(table)):
        if a < b:
            entries[(int(a), int(b))] = entries.get((int(a), int(b)), varset.zero()) \
                + varset.y(int(c)) * (scale * int(table[a, b, c]))
    return Bivector.from_entries(varset, entries)


def build_su2() -> Bivector:
    """ The su(2) Lie-Poisson bivector Theta^{ij} = 2 eps_ijk xi_k. """
    return _lie_bivector(VarSet(3), levi_civita(3))


def build_octonion(structure: OctonionStructure | None = None) -> Bivector:
    """ The octonion bivector Theta^{AB} = 2 eta_ABC xi_C.

    Args:
        structure (OctonionStructure, optional): Defaults to the standard tables.

    Returns:
        Bivector: A quasi-Poisson bivector in seven dimensions.
    """
    structure = structure or OctonionStructure.standard()
    return _lie_bivector(VarSet(7), structure.eta3)


@dataclass(frozen=True)
class MTheoryBackground:
    """ The M-theory bivector together with the transform that produced it.

    Attributes:
        bivector (Bivector): Theta^{AB} = 2 lambda^{ABC} x^C.
        transform (Matrix): Lambda, with x = Lambda xi.
        lambda3 (np.ndarray): lambda^{ABC}, object array of Rationals.
        lambda4 (np.ndarray): lambda^{ABCD}, object array of Rationals.
    """
    bivector: Bivector
    transform: Matrix = field(compare=False)
    lambda3: np.ndarray = field(compare=False)
    lambda4: np.ndarray = field(compare=False)


def _transform(lam: Rational, q: Rational) -> Matrix:
    # Rows (x1..x3, x4, p1..p3), columns (xi1..xi3, xi4..xi6, xi7), hbar = 1
    transform = Matrix.zeros(7, 7)
    for i in range(3):
        transform[i, 3 + i] = q / 2
        transform[4 + i, i] = -lam / 2
    transform[3, 6] = lam * q / 2
    return transform


def lambda_tensors(transform: Matrix, structure: OctonionStructure | None = None) -> tuple[np.ndarray, np.ndarray]:
    """ The octonion tables carried through a linear change of coordinates,

        lambda^{ABC} = L^{AA'} L^{BB'} eta_{A'B'C'} L^{-1}_{C'C},
        lambda^{ABCD} = L^{AA'} L^{BB'} L^{CC'} eta_{A'B'C'D'} L^{-1}_{D'D}.

    Args:
        transform (Matrix): The invertible 7 x 7 matrix L.
        structure (OctonionStructure, optional): Defaults to the standard tables.

    Returns:
        np.ndarray: lambda^{ABC}, object array of Rationals.
        np.ndarray: lambda^{ABCD}, object array of Rationals.

    Raises:
        SingularityError: If the matrix is not invertible.
    """
    structure = structure or OctonionStructure.standard()
    if transform.det() == 0:
        raise SingularityError("the transform is singular")
    inverse = transform.inv()
    L = np.array(transform.tolist(), dtype=object)
    Linv = np.array(inverse.tolist(), dtype=object)
    lam3 = np.full((7, 7, 7), Rational(0), dtype=object)
    for a1, b1, c1 in zip(*np.nonzero(structure.eta3)):
        value = int(structure.eta3[a1, b1, c1])
        for a in range(7):
            if L[a, a1] == 0:
                continue
            for b in range(7):
                if L[b, b1] == 0:
                    continue
                for c in range(7):
                    if Linv[c1, c] != 0:
                        lam3[a, b, c] += L[a, a1] * L[b, b1] * value * Linv[c1, c]
    lam4 = np.full((7, 7, 7, 7), Rational(0), dtype=object)
    for a1, b1, c1, d1 in zip(*np.nonzero(structure.eta4)):
        value = int(structure.eta4[a1, b1, c1, d1])
        for a in range(7):
            if L[a, a1] == 0:
                continue
            for b in range(7):
                if L[b, b1] == 0:
                    continue
                for c in range(7):
                    if L[c, c1] == 0:
                        continue
                    for d in range(7):
                        if Linv[d1, d] != 0:
                            lam4[a, b, c, d] += L[a, a1] * L[b, b1] * L[c, c1] * value * Linv[d1, d]
    return lam3, lam4


def build_mtheory(lam=1, r=4, q=2, structure: OctonionStructure | None = None) -> MTheoryBackground:
    """ The M-theory R-flux bivector at a rational instantiation.

    Args:
        lam: The M-theory radius parameter lambda.
        r: The flux parameter r = l_s^3 R / hbar^2.
        q: sqrt(lambda r), which must be rational.
        structure (OctonionStructure, optional): Defaults to the standard tables.

    Returns:
        MTheoryBackground: The bivector in coordinates (x1, x2, x3, x4, p1, p2, p3),
            the transform and the transformed tables.

    Raises:
        SingularityError: If any parameter is zero.
        PreconditionError: If q^2 != lambda r.

    Examples:
        >>> build_mtheory(1, 4, 2).bivector(0, 1)   # {x1, x2} = r p3
        4*x7
    """
    lam, r, q = Rational(lam), Rational(r), Rational(q)
    transform = _transform(lam, q)
    if lam == 0 or r == 0 or transform.det() == 0:
        raise SingularityError(f"Lambda is singular at lambda={lam}, r={r}, q={q}")
    if q ** 2 != lam * r:
        raise PreconditionError(f"q^2 must equal lambda*r, got q={q}, lambda={lam}, r={r}")
    lam3, lam4 = lambda_tensors(transform, structure)
    varset = VarSet(7)
    entries = {}
    for a in range(7):
        for b in range(a + 1, 7):
            value = varset.zero()
            for c in range(7):
                if lam3[a, b, c] != 0:
                    value += varset.y(c) * (2 * lam3[a, b, c])
            if value:
                entries[(a, b)] = value
    logger.debug("M-theory bivector at lambda=%s, r=%s has %d entries", lam, r, len(entries))
    return MTheoryBackground(Bivector.from_entries(varset, entries), transform, lam3, lam4)


def contraction_limit(r=36, lambdas: tuple = DEFAULT_CONTRACTION_LAMBDAS) -> Bivector:
    """ The lambda -> 0 limit of the M-theory bivector at fixed r.

    Each entry of the M-theory bivector is a polynomial in lambda of degree
    at most two. It is sampled at the given lambdas and extrapolated to zero
    by Lagrange interpolation. In the limit x4 is central and set to 1, and
    the remaining coordinates (x1, x2, x3, p1, p2, p3) carry a bivector that
    should be the R-flux bivector with the same r.

    Args:
        r: The flux parameter.
        lambdas (tuple): At least three distinct nonzero values with
            lambda * r a rational square.

    Returns:
        Bivector: The contracted bivector in six dimensions.

    Raises:
        PreconditionError: If a sqrt(lambda r) is irrational, or fewer than
            three sample points are given.
    """
    r = Rational(r)
    lambdas = tuple(Rational(lam) for lam in lambdas)
    if len(set(lambdas)) < 3:
        raise PreconditionError("need at least three distinct lambdas for a quadratic extrapolation")
    samples = []
    for lam in lambdas:
        q = sqrt(lam * r)
        if not q.is_rational:
            raise PreconditionError(f"sqrt(lambda*r) is irrational at lambda={lam}")
        samples.append(build_mtheory(lam, r, q).bivector)

    # Lagrange weights of the samples at lambda = 0
    weights = []
    for t, lam_t in enumerate(lambdas):
        weight = Rational(1)
        for s, lam_s in enumerate(lambdas):
            if s != t:
                weight *= -lam_s / (lam_t - lam_s)
        weights.append(weight)

    source = VarSet(7)
    limit = {}
    for a in range(7):
        for b in range(a + 1, 7):
            limit[(a, b)] = sum((sample(a, b) * weight for sample, weight in zip(samples, weights)),
                                source.zero())

    # Drop the central x4 and set it to 1
    target = VarSet(6)
    keep = [0, 1, 2, 4, 5, 6]
    entries = {}
    for (a, b), value in limit.items():
        if a == 3 or b == 3 or not value:
            continue
        terms = {}
        for monom, coeff in value.items():
            exponents = [monom[source.y_slot(slot)] for slot in keep]
            key = (0,) + tuple(exponents) + (0,) * 6
            terms[key] = terms.get(key, 0) + coeff
        entries[(keep.index(a), keep.index(b))] = target.ring.from_dict(terms)
    return Bivector.from_entries(target, entries)


@dataclass(frozen=True)
class ExampleSpec:
    """ A named built-in example.

    Attributes:
        name (str): Name used on the command line.
        dim (int): Dimension of the base.
        params (tuple[str, ...]): Symbolic parameters of the bivector.
        description (str): One line for the examples listing.
        oracle (str): Which closed-form checks apply.
        build (Callable): Builds the bivector; mtheory takes (lam, r, q).
    """
    name: str
    dim: int
    params: tuple
    description: str
    oracle: str
    build: Callable = field(compare=False)


EXAMPLES = {
    "r-flux": ExampleSpec("r-flux", 6, ("r",), "constant non-geometric R-flux phase space",
                          "r-flux", lambda **_: build_r_flux()),
    "su2": ExampleSpec("su2", 3, (), "su(2) Lie-Poisson structure, 2 eps_ijk xi_k",
                       "su2", lambda **_: build_su2()),
    "octonion": ExampleSpec("octonion", 7, (), "imaginary octonions, 2 eta_ABC xi_C",
                            "octonion", lambda **_: build_octonion()),
    "mtheory": ExampleSpec("mtheory", 7, (), "M-theory R-flux at rational lambda, r, q",
                           "mtheory", lambda lam=1, r=4, q=2, **_: build_mtheory(lam, r, q).bivector),
}


def build_example(name: str, **params) -> Bivector:
    """ Builds a built-in example by name.

    Raises:
        KeyError: If the name is unknown.
    """
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}, choose from {', '.join(EXAMPLES)}")
    return EXAMPLES[name].build(**params)
