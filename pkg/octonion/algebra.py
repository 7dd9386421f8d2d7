"""
Octonion arithmetic with exact rational components.

An octonion is X = k^0 + k^A e_A with a real part k^0 and seven imaginary
components. Products follow e_A e_B = -delta_AB + eta_ABC e_C, extended
bilinearly with 1 as unit. The algebra is neither commutative nor
associative, but it is alternative, so the jacobiator of three octonions is
a multiple of their associator:

    [X, Y, Z] = 2 (X(YZ) - (XY)Z).
"""
import numpy as np
from dataclasses import dataclass
from functools import lru_cache

from sympy import Rational

from .structure import DIM, OctonionStructure

__all__ = [
    "Octonion",
    "oct_multiply",
    "oct_commutator",
    "oct_jacobiator",
    "oct_associator",
    "jacobiator_table",
]


@lru_cache(maxsize=1)
def _standard() -> OctonionStructure:
    return OctonionStructure.standard()


@dataclass(frozen=True)
class Octonion:
    """ k^0 + k^A e_A with rational components.

    Args:
        real: The real part k^0.
        imag (tuple): The seven imaginary components k^1..k^7.
    """
    real: Rational = Rational(0)
    imag: tuple = (Rational(0),) * DIM

    def __post_init__(self):
        assert len(self.imag) == DIM
        object.__setattr__(self, "real", Rational(self.real))
        object.__setattr__(self, "imag", tuple(Rational(k) for k in self.imag))

    @classmethod
    def unit(cls, index: int) -> "Octonion":
        """ The imaginary unit e_index, 1-based; index 0 is the identity. """
        if index == 0:
            return cls(1)
        imag = [0] * DIM
        imag[index - 1] = 1
        return cls(0, tuple(imag))

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(self.real + other.real,
                        tuple(a + b for a, b in zip(self.imag, other.imag)))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(self.real - other.real,
                        tuple(a - b for a, b in zip(self.imag, other.imag)))

    def __neg__(self) -> "Octonion":
        return self.scale(-1)

    def scale(self, factor) -> "Octonion":
        factor = Rational(factor)
        return Octonion(self.real * factor, tuple(k * factor for k in self.imag))

    def is_zero(self) -> bool:
        return self.real == 0 and all(k == 0 for k in self.imag)


def oct_multiply(X: Octonion, Y: Octonion, structure: OctonionStructure | None = None) -> Octonion:
    """ The octonion product XY.

    Args:
        X (Octonion): Left factor.
        Y (Octonion): Right factor.
        structure (OctonionStructure, optional): Defaults to the standard tables.

    Returns:
        Octonion: XY.

    Examples:
        >>> oct_multiply(Octonion.unit(1), Octonion.unit(2)) == Octonion.unit(3)
        True
    """
    structure = structure or _standard()
    # Real part: x0 y0 - x.y
    real = X.real * Y.real - sum(a * b for a, b in zip(X.imag, Y.imag))
    # Imaginary part: x0 y + y0 x + eta_ABC x_A y_B e_C
    imag = [X.real * b + Y.real * a for a, b in zip(X.imag, Y.imag)]
    for a, b, c, value in structure.nonzero3():
        imag[c] += value * X.imag[a] * Y.imag[b]
    return Octonion(real, tuple(imag))


def oct_commutator(X: Octonion, Y: Octonion, structure: OctonionStructure | None = None) -> Octonion:
    """ [X, Y] = XY - YX. On imaginary units [e_A, e_B] = 2 eta_ABC e_C. """
    return oct_multiply(X, Y, structure) - oct_multiply(Y, X, structure)


def oct_jacobiator(X: Octonion, Y: Octonion, Z: Octonion,
                   structure: OctonionStructure | None = None) -> Octonion:
    """ [X, Y, Z] = 1/3 ([X, [Y, Z]] + [Z, [X, Y]] + [Y, [Z, X]]).

    On imaginary units this is -4 eta_ABCD e_D.
    """
    total = (oct_commutator(X, oct_commutator(Y, Z, structure), structure)
             + oct_commutator(Z, oct_commutator(X, Y, structure), structure)
             + oct_commutator(Y, oct_commutator(Z, X, structure), structure))
    return total.scale(Rational(1, 3))


def oct_associator(X: Octonion, Y: Octonion, Z: Octonion,
                   structure: OctonionStructure | None = None) -> Octonion:
    """ (XY)Z - X(YZ). Vanishes whenever two arguments coincide. """
    return (oct_multiply(oct_multiply(X, Y, structure), Z, structure)
            - oct_multiply(X, oct_multiply(Y, Z, structure), structure))


def jacobiator_table(structure: OctonionStructure) -> np.ndarray:
    """ Table J[A, B, C, D] of the e_D component of [e_A, e_B, e_C], 0-based.

    Entries are sympy Rationals in an object array.
    """
    units = [Octonion.unit(index + 1) for index in range(DIM)]
    table = np.empty((DIM,) * 4, dtype=object)
    for a in range(DIM):
        for b in range(DIM):
            for c in range(DIM):
                value = oct_jacobiator(units[a], units[b], units[c], structure)
                for d in range(DIM):
                    table[a, b, c, d] = value.imag[d]
    return table
