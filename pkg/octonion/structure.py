"""
Structure constants of the imaginary octonions.

The seven imaginary units multiply as e_A e_B = -delta_AB + eta_ABC e_C, with
eta totally antisymmetric and equal to +1 on the seven triples

    123, 435, 471, 516, 572, 624, 673.

A second, rank-four table eta_ABDE enters every contraction of two eta's:

    eta_ABC eta_DEC = delta_AD delta_BE - delta_AE delta_BD + eta_ABDE.

Tables are generated from seed tuples and closed under index permutations
rather than typed in by hand. The rank-three seeds are taken as the
reference. The rank-four table is derived from them through the contraction
identity above, which makes it agree with the commonly printed seed list
1267, 1425, 1537, 3256 and differ in sign on 1346, 3247, 4567.
OctonionStructure.from_printed_seeds() keeps the printed list so the sweep
can point at the disagreement.

All tables are small numpy integer arrays and every identity is checked over
all index tuples with np.einsum.
"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from tensor import permutation_sign

__all__ = [
    "ETA3_SEEDS",
    "ETA4_SEEDS",
    "OctonionStructure",
    "CheckResult",
    "ContractionReport",
    "verify_contractions",
    "levi_civita",
]

ETA3_SEEDS = ((1, 2, 3), (4, 3, 5), (4, 7, 1), (5, 1, 6), (5, 7, 2), (6, 2, 4), (6, 7, 3))
ETA4_SEEDS = ((1, 2, 6, 7), (1, 3, 4, 6), (1, 4, 2, 5), (1, 5, 3, 7),
              (3, 2, 4, 7), (3, 2, 5, 6), (4, 5, 6, 7))

DIM = 7


def _table_from_seeds(seeds: tuple, rank: int) -> np.ndarray:
    """ Totally antisymmetric table with value +1 on each (1-based) seed. """
    table = np.zeros((DIM,) * rank, dtype=np.int64)
    for seed in seeds:
        for order in itertools.permutations(range(rank)):
            index = tuple(seed[position] - 1 for position in order)
            table[index] = permutation_sign(order)
    return table


def levi_civita(rank: int) -> np.ndarray:
    """ The alternating symbol in `rank` dimensions, epsilon_{12...rank} = +1. """
    table = np.zeros((rank,) * rank, dtype=np.int64)
    for order in itertools.permutations(range(rank)):
        table[order] = permutation_sign(order)
    return table


@dataclass(frozen=True)
class OctonionStructure:
    """ The eta_ABC and eta_ABDE tables, 0-based numpy arrays.

    Args:
        eta3 (np.ndarray): Shape (7, 7, 7), entries in {-1, 0, 1}.
        eta4 (np.ndarray): Shape (7, 7, 7, 7), entries in {-1, 0, 1}.
    """
    eta3: np.ndarray = field(compare=False)
    eta4: np.ndarray = field(compare=False)

    def __post_init__(self):
        assert self.eta3.shape == (DIM,) * 3
        assert self.eta4.shape == (DIM,) * 4

    @classmethod
    def standard(cls) -> "OctonionStructure":
        """ eta3 from the seeds, eta4 derived through the contraction identity. """
        eta3 = _table_from_seeds(ETA3_SEEDS, 3)
        delta = np.eye(DIM, dtype=np.int64)
        eta4 = (np.einsum("abc,dec->abde", eta3, eta3)
                - np.einsum("ad,be->abde", delta, delta)
                + np.einsum("ae,bd->abde", delta, delta))
        return cls(eta3, eta4)

    @classmethod
    def from_printed_seeds(cls) -> "OctonionStructure":
        """ Both tables taken directly from the printed seed lists. """
        return cls(_table_from_seeds(ETA3_SEEDS, 3), _table_from_seeds(ETA4_SEEDS, 4))

    def nonzero3(self) -> list[tuple[int, int, int, int]]:
        """ (A, B, C, value) for every nonzero eta_ABC, 0-based. """
        return [(int(a), int(b), int(c), int(self.eta3[a, b, c]))
                for a, b, c in zip(*np.nonzero(self.eta3))]


@dataclass(frozen=True)
class CheckResult:
    """ Outcome of one exhaustive identity sweep.

    Attributes:
        name (str): Which identity was swept.
        passed (bool): True if it held on every index tuple.
        checked (int): Number of index tuples compared.
        counterexample (tuple | None): First failing 1-based index tuple.
        detail (str): Human-readable note, e.g. the orientation found.
    """
    name: str
    passed: bool
    checked: int
    counterexample: tuple | None = None
    detail: str = ""


@dataclass(frozen=True)
class ContractionReport:
    checks: tuple[CheckResult, ...]
    duality_orientation: int

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> CheckResult:
        for result in self.checks:
            if result.name == name:
                return result
        raise KeyError(name)


def _compare(name: str, lhs: np.ndarray, rhs: np.ndarray, detail: str = "") -> CheckResult:
    mismatch = np.argwhere(lhs != rhs)
    if len(mismatch) == 0:
        return CheckResult(name, True, lhs.size, None, detail)
    first = tuple(int(i) + 1 for i in mismatch[0])
    return CheckResult(name, False, lhs.size, first, detail)


def verify_contractions(structure: OctonionStructure | None = None) -> ContractionReport:
    """ Sweeps the octonion identities over every index tuple.

    Checks, in this order:
        antisymmetry: both tables alternate under every index swap.
        contraction: eta_ABC eta_DEC = delta_AD delta_BE - delta_AE delta_BD + eta_ABDE.
        duality: eta_ABDE = s/6 epsilon_ABDEFGH eta_FGH for an orientation s = +1 or -1.
        mixed: eta_AEF eta_ABCD = delta_EB eta_FCD - delta_FB eta_ECD + delta_EC eta_BFD
               - delta_FC eta_BED + delta_ED eta_BCF - delta_FD eta_BCE.
        jacobiator: [e_A, e_B, e_C] = -4 eta_ABCD e_D on all index triples.

    Args:
        structure (OctonionStructure, optional): Defaults to the standard tables.

    Returns:
        ContractionReport: One CheckResult per identity, and the orientation
            of the duality (0 if neither orientation holds).
    """
    # Avoid a circular import, the algebra module needs the tables too
    from .algebra import jacobiator_table

    if structure is None:
        structure = OctonionStructure.standard()
    eta3, eta4 = structure.eta3, structure.eta4
    delta = np.eye(DIM, dtype=np.int64)
    checks = []

    # Antisymmetry of both tables under adjacent swaps
    swapped3 = all(np.array_equal(eta3, -np.swapaxes(eta3, a, a + 1)) for a in range(2))
    swapped4 = all(np.array_equal(eta4, -np.swapaxes(eta4, a, a + 1)) for a in range(3))
    checks.append(CheckResult("antisymmetry", swapped3 and swapped4, eta3.size + eta4.size))

    # Contraction of two rank-three tables
    lhs = np.einsum("abc,dec->abde", eta3, eta3)
    rhs = (np.einsum("ad,be->abde", delta, delta)
           - np.einsum("ae,bd->abde", delta, delta) + eta4)
    checks.append(_compare("contraction", lhs, rhs))

    # Duality with the seven-dimensional alternating symbol
    dual = np.einsum("abdefgh,fgh->abde", levi_civita(DIM), eta3) // 6
    orientation = 0
    if np.array_equal(eta4, dual):
        orientation = 1
    elif np.array_equal(eta4, -dual):
        orientation = -1
    if orientation:
        checks.append(CheckResult("duality", True, eta4.size, None, f"orientation {orientation:+d}"))
    else:
        checks.append(_compare("duality", eta4, dual, "no orientation matches"))

    # Mixed contraction of a rank-three with a rank-four table, free indices (E, F, B, C, D)
    lhs = np.einsum("aef,abcd->efbcd", eta3, eta4)
    rhs = (np.einsum("eb,fcd->efbcd", delta, eta3)
           - np.einsum("fb,ecd->efbcd", delta, eta3)
           + np.einsum("ec,bfd->efbcd", delta, eta3)
           - np.einsum("fc,bed->efbcd", delta, eta3)
           + np.einsum("ed,bcf->efbcd", delta, eta3)
           - np.einsum("fd,bce->efbcd", delta, eta3))
    checks.append(_compare("mixed", lhs, rhs))

    # Jacobiator of the imaginary units
    jacobiators = jacobiator_table(structure)
    expected = -4 * eta4
    checks.append(_compare("jacobiator", jacobiators, expected))

    return ContractionReport(tuple(checks), orientation)
