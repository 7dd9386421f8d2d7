"""
Coefficient tensors of the Bopp shift and quasi-Poisson recurrences.

Every order of the recurrence produces a polynomial of the form

    sum over j_1..j_n of T^{lead; j_1...j_n}(y) pi_{j_1} ... pi_{j_n},

one per lead index tuple (i, or ij, or ijk). The tail indices j_1..j_n are
symmetric, so only the sorted tail is stored. The lead indices may be
antisymmetric, in which case only the ascending lead is stored and the other
orderings are read back with the sign of the permutation.

Converting between the polynomial and the tensor is where the factors go
wrong: the pi-monomial with multiplicities (m_1, ..., m_N) collects
n!/(m_1!...m_N!) equal tensor components, so extraction divides by that
count and assembly multiplies by it.

Indices are 0-based here and 1-based in every printed report.
"""
import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import factorial
from sympy.polys.domains import QQ

from poly import Poly, VarSet

__all__ = [
    "DegreeError",
    "ConsistencyError",
    "LeadSymmetry",
    "SymTensor",
    "Trivector",
    "multinomial",
    "permutation_sign",
    "extract_tensor",
    "assemble",
]


class DegreeError(ValueError):
    """ Raised when a polynomial is not homogeneous in the momenta. """


class ConsistencyError(ValueError):
    """ Raised when a consistency condition of the recurrence fails.

    Attributes:
        defect: The offending tensor or table, so the failure can be inspected.
        order (int | None): The order of the recurrence at which it failed.
    """

    def __init__(self, message: str, defect=None, order: int | None = None):
        super().__init__(message)
        self.defect = defect
        self.order = order


class LeadSymmetry(enum.Enum):
    NONE = "none"
    ANTISYM_PAIR = "antisym-pair"
    ANTISYM_TRIPLE = "antisym-triple"


def permutation_sign(indices: tuple) -> int:
    """ Sign of the permutation sorting indices, 0 if an index repeats.

    Examples:
        >>> permutation_sign((2, 0, 1))
        1
        >>> permutation_sign((1, 0))
        -1
    """
    if len(set(indices)) != len(indices):
        return 0
    sign = 1
    for a, b in itertools.combinations(range(len(indices)), 2):
        if indices[a] > indices[b]:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def multinomial(tail: tuple) -> int:
    """ Number of distinct orderings of the multiset tail, n!/(m_1!...m_N!). """
    count = factorial(len(tail))
    for index in set(tail):
        count /= factorial(tail.count(index))
    return int(count)


@dataclass(frozen=True)
class SymTensor:
    """ A tensor with a lead group of indices and a symmetric tail.

    Args:
        varset (VarSet): The variable set the entries live in.
        lead_arity (int): Number of lead indices (0 to 4).
        tail_arity (int): Number of symmetric tail indices.
        symmetry (LeadSymmetry): Symmetry of the lead group.
        entries (dict): Maps (canonical lead, sorted tail) to a nonzero Poly.
    """
    varset: VarSet
    lead_arity: int
    tail_arity: int
    symmetry: LeadSymmetry = LeadSymmetry.NONE
    entries: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        assert 0 <= self.lead_arity <= 4
        assert self.tail_arity >= 0
        if self.symmetry is LeadSymmetry.ANTISYM_PAIR:
            assert self.lead_arity == 2
        if self.symmetry is LeadSymmetry.ANTISYM_TRIPLE:
            assert self.lead_arity == 3

    @property
    def dim(self) -> int:
        return self.varset.dim

    @classmethod
    def from_function(cls, varset: VarSet, lead_arity: int, tail_arity: int,
                      symmetry: LeadSymmetry, value) -> "SymTensor":
        """ Builds a tensor by calling value(lead, tail) on every canonical slot. """
        entries = {}
        for lead in cls.canonical_leads(varset.dim, lead_arity, symmetry):
            for tail in cls.canonical_tails(varset.dim, tail_arity):
                poly = value(lead, tail)
                if poly:
                    entries[(lead, tail)] = poly
        return cls(varset, lead_arity, tail_arity, symmetry, entries)

    @staticmethod
    def canonical_leads(dim: int, lead_arity: int, symmetry: LeadSymmetry):
        if symmetry is LeadSymmetry.NONE:
            return itertools.product(range(dim), repeat=lead_arity)
        return itertools.combinations(range(dim), lead_arity)

    @staticmethod
    def canonical_tails(dim: int, tail_arity: int):
        return itertools.combinations_with_replacement(range(dim), tail_arity)

    def canonical(self, lead: tuple, tail: tuple) -> tuple[int, tuple, tuple]:
        """ Returns (sign, canonical lead, sorted tail) for any index order. """
        lead, tail = tuple(lead), tuple(sorted(tail))
        if self.symmetry is LeadSymmetry.NONE:
            return 1, lead, tail
        return permutation_sign(lead), tuple(sorted(lead)), tail

    def get(self, lead: tuple, tail: tuple = ()) -> Poly:
        """ The signed component T^{lead; tail} for any index order. """
        assert len(lead) == self.lead_arity and len(tail) == self.tail_arity
        assert all(0 <= index < self.dim for index in lead + tail), f"index out of range in {lead}; {tail}"
        sign, lead, tail = self.canonical(lead, tail)
        if sign == 0:
            return self.varset.zero()
        value = self.entries.get((lead, tail))
        if value is None:
            return self.varset.zero()
        return value if sign > 0 else -value

    def items(self):
        """ Nonzero entries in lexicographic index order. """
        return sorted(self.entries.items())

    def is_zero(self) -> bool:
        return not self.entries

    def term_count(self) -> int:
        return sum(len(poly) for poly in self.entries.values())

    def _combine(self, other: "SymTensor", sign: int) -> "SymTensor":
        assert (self.lead_arity, self.tail_arity, self.symmetry) == \
            (other.lead_arity, other.tail_arity, other.symmetry)
        entries = dict(self.entries)
        for key, poly in other.entries.items():
            value = entries.get(key, self.varset.zero()) + sign * poly
            if value:
                entries[key] = value
            else:
                entries.pop(key, None)
        return SymTensor(self.varset, self.lead_arity, self.tail_arity, self.symmetry, entries)

    def __add__(self, other: "SymTensor") -> "SymTensor":
        return self._combine(other, 1)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self._combine(other, -1)

    def scale(self, factor) -> "SymTensor":
        """ Multiplies every entry by a rational or by a polynomial. """
        entries = {}
        for key, poly in self.entries.items():
            value = poly * factor
            if value:
                entries[key] = value
        return SymTensor(self.varset, self.lead_arity, self.tail_arity, self.symmetry, entries)

    def __neg__(self) -> "SymTensor":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (self.varset == other.varset
                and (self.lead_arity, self.tail_arity, self.symmetry)
                == (other.lead_arity, other.tail_arity, other.symmetry)
                and self.entries == other.entries)


class Trivector(SymTensor):
    """ A totally antisymmetric rank-3 tensor, e.g. the jacobiator. """

    def __init__(self, varset: VarSet, entries: dict | None = None):
        super().__init__(varset, 3, 0, LeadSymmetry.ANTISYM_TRIPLE, entries or {})

    @classmethod
    def from_tensor(cls, tensor: SymTensor) -> "Trivector":
        assert tensor.lead_arity == 3 and tensor.tail_arity == 0
        return cls(tensor.varset, dict(tensor.entries))

    def __call__(self, i: int, j: int, k: int) -> Poly:
        return self.get((i, j, k))


def extract_tensor(components: dict, n: int, varset: VarSet, lead_arity: int,
                   symmetry: LeadSymmetry = LeadSymmetry.NONE) -> SymTensor:
    """ Reads the tail-symmetric tensor off polynomials homogeneous in pi.

    Args:
        components (dict): Maps each canonical lead tuple to its polynomial
            H^{lead} = sum T^{lead; j_1..j_n} pi_{j_1}..pi_{j_n}. The caller
            has already stripped the power of alpha. Missing leads are zero.
        n (int): The pi-degree, which becomes the tail arity.
        varset (VarSet): The variable set.
        lead_arity (int): Number of lead indices.
        symmetry (LeadSymmetry): Declared symmetry of the lead group.

    Returns:
        SymTensor: The unique tail-symmetric tensor reproducing the components.

    Raises:
        DegreeError: If a component contains alpha or a pi-monomial of
            degree other than n.

    Examples:
        >>> extract_tensor({(0,): pi1*pi2}, 2, varset, 1).get((0,), (0, 1))
        1/2
    """
    ring = varset.ring
    pi_start = varset.pi_slot(0)
    pi_stop = pi_start + varset.dim
    grouped = {}
    for lead, poly in components.items():
        assert len(lead) == lead_arity
        for monom, coeff in poly.items():
            if monom[0] != 0:
                raise DegreeError(f"component {lead} still depends on alpha")
            exponents = monom[pi_start:pi_stop]
            if sum(exponents) != n:
                raise DegreeError(
                    f"component {lead} is not homogeneous of degree {n} in the momenta")
            # Expand the exponent vector into the sorted tail multiset
            tail = tuple(index for index, power in enumerate(exponents) for _ in range(power))
            rest = monom[:pi_start] + (0,) * varset.dim + monom[pi_stop:]
            value = coeff * QQ(1, multinomial(tail))
            bucket = grouped.setdefault((tuple(lead), tail), {})
            bucket[rest] = value
    entries = {}
    for key, terms in grouped.items():
        poly = ring.from_dict(terms)
        if poly:
            entries[key] = poly
    return SymTensor(varset, lead_arity, n, symmetry, entries)


def assemble(tensor: SymTensor, lead: tuple) -> Poly:
    """ Forms T^{lead; j_1..j_n}(y) (alpha pi)_{j_1}..(alpha pi)_{j_n}.

    Args:
        tensor (SymTensor): The tensor.
        lead (tuple): The lead indices, in any order.

    Returns:
        Poly: The contracted polynomial, alpha^n times homogeneous of degree n in pi.
    """
    varset = tensor.varset
    sign, lead, _ = tensor.canonical(lead, ())
    result = varset.zero()
    if sign == 0:
        return result
    scale = varset.alpha ** tensor.tail_arity
    for (entry_lead, tail), poly in tensor.entries.items():
        if entry_lead != lead:
            continue
        momenta = varset.one()
        for index in tail:
            momenta *= varset.pi(index)
        result += poly * momenta * (sign * multinomial(tail))
    return result * scale
