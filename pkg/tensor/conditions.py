"""
Solvability conditions of the recurrences and their solutions.

At each order the Bopp shift coefficients Gamma are determined by a tensor G
(antisymmetric lead pair, symmetric tail). The equation for Gamma has a
solution only when G satisfies the cyclicity relation

    G^{ij;j1 R} + G^{j1 i;j R} + G^{j j1;i R} = 0.

The quasi-Poisson corrections Theta are determined in the same way by a
tensor F (antisymmetric lead triple) that must satisfy the four-term relation

    F^{ijk;l R} - F^{lij;k R} + F^{kli;j R} - F^{jkl;i R} = 0.

Both solutions are written down in closed form and then substituted back
into the equation they are supposed to solve. If the closed form does not
solve it, the caller gets a ConsistencyError with the residual, never a
silently wrong tensor.
"""
import logging

from sympy.polys.domains import QQ
from sympy.utilities.iterables import multiset_permutations

from .sym_tensor import ConsistencyError, LeadSymmetry, SymTensor

__all__ = [
    "cyclicity_defect_G",
    "four_term_defect_F",
    "gamma_from_G",
    "solve_theta_correction",
    "total_symmetrization",
    "mixed_symmetrization",
]

logger = logging.getLogger(__name__)


def _drop(tail: tuple, position: int) -> tuple:
    return tail[:position] + tail[position + 1:]


def cyclicity_defect_G(G: SymTensor) -> SymTensor:
    """ The cyclic sum G^{ij;j1 R} + G^{j1 i;j R} + G^{j j1;i R}.

    The result is totally antisymmetric in (i, j, j1) and has tail R.
    A tensor without tail has nothing to cycle, its defect is empty.

    Args:
        G (SymTensor): A tensor with antisymmetric lead pair.

    Returns:
        SymTensor: Lead triple (i, j, j1), tail arity one less than G's.
    """
    assert G.symmetry is LeadSymmetry.ANTISYM_PAIR
    if G.tail_arity == 0:
        return SymTensor(G.varset, 3, 0, LeadSymmetry.ANTISYM_TRIPLE)

    def value(lead, rest):
        i, j, k = lead
        return (G.get((i, j), (k,) + rest)
                + G.get((k, i), (j,) + rest)
                + G.get((j, k), (i,) + rest))

    return SymTensor.from_function(
        G.varset, 3, G.tail_arity - 1, LeadSymmetry.ANTISYM_TRIPLE, value)


def four_term_defect_F(F: SymTensor) -> SymTensor:
    """ The alternating sum F^{ijk;l R} - F^{lij;k R} + F^{kli;j R} - F^{jkl;i R}.

    Args:
        F (SymTensor): A tensor with totally antisymmetric lead triple.

    Returns:
        SymTensor: Lead (i, j, k, l) without declared symmetry, tail R.
            Empty when F has no tail.
    """
    assert F.symmetry is LeadSymmetry.ANTISYM_TRIPLE
    if F.tail_arity == 0:
        return SymTensor(F.varset, 4, 0, LeadSymmetry.NONE)

    def value(lead, rest):
        i, j, k, l = lead
        return (F.get((i, j, k), (l,) + rest)
                - F.get((l, i, j), (k,) + rest)
                + F.get((k, l, i), (j,) + rest)
                - F.get((j, k, l), (i,) + rest))

    return SymTensor.from_function(F.varset, 4, F.tail_arity - 1, LeadSymmetry.NONE, value)


def gamma_from_G(G: SymTensor, check_cyclicity: bool = True) -> SymTensor:
    """ Solves (n+1)(Gamma^{j;iL} - Gamma^{i;jL}) = G^{ij;L} for Gamma.

    The solution is

        Gamma^{i;j_1..j_{n+1}} = -1/((n+1)(n+2)) sum_k G^{i j_k; j_1..^j_k..j_{n+1}},

    symmetric in its whole tail by construction. It is substituted back into
    the equation before it is returned.

    Args:
        G (SymTensor): Antisymmetric lead pair, tail arity n.
        check_cyclicity (bool): Verify the cyclicity relation first. Callers
            that already checked it can skip the work.

    Returns:
        SymTensor: Gamma with lead arity 1 and tail arity n + 1.

    Raises:
        ConsistencyError: If G violates the cyclicity relation, or the
            solution fails back-substitution. The defect is attached.

    Examples:
        >>> gamma_from_G(theta_as_G).get((0,), (1,))   # n = 0
        -1/2*theta12
    """
    assert G.symmetry is LeadSymmetry.ANTISYM_PAIR
    n = G.tail_arity
    varset = G.varset
    if check_cyclicity:
        defect = cyclicity_defect_G(G)
        if not defect.is_zero():
            raise ConsistencyError(f"G with tail {n} violates the cyclicity relation", defect)

    factor = QQ(-1, (n + 1) * (n + 2))

    def value(lead, tail):
        (i,) = lead
        total = varset.zero()
        for position, index in enumerate(tail):
            total += G.get((i, index), _drop(tail, position))
        return total * factor

    gamma = SymTensor.from_function(varset, 1, n + 1, LeadSymmetry.NONE, value)

    # Substitute back: (n+1)(Gamma^{j;iL} - Gamma^{i;jL}) - G^{ij;L}
    def residual(lead, tail):
        i, j = lead
        return ((gamma.get((j,), (i,) + tail) - gamma.get((i,), (j,) + tail)) * (n + 1)
                - G.get((i, j), tail))

    defect = SymTensor.from_function(varset, 2, n, LeadSymmetry.ANTISYM_PAIR, residual)
    if not defect.is_zero():
        raise ConsistencyError(f"Gamma with tail {n + 1} fails back-substitution", defect)
    return gamma


def solve_theta_correction(F: SymTensor, n: int) -> tuple[SymTensor, int]:
    """ Solves n(Theta^{ij;kL} + Theta^{ki;jL} + Theta^{jk;iL}) + F^{ijk;L} = 0.

    The candidate is the tail symmetrization of F,

        Theta^{ij;l_1..l_n} = c sum_a F^{ij l_a; l_1..^l_a..l_n},

    with c = -1/(n(n+2)). The scalar is not trusted: the candidate is
    substituted back and, if that fails, the opposite sign is tried.

    Args:
        F (SymTensor): Totally antisymmetric lead triple, tail arity n - 1.
        n (int): The order of the correction.

    Returns:
        SymTensor: Theta^{(n)} with antisymmetric lead pair and tail arity n.
        int: The sign of c that solved the equation (-1 or +1).

    Raises:
        ConsistencyError: If neither sign solves the equation.
    """
    assert F.symmetry is LeadSymmetry.ANTISYM_TRIPLE
    assert n >= 1 and F.tail_arity == n - 1
    varset = F.varset

    def summed(lead, tail):
        i, j = lead
        total = varset.zero()
        for position, index in enumerate(tail):
            total += F.get((i, j, index), _drop(tail, position))
        return total

    base = SymTensor.from_function(varset, 2, n, LeadSymmetry.ANTISYM_PAIR, summed)
    residual = None
    for sign in (-1, 1):
        theta = base.scale(QQ(sign, n * (n + 2)))
        residual = cyclicity_defect_G(theta).scale(n) + F
        if residual.is_zero():
            logger.info("Theta correction of order %d solved with sign %+d", n, sign)
            return theta, sign
    raise ConsistencyError(
        f"no normalization of the order {n} Theta correction solves its equation",
        residual, n)


def total_symmetrization(tensor: SymTensor) -> SymTensor:
    """ Averages a tensor over all permutations of all of its indices.

    Args:
        tensor (SymTensor): Any tensor.

    Returns:
        SymTensor: A tensor with no lead indices and a tail holding all of them.

    Examples:
        >>> total_symmetrization(gamma_1).is_zero()   # Gamma^{i;j} = -Theta^{ij}/2
        True
    """
    varset = tensor.varset
    lead_arity = tensor.lead_arity

    def value(_, indices):
        total = varset.zero()
        count = 0
        for arrangement in multiset_permutations(list(indices)):
            total += tensor.get(tuple(arrangement[:lead_arity]), tuple(arrangement[lead_arity:]))
            count += 1
        return total * QQ(1, count)

    return SymTensor.from_function(
        varset, 0, lead_arity + tensor.tail_arity, LeadSymmetry.NONE, value)


def mixed_symmetrization(tensor: SymTensor) -> SymTensor:
    """ Symmetrizes a lead-pair tensor over its second lead index and its tail.

    Used as a diagnostic on the Theta corrections: a vanishing result means
    no part of Theta^{ij;L} is symmetric in j and L together.

    Args:
        tensor (SymTensor): A tensor with lead arity 2.

    Returns:
        SymTensor: Lead (i,), tail (j, L) symmetrized.
    """
    assert tensor.lead_arity == 2
    varset = tensor.varset

    def value(lead, indices):
        (i,) = lead
        total = varset.zero()
        count = 0
        for arrangement in multiset_permutations(list(indices)):
            total += tensor.get((i, arrangement[0]), tuple(arrangement[1:]))
            count += 1
        return total * QQ(1, count)

    return SymTensor.from_function(varset, 1, 1 + tensor.tail_arity, LeadSymmetry.NONE, value)
