"""
Brackets defined directly by a bivector on functions of x.

A bivector Theta defines the quasi-Poisson bracket {f, g} = alpha Theta^{ij} df dg.
It satisfies the Jacobi identity exactly when the jacobiator

    Pi^{ijk} = 1/3 (Theta^{il} d_l Theta^{jk} + Theta^{kl} d_l Theta^{ij} + Theta^{jl} d_l Theta^{ki})

vanishes. The three-bracket {f, g, h} = alpha^2 Pi^{ijk} df dg dh is the
normalized cyclic double bracket, and the two together satisfy a ten-term
identity for every bivector, Jacobi or not. fundamental_identity_defect
evaluates that identity in components; it is a check on the engine, not on
the input.
"""
import logging

from sympy.polys.domains import QQ

from poly import Poly, depends_on_momenta
from tensor import LeadSymmetry, SymTensor, Trivector

from .bivector import Bivector

__all__ = [
    "jacobiator",
    "quasi_bracket",
    "three_bracket",
    "fundamental_identity_defect",
]

logger = logging.getLogger(__name__)


def _gradient(f: Poly, theta: Bivector) -> list[Poly]:
    varset = theta.varset
    return [f.diff(varset.y(l)) for l in range(varset.dim)]


def _derivatives(theta: Bivector) -> list[list[list[Poly]]]:
    """ d[l][i][j] = d_l Theta^{ij}. """
    n = theta.dim
    return [[[theta(i, j).diff(theta.varset.y(l)) for j in range(n)] for i in range(n)]
            for l in range(n)]


def jacobiator(theta: Bivector) -> Trivector:
    """ The jacobiator Pi^{ijk} of a bivector.

    Args:
        theta (Bivector): The bivector.

    Returns:
        Trivector: Pi, totally antisymmetric. Zero exactly when Theta is Poisson.

    Examples:
        >>> jacobiator(su2).is_zero()
        True
    """
    n = theta.dim
    d = _derivatives(theta)
    third = QQ(1, 3)

    def term(i, j, k):
        return sum((theta(i, l) * d[l][j][k] for l in range(n)), theta.varset.zero())

    def value(lead, _):
        i, j, k = lead
        return (term(i, j, k) + term(k, i, j) + term(j, k, i)) * third

    result = SymTensor.from_function(theta.varset, 3, 0, LeadSymmetry.ANTISYM_TRIPLE, value)
    logger.debug("jacobiator has %d nonzero components", len(result.entries))
    return Trivector.from_tensor(result)


def quasi_bracket(f: Poly, g: Poly, theta: Bivector) -> Poly:
    """ The bracket alpha Theta^{ij} d_i f d_j g on functions of x.

    Args:
        f (Poly): A polynomial in x and parameters.
        g (Poly): A polynomial in x and parameters.
        theta (Bivector): The bivector defining the bracket.

    Returns:
        Poly: {f, g}.
    """
    varset = theta.varset
    assert not depends_on_momenta(f, varset) and not depends_on_momenta(g, varset)
    df, dg = _gradient(f, theta), _gradient(g, theta)
    result = varset.zero()
    for i in range(theta.dim):
        if not df[i]:
            continue
        for j in range(theta.dim):
            if dg[j] and theta(i, j):
                result += theta(i, j) * df[i] * dg[j]
    return result * varset.alpha


def three_bracket(f: Poly, g: Poly, h: Poly, theta: Bivector, pi: Trivector | None = None) -> Poly:
    """ The three-bracket alpha^2 Pi^{ijk} d_i f d_j g d_k h.

    Args:
        f, g, h (Poly): Polynomials in x and parameters.
        theta (Bivector): The bivector.
        pi (Trivector, optional): Its jacobiator, computed if not given.

    Returns:
        Poly: {f, g, h}.
    """
    varset = theta.varset
    pi = pi if pi is not None else jacobiator(theta)
    df, dg, dh = _gradient(f, theta), _gradient(g, theta), _gradient(h, theta)
    result = varset.zero()
    for (lead, _), value in pi.entries.items():
        i, j, k = lead
        # Sum the six orderings of the stored ascending triple
        for a, b, c, sign in ((i, j, k, 1), (j, k, i, 1), (k, i, j, 1),
                              (j, i, k, -1), (i, k, j, -1), (k, j, i, -1)):
            if df[a] and dg[b] and dh[c]:
                result += value * df[a] * dg[b] * dh[c] * sign
    return result * varset.alpha ** 2


def fundamental_identity_defect(theta: Bivector, pi: Trivector | None = None) -> SymTensor:
    """ The ten-term identity relating Theta and its jacobiator, in components.

        Pi^{ijm} d_m Theta^{kl} - Pi^{jkm} d_m Theta^{li} + Pi^{klm} d_m Theta^{ij}
        - Pi^{lim} d_m Theta^{jk} - Pi^{ikm} d_m Theta^{jl} + Pi^{jlm} d_m Theta^{ki}
        + Theta^{lm} d_m Pi^{ijk} - Theta^{im} d_m Pi^{jkl} + Theta^{jm} d_m Pi^{kli}
        - Theta^{km} d_m Pi^{lij}

    This vanishes for every bivector. A nonzero entry means the jacobiator
    or the polynomial arithmetic is wrong.

    Args:
        theta (Bivector): The bivector.
        pi (Trivector, optional): Its jacobiator, computed if not given.

    Returns:
        SymTensor: Lead (i, j, k, l), nonzero entries only. Empty on success.
    """
    varset = theta.varset
    n = theta.dim
    pi = pi if pi is not None else jacobiator(theta)
    if pi.is_zero():
        return SymTensor(varset, 4, 0, LeadSymmetry.NONE)
    d_theta = _derivatives(theta)
    P = [[[pi(i, j, k) for k in range(n)] for j in range(n)] for i in range(n)]
    d_pi = [[[[P[i][j][k].diff(varset.y(m)) for k in range(n)] for j in range(n)] for i in range(n)]
            for m in range(n)]

    def pi_d_theta(a, b, c, e):
        # Pi^{abm} d_m Theta^{ce}
        return sum((P[a][b][m] * d_theta[m][c][e] for m in range(n) if P[a][b][m]), varset.zero())

    def theta_d_pi(a, b, c, e):
        # Theta^{am} d_m Pi^{bce}
        return sum((theta(a, m) * d_pi[m][b][c][e] for m in range(n) if theta(a, m)), varset.zero())

    def value(lead, _):
        i, j, k, l = lead
        return (pi_d_theta(i, j, k, l) - pi_d_theta(j, k, l, i) + pi_d_theta(k, l, i, j)
                - pi_d_theta(l, i, j, k) - pi_d_theta(i, k, j, l) + pi_d_theta(j, l, k, i)
                + theta_d_pi(l, i, j, k) - theta_d_pi(i, j, k, l) + theta_d_pi(j, k, l, i)
                - theta_d_pi(k, l, i, j))

    return SymTensor.from_function(varset, 4, 0, LeadSymmetry.NONE, value)
