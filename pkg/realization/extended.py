"""
The extended Poisson brackets in the doubled coordinates (x, xt).

With the gauge xt_i = pi_i, the Bopp shift x = x(y, pi) is inverted as a
series y = y(x, xt), and the canonical brackets of x and pi are rewritten in
terms of x and xt. Polynomials here reuse the slots of the Darboux variables:
the y slots hold x and the pi slots hold xt, so they print with the
"doubled" frame of poly.render.
"""
import logging
from dataclasses import dataclass

from poly import Poly, Substitution, VarSet, truncate
from tensor import ConsistencyError, assemble

from .recurrence import Realization, bopp_apply, bopp_brackets

__all__ = ["ExtendedBrackets", "invert_bopp", "extended_brackets"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtendedBrackets:
    """ The bracket table of the doubled phase space, truncated mod alpha^{order+1}.

    Attributes:
        varset (VarSet): Variable set; y slots are x, pi slots are xt.
        order (int): The realization order n.
        x_x (tuple): {x^i, x^j} = alpha omega^{ij}(x, xt).
        x_xt (tuple): {x^i, xt_j} = delta^i_j + O(alpha).
        xt_xt (tuple): {xt_i, xt_j}, identically zero.
    """
    varset: VarSet
    order: int
    x_x: tuple
    x_xt: tuple
    xt_xt: tuple


def _invert(real: Realization) -> tuple[list[Poly], Substitution]:
    """ invert_bopp, also returning the substitution y -> y(x, xt) its check used. """
    varset = real.varset
    n = real.order
    images = bopp_apply(real, n)
    coordinates = [varset.y(i) for i in range(varset.dim)]
    # The shift part of every component, sum_m Gamma^{(m)i}(y)(alpha pi)^m
    shifts = [images[i] - coordinates[i] for i in range(varset.dim)]
    inverse = list(coordinates)
    for k in range(1, n + 1):
        step = Substitution({varset.y(l): image for l, image in enumerate(inverse)}, k + 1)
        inverse = [coordinates[i] - step(truncate(shifts[i], k + 1)) for i in range(varset.dim)]
        logger.debug("inverse Bopp shift solved through alpha^%d", k)

    # Composition check x(y(x, xt)) = x
    compose = Substitution({varset.y(l): image for l, image in enumerate(inverse)}, n + 1)
    residue = {}
    for i in range(varset.dim):
        value = compose(images[i]) - coordinates[i]
        if value:
            residue[i] = value
    if residue:
        raise ConsistencyError("inverse Bopp shift does not compose to the identity", residue, n)
    return inverse, compose


def invert_bopp(real: Realization) -> list[Poly]:
    """ Solves x = x_n(y, xt) for y as a series in alpha.

    The solution is built one order at a time: with y known mod alpha^k,
    Y <- x - sum_m Gamma^{(m)}(Y)(alpha xt)^m fixes the alpha^k coefficient,
    and only that window is ever expanded. n passes give y(x, xt) mod
    alpha^{n+1}.

    Args:
        real (Realization): A realization of order n.

    Returns:
        list[Poly]: y^i(x, xt), in the slots of the doubled frame.

    Raises:
        ConsistencyError: If x_n(y(x, xt), xt) differs from x mod alpha^{n+1}.

    Examples:
        >>> invert_bopp(realize(theta, 1))[0]
        x1 + 1/2*alpha*theta12*xt2 + ...
    """
    return _invert(real)[0]


def extended_brackets(real: Realization, inverse: list[Poly] | None = None) -> ExtendedBrackets:
    """ The brackets {x, x}, {x, xt} and {xt, xt} in the doubled coordinates.

    {x^i, x^j} and {x^i, pi_j} = d x^i / d y^j are computed in Darboux
    coordinates and rewritten through invert_bopp. The result is checked
    against alpha sum_{m < n} Theta^{(m)}(x)(alpha xt)^m, which is what the
    recurrence was built to reproduce.

    Args:
        real (Realization): A realization of order n.
        inverse (list[Poly], optional): invert_bopp(real), if already known.

    Returns:
        ExtendedBrackets: The three bracket matrices mod alpha^{n+1}.

    Raises:
        ConsistencyError: If {x, x} disagrees with the corrected bivector.
    """
    varset = real.varset
    n = real.order
    below = n + 1
    dim = varset.dim
    images = bopp_apply(real, n)
    brackets = bopp_brackets(real)
    if inverse is None:
        inverse, rewrite = _invert(real)
    else:
        rewrite = Substitution({varset.y(l): image for l, image in enumerate(inverse)}, below)

    zero = varset.zero()
    x_x = [[zero] * dim for _ in range(dim)]
    mismatch = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            value = rewrite(brackets[a][b])
            x_x[a][b], x_x[b][a] = value, -value
            expected = varset.zero()
            for m in range(n):
                expected += assemble(real.theta_tensor(m), (a, b))
            expected = truncate(varset.alpha * expected, below)
            if value != expected:
                mismatch[(a, b)] = value - expected
    if mismatch:
        raise ConsistencyError("{x, x} does not match the corrected bivector", mismatch, n)

    x_xt = [[rewrite(images[a].diff(varset.y(b))) for b in range(dim)] for a in range(dim)]
    xt_xt = [[zero] * dim for _ in range(dim)]
    logger.debug("extended brackets of order %d computed", n)
    return ExtendedBrackets(
        varset, n,
        tuple(tuple(row) for row in x_x),
        tuple(tuple(row) for row in x_xt),
        tuple(tuple(row) for row in xt_xt))
