"""
Order-by-order construction of the symplectic realization.

We look for a generalized Bopp shift

    x^i = y^i + sum_n Gamma^{i;j_1..j_n}(y) (alpha pi)_{j_1} .. (alpha pi)_{j_n}

in Darboux coordinates (y, pi) such that the canonical brackets of the x^i
reproduce alpha omega^{ij}(x, pi), where omega starts with the input bivector
Theta and carries corrections Theta^{(k)} that fix the failure of the Jacobi
identity:

    omega^{ij} = Theta^{ij}(x) + sum_k Theta^{ij;l_1..l_k}(x) (alpha pi)_{l_1} .. (alpha pi)_{l_k}.

Each order k runs the same steps:

    1. F(k): the cyclic bracket of x_k with the known part of omega, read off at alpha^k.
    2. Theta^{(k)} solves k (Theta^{ij;k L} + cyclic) + F^{ijk;L} = 0.
    3. G(k): alpha omega_k - {x_k, x_k}, read off at alpha^{k+1}.
    4. Gamma^{(k+1)} solves (k+1)(Gamma^{j;iL} - Gamma^{i;jL}) = G^{ij;L}.

Every step checks its own solvability condition and its own answer. A
finished realization therefore satisfies {x_n^i, x_n^j} = alpha omega_{n-1}^{ij}
mod alpha^{n+1} exactly; realize verifies that too before returning.

For Poisson input (zero jacobiator) every F vanishes, all corrections are
zero and only the Gamma recurrence remains.
"""
import logging
from dataclasses import dataclass, field, replace

from poly import (
    Poly,
    Substitution,
    alpha_coefficient,
    canonical_bracket,
    truncate,
)
from tensor import (
    ConsistencyError,
    LeadSymmetry,
    SymTensor,
    Trivector,
    assemble,
    cyclicity_defect_G,
    extract_tensor,
    four_term_defect_F,
    gamma_from_G,
    mixed_symmetrization,
    solve_theta_correction,
    total_symmetrization,
)

from .bivector import Bivector
from .brackets import jacobiator

__all__ = [
    "OrderRangeError",
    "OrderDiagnostics",
    "Realization",
    "bopp_apply",
    "omega_n",
    "compute_G",
    "compute_F",
    "bopp_brackets",
    "order_contract_defect",
    "realize",
]

logger = logging.getLogger(__name__)


class OrderRangeError(IndexError):
    """ Raised when an order beyond what a realization holds is requested. """


@dataclass(frozen=True)
class OrderDiagnostics:
    """ What was checked while computing one Gamma tensor.

    Attributes:
        order (int): The order k of Gamma^{(k)}.
        theta_sign (int | None): Sign of the normalization that solved for
            Theta^{(k-1)}, None at order 1 where no correction is solved.
        cyclicity_ok (bool): The G tensor of this order satisfied cyclicity.
        four_term_ok (bool | None): The F tensor of the previous order
            satisfied the four-term relation, None at order 1.
        young_gamma_ok (bool): Gamma^{(k)} has no totally symmetric part.
        young_theta_ok (bool | None): Theta^{(k-1)} has no part symmetric in
            its second lead index and tail, None at order 1.
        gamma_terms (int): Number of polynomial terms in Gamma^{(k)}.
        theta_terms (int): Number of polynomial terms in Theta^{(k-1)}.
    """
    order: int
    theta_sign: int | None = None
    cyclicity_ok: bool = True
    four_term_ok: bool | None = None
    young_gamma_ok: bool = True
    young_theta_ok: bool | None = None
    gamma_terms: int = 0
    theta_terms: int = 0


@dataclass(frozen=True)
class Realization:
    """ The result bundle of realize.

    Attributes:
        source (Bivector): The input bivector Theta.
        order (int): Number of Gamma tensors held.
        gamma (tuple[SymTensor, ...]): Gamma^{(1)}..Gamma^{(order)}.
        theta_corr (tuple[SymTensor, ...]): Theta^{(1)}..Theta^{(order-1)}.
            A staged realization inside realize may hold one more.
        jacobiator (Trivector): Pi of the source.
        diagnostics (tuple[OrderDiagnostics, ...]): One entry per Gamma.
        brackets (tuple): {x_order^i, x_order^j} mod alpha^{order+1}, set by realize.
        contract_ok (bool): realize checked these brackets against omega.
    """
    source: Bivector
    order: int
    gamma: tuple = ()
    theta_corr: tuple = ()
    jacobiator: Trivector | None = field(default=None, compare=False)
    diagnostics: tuple = field(default=(), compare=False)
    brackets: tuple = field(default=(), compare=False, repr=False)
    contract_ok: bool = field(default=False, compare=False)

    @property
    def varset(self):
        return self.source.varset

    def theta_tensor(self, m: int) -> SymTensor:
        """ Theta^{(m)}, with Theta^{(0)} the source bivector. """
        if m == 0:
            return self.source.as_tensor()
        if m > len(self.theta_corr):
            raise OrderRangeError(f"Theta correction of order {m} is not available")
        return self.theta_corr[m - 1]


def bopp_apply(real: Realization, upto: int) -> list[Poly]:
    """ The Bopp shift truncated after Gamma^{(upto)}.

    Args:
        real (Realization): The realization.
        upto (int): Number of Gamma tensors to include, 0 <= upto <= real.order.

    Returns:
        list[Poly]: x_upto^i = y^i + sum_{m <= upto} Gamma^{(m)i}(y)(alpha pi)^m.

    Raises:
        OrderRangeError: If upto exceeds the order of the realization.

    Examples:
        >>> bopp_apply(real, 1)[0]
        y1 - 1/2*alpha*theta12*pi2 - ...
    """
    if upto < 0 or upto > real.order:
        raise OrderRangeError(f"Bopp shift of order {upto} requested from a realization of order {real.order}")
    varset = real.varset
    images = []
    for i in range(varset.dim):
        x = varset.y(i)
        for gamma in real.gamma[:upto]:
            x += assemble(gamma, (i,))
        images.append(x)
    return images


class _ShiftedOrder:
    """ The Bopp images x_n and the corrections evaluated on them, mod alpha^{n+1}.

    F and G of one order evaluate the same Theta^{(m)}(x_n)(alpha pi)^m, so
    they share one of these. Each correction is substituted once.
    """

    def __init__(self, real: Realization, n: int):
        varset = real.varset
        self.n = n
        self.images = bopp_apply(real, n)
        self.evaluate = Substitution({varset.y(l): image for l, image in enumerate(self.images)}, n + 1)
        self.terms = {}

    def correction(self, real: Realization, m: int) -> dict:
        """ Theta^{(m)ab}(x_n)(alpha pi)^m for a < b. """
        if m not in self.terms:
            varset = real.varset
            tensor = real.theta_tensor(m)
            terms = {}
            for a in range(varset.dim):
                for b in range(a + 1, varset.dim):
                    term = assemble(tensor, (a, b))
                    terms[(a, b)] = self.evaluate(term) if term else varset.zero()
            self.terms[m] = terms
        return self.terms[m]

    def series(self, real: Realization, orders: range) -> dict:
        """ sum over m in orders, m <= n, of Theta^{(m)ab}(x_n)(alpha pi)^m. """
        varset = real.varset
        series = {(a, b): varset.zero() for a in range(varset.dim) for b in range(a + 1, varset.dim)}
        for m in orders:
            if m > self.n:
                break
            for key, value in self.correction(real, m).items():
                if value:
                    series[key] += value
        return series


def _as_matrix(varset, upper: dict) -> tuple:
    n = varset.dim
    rows = [[varset.zero() for _ in range(n)] for _ in range(n)]
    for (a, b), value in upper.items():
        rows[a][b] = value
        rows[b][a] = -value
    return tuple(tuple(row) for row in rows)


def _bracket_table(varset, images: list, below: int) -> dict:
    """ {images[a], images[b]} mod alpha^below for a < b. """
    return {(a, b): canonical_bracket(images[a], images[b], varset, below)
            for a in range(varset.dim) for b in range(a + 1, varset.dim)}


def omega_n(real: Realization, n: int, shifted: _ShiftedOrder | None = None) -> tuple:
    """ The order-n truncation of omega evaluated on the Bopp image,

        omega_n^{ij} = sum_{m <= n} Theta^{(m)ij}(x_n)(alpha pi)^m mod alpha^{n+1}.

    Args:
        real (Realization): Must hold Gamma^{(1..n)} and Theta^{(1..n)}.
        n (int): The truncation order.
        shifted (optional): Images and substitutions of order n to reuse.

    Returns:
        tuple: The antisymmetric N x N matrix omega_n.

    Raises:
        OrderRangeError: If a needed tensor is missing.
    """
    if n > real.order or n > len(real.theta_corr):
        raise OrderRangeError(f"omega_{n} needs Gamma and Theta up to order {n}")
    shifted = shifted or _ShiftedOrder(real, n)
    assert shifted.n == n
    return _as_matrix(real.varset, shifted.series(real, range(n + 1)))


def _strip(values: dict, power: int, label: str, order: int) -> dict:
    """ Checks that nothing below alpha^power survives and strips alpha^power. """
    residue = {key: truncate(value, power) for key, value in values.items()}
    residue = {key: value for key, value in residue.items() if value}
    if residue:
        raise ConsistencyError(
            f"{label} of order {order} has terms below alpha^{power}", residue, order)
    return {key: alpha_coefficient(value, power) for key, value in values.items()}


def compute_G(real: Realization, n: int, shifted: _ShiftedOrder | None = None) -> SymTensor:
    """ G^{ij;j_1..j_n}, read off alpha omega_n^{ij} - {x_n^i, x_n^j} at alpha^{n+1}.

    Args:
        real (Realization): Must hold Gamma^{(1..n)} and Theta^{(1..n)}.
        n (int): The order.
        shifted (optional): Images and substitutions of order n to reuse.

    Returns:
        SymTensor: Antisymmetric lead pair, tail arity n.

    Raises:
        ConsistencyError: If terms of lower order survive, meaning an earlier
            order did not solve its equation.
    """
    varset = real.varset
    shifted = shifted or _ShiftedOrder(real, n)
    omega = omega_n(real, n, shifted)
    below = n + 2
    brackets = _bracket_table(varset, shifted.images, below)
    values = {key: truncate(varset.alpha * omega[key[0]][key[1]] - bracket, below)
              for key, bracket in brackets.items()}
    components = _strip(values, n + 1, "G", n)
    G = extract_tensor(components, n, varset, 2, LeadSymmetry.ANTISYM_PAIR)
    logger.debug("G of order %d: %d terms", n, G.term_count())
    return G


def compute_F(real: Realization, n: int, shifted: _ShiftedOrder | None = None) -> SymTensor:
    """ F^{ijk;l_1..l_{n-1}}, read off at alpha^n from the cyclic sum

        {x_n^k, W^{ij}} + {x_n^j, W^{ki}} + {x_n^i, W^{jk}},

    where W = sum_{m < n} Theta^{(m)}(x_n)(alpha pi)^m. At n = 1 this is 3 Pi.

    Args:
        real (Realization): Must hold Gamma^{(1..n)} and Theta^{(1..n-1)}.
        n (int): The order, at least 1.
        shifted (optional): Images and substitutions of order n to reuse.

    Returns:
        SymTensor: Totally antisymmetric lead triple, tail arity n - 1.

    Raises:
        OrderRangeError: If a needed tensor is missing.
        ConsistencyError: If terms below alpha^n survive.
    """
    assert n >= 1
    if n > real.order or n - 1 > len(real.theta_corr):
        raise OrderRangeError(f"F of order {n} needs Gamma up to {n} and Theta up to {n - 1}")
    varset = real.varset
    shifted = shifted or _ShiftedOrder(real, n)
    images = shifted.images
    below = n + 1
    W = shifted.series(real, range(n))

    def w(a, b):
        return W[(a, b)] if a < b else -W[(b, a)]

    values = {}
    for i in range(varset.dim):
        for j in range(i + 1, varset.dim):
            for k in range(j + 1, varset.dim):
                values[(i, j, k)] = (canonical_bracket(images[k], w(i, j), varset, below)
                                     + canonical_bracket(images[j], w(k, i), varset, below)
                                     + canonical_bracket(images[i], w(j, k), varset, below))
    components = _strip(values, n, "F", n)
    F = extract_tensor(components, n - 1, varset, 3, LeadSymmetry.ANTISYM_TRIPLE)
    logger.debug("F of order %d: %d terms", n, F.term_count())
    return F


def bopp_brackets(real: Realization) -> tuple:
    """ {x_n^i, x_n^j} mod alpha^{n+1} as an N x N matrix.

    realize computes this table for its final check and keeps it on the
    realization; it is only recomputed for realizations built otherwise.
    """
    if real.brackets:
        return real.brackets
    n = real.order
    return _as_matrix(real.varset, _bracket_table(real.varset, bopp_apply(real, n), n + 1))


def order_contract_defect(real: Realization, shifted: _ShiftedOrder | None = None) -> dict:
    """ {x_n^i, x_n^j} - alpha omega_{n-1}^{ij} mod alpha^{n+1}, nonzero entries only.

    Args:
        real (Realization): A realization of order n with Theta^{(1..n-1)}.
        shifted (optional): Images and substitutions of order n - 1 to reuse.

    Returns:
        dict: Maps 0-based (i, j), i < j, to the residual. Empty on success.
    """
    n = real.order
    varset = real.varset
    brackets = bopp_brackets(real)
    omega = omega_n(real, n - 1, shifted)
    defect = {}
    for a in range(varset.dim):
        for b in range(a + 1, varset.dim):
            value = truncate(brackets[a][b] - varset.alpha * omega[a][b], n + 1)
            if value:
                defect[(a, b)] = value
    return defect


def realize(theta: Bivector, order: int) -> Realization:
    """ Computes the symplectic realization of a bivector up to a given order.

    Args:
        theta (Bivector): The (quasi-)Poisson bivector.
        order (int): Number of Gamma tensors to compute, at least 1.

    Returns:
        Realization: Gamma^{(1..order)}, Theta^{(1..order-1)}, the jacobiator,
            per-order diagnostics and the verified bracket table of x_order.

    Raises:
        ValueError: If order < 1.
        ConsistencyError: If any solvability condition or back-substitution
            fails. The error names the order and carries the defect.

    Examples:
        >>> real = realize(build_r_flux(), 3)
        >>> [g.is_zero() for g in real.gamma]
        [False, True, True]
    """
    if order < 1:
        raise ValueError(f"order must be at least 1, got {order}")
    varset = theta.varset
    pi = jacobiator(theta)

    # First order: G is Theta itself and Gamma^{(1)} = -Theta/2
    gamma = gamma_from_G(theta.as_tensor())
    diagnostics = [OrderDiagnostics(
        order=1,
        young_gamma_ok=total_symmetrization(gamma).is_zero(),
        gamma_terms=gamma.term_count())]
    real = Realization(theta, 1, (gamma,), (), pi, tuple(diagnostics))
    logger.debug("order 1: Gamma has %d terms", gamma.term_count())

    shifted = None
    for k in range(1, order):
        shifted = _ShiftedOrder(real, k)

        # Theta correction of order k
        F = compute_F(real, k, shifted)
        four_term = four_term_defect_F(F)
        if not four_term.is_zero():
            raise ConsistencyError(f"F of order {k} violates the four-term relation", four_term, k)
        correction, sign = solve_theta_correction(F, k)
        staged = replace(real, theta_corr=real.theta_corr + (correction,))

        # Bopp shift tensor of order k + 1
        G = compute_G(staged, k, shifted)
        cyclicity = cyclicity_defect_G(G)
        if not cyclicity.is_zero():
            raise ConsistencyError(f"G of order {k} violates the cyclicity relation", cyclicity, k)
        gamma = gamma_from_G(G, check_cyclicity=False)

        diagnostics.append(OrderDiagnostics(
            order=k + 1,
            theta_sign=sign,
            cyclicity_ok=True,
            four_term_ok=True,
            young_gamma_ok=total_symmetrization(gamma).is_zero(),
            young_theta_ok=mixed_symmetrization(correction).is_zero(),
            gamma_terms=gamma.term_count(),
            theta_terms=correction.term_count()))
        real = replace(staged, order=k + 1, gamma=real.gamma + (gamma,), diagnostics=tuple(diagnostics))
        logger.debug("order %d: Gamma has %d terms, Theta correction %d terms",
                     k + 1, gamma.term_count(), correction.term_count())

    real = replace(real, brackets=bopp_brackets(real))
    defect = order_contract_defect(real, shifted)
    if defect:
        raise ConsistencyError(f"brackets of the order {order} Bopp shift do not reproduce omega", defect, order)
    if pi.is_zero() and not all(correction.is_zero() for correction in real.theta_corr):
        raise ConsistencyError("Poisson input produced a nonzero Theta correction", real.theta_corr, order)
    return replace(real, contract_ok=True)
