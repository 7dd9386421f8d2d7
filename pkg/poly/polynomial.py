"""
Exact polynomial arithmetic for the realization engine.

Every scalar the engine touches (a bivector entry, a Bopp shift component,
a bracket) is a polynomial with rational coefficients in

    alpha, y1..yN, pi1..piN, and a few declared parameters (R, r, ...).

The Darboux coordinates are (y, pi) and alpha is the deformation parameter.
alpha is kept as an explicit variable: the canonical bracket lowers the
pi-degree by one but leaves the alpha-degree alone, so the two gradings are
different things.

The polynomials themselves are sympy's sparse ring elements over QQ, so all
arithmetic is exact. This module adds what the engine needs on top of them:
truncation in alpha, substitution, the canonical Poisson bracket and a
deterministic string rendering.
"""
import operator
from dataclasses import dataclass
from functools import cached_property

import sympy
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

__all__ = [
    "Poly",
    "StructuralError",
    "VarSet",
    "poly_arith",
    "partial_derivative",
    "alpha_degree",
    "truncate",
    "alpha_coefficient",
    "Substitution",
    "multiply",
    "power",
    "substitute",
    "canonical_bracket",
    "pi_degree",
    "depends_on_momenta",
    "variable_names",
    "render",
]

Poly = PolyElement

RESERVED_PREFIXES = ("y", "pi", "x", "xt")


class StructuralError(ValueError):
    """ Raised when polynomials from different variable sets are mixed,
    or a variable is not part of the variable set. """


@dataclass(frozen=True)
class VarSet:
    """ The variables every polynomial of one computation lives in.

    Generators are ordered (alpha, y1..yN, pi1..piN, parameters). This order
    is also the monomial order used for printing.

    Args:
        dim (int): The number N of base coordinates.
        params (tuple[str, ...]): Names of the constant parameters.

    Raises:
        StructuralError: If dim < 1 or a name is used twice.
    """
    dim: int
    params: tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise StructuralError(f"dim must be at least 1, got {self.dim}")
        object.__setattr__(self, "params", tuple(self.params))
        if len(set(self.params)) != len(self.params):
            raise StructuralError(f"duplicate parameter names in {self.params}")
        for name in self.params:
            if name == "alpha" or _is_coordinate_name(name):
                raise StructuralError(f"parameter name {name!r} clashes with a coordinate name")

    @cached_property
    def ring(self) -> PolyRing:
        names = ["alpha"]
        names += [f"y{i + 1}" for i in range(self.dim)]
        names += [f"pi{i + 1}" for i in range(self.dim)]
        names += list(self.params)
        return PolyRing(sympy.symbols(names), QQ, grlex)

    @property
    def alpha(self) -> Poly:
        return self.ring.gens[0]

    def y(self, i: int) -> Poly:
        """ The base coordinate y_{i+1} (0-based index). """
        return self.ring.gens[1 + i]

    def pi(self, i: int) -> Poly:
        """ The momentum pi_{i+1} (0-based index). """
        return self.ring.gens[1 + self.dim + i]

    def param(self, name: str) -> Poly:
        if name not in self.params:
            raise StructuralError(f"unknown parameter {name!r}")
        return self.ring.gens[1 + 2 * self.dim + self.params.index(name)]

    def y_slot(self, i: int) -> int:
        return 1 + i

    def pi_slot(self, i: int) -> int:
        return 1 + self.dim + i

    def zero(self) -> Poly:
        return self.ring.zero

    def one(self) -> Poly:
        return self.ring.one

    def constant(self, value) -> Poly:
        """ A constant polynomial from an int, Fraction or sympy Rational. """
        return self.ring(sympy.Rational(value))

    def owns(self, f: Poly) -> bool:
        return isinstance(f, PolyElement) and f.ring == self.ring


def _is_coordinate_name(name: str) -> bool:
    for prefix in RESERVED_PREFIXES:
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return True
    return False


def _check_same_ring(a: Poly, b: Poly) -> None:
    if a.ring != b.ring:
        raise StructuralError("polynomials belong to different variable sets")


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """ Exact ring arithmetic on two polynomials of the same variable set.

    Args:
        a (Poly): Left operand.
        b (Poly): Right operand.
        op (str): One of "add", "sub", "mul".

    Returns:
        Poly: The normalized result.

    Raises:
        StructuralError: If the operands have different variable sets.

    Examples:
        >>> poly_arith(y1 + alpha, y1 - alpha, "mul")
        y1**2 - alpha**2
    """
    _check_same_ring(a, b)
    ops = {"add": operator.add, "sub": operator.sub, "mul": operator.mul}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](a, b)


def _resolve_generator(f: Poly, v) -> int:
    ring = f.ring
    if isinstance(v, PolyElement):
        if v.ring != ring or v not in ring.gens:
            raise StructuralError(f"{v} is not a variable of this variable set")
        return ring.gens.index(v)
    names = [str(s) for s in ring.symbols]
    if v not in names:
        raise StructuralError(f"unknown variable {v!r}")
    return names.index(v)


def partial_derivative(f: Poly, v) -> Poly:
    """ Formal partial derivative of f with respect to the variable v.

    Args:
        f (Poly): The polynomial to differentiate.
        v (Poly | str): A generator of f's ring or its name ("y1", "pi2", "R").

    Returns:
        Poly: df/dv.

    Raises:
        StructuralError: If v is not a variable of f's variable set.
    """
    return f.diff(f.ring.gens[_resolve_generator(f, v)])


def alpha_degree(f: Poly) -> int:
    """ Highest power of alpha in f (-1 for the zero polynomial). """
    return max((monom[0] for monom in f.itermonoms()), default=-1)


def truncate(f: Poly, k: int) -> Poly:
    """ Drops every monomial whose alpha-exponent is k or more.

    Args:
        f (Poly): The polynomial.
        k (int): The alpha order window. truncate(f, 0) is 0.

    Returns:
        Poly: f mod alpha^k.
    """
    assert k >= 0
    return f.ring.from_dict({m: c for m, c in f.items() if m[0] < k})


def alpha_coefficient(f: Poly, k: int) -> Poly:
    """ The coefficient of alpha^k in f, as a polynomial free of alpha. """
    result = {}
    for monom, coeff in f.items():
        if monom[0] == k:
            result[(0,) + monom[1:]] = coeff
    return f.ring.from_dict(result)


def _alpha_parts(f: Poly) -> dict:
    """ f split into alpha-homogeneous parts, keyed by the alpha exponent. """
    parts = {}
    for monom, coeff in f.items():
        parts.setdefault(monom[0], {})[monom] = coeff
    return {degree: f.ring.from_dict(terms) for degree, terms in parts.items()}


def multiply(a: Poly, b: Poly, below: int | None = None) -> Poly:
    """ Product of a and b, optionally computed only below alpha^below.

    The truncated product multiplies the alpha-homogeneous parts pairwise and
    skips every pair whose alpha degrees add up to below or more, so the
    monomials it would drop are never formed.
    """
    _check_same_ring(a, b)
    if below is None:
        return a * b
    result = a.ring.zero
    if not a or not b:
        return result
    b_parts = _alpha_parts(b)
    for da, pa in _alpha_parts(a).items():
        for db, pb in b_parts.items():
            if da + db < below:
                result += pa * pb
    return result


def power(f: Poly, n: int, below: int | None = None) -> Poly:
    result = f.ring.one
    for _ in range(n):
        result = multiply(result, f, below)
    return result


class Substitution:
    """ A simultaneous substitution of variables, reusable across polynomials.

    Products of the images are cached by their exponent vector, and the
    monomials of a polynomial are grouped by their exponents in the
    substituted variables, so each distinct product is formed once per
    Substitution however many polynomials it is applied to.

    Args:
        assignment (dict): Maps variables (generators or names) to polynomials
            of one variable set.
        below (int, optional): If given, every result is computed mod alpha^below.

    Raises:
        StructuralError: If a key is not a variable, or the images belong to
            different variable sets.

    Examples:
        >>> shift = Substitution({y1: y1 - alpha/2*pi2}, below=2)
        >>> shift(y1**2), shift(y1*y2)
        (y1**2 - alpha*y1*pi2, y1*y2 - 1/2*alpha*y2*pi2)
    """

    def __init__(self, assignment: dict, below: int | None = None):
        self.below = below
        self.ring = None
        slots = {}
        for variable, image in assignment.items():
            if self.ring is None:
                self.ring = image.ring
            elif image.ring != self.ring:
                raise StructuralError("substitution images belong to different variable sets")
            slots[_resolve_generator(image, variable)] = image
        self.slots = tuple(sorted(slots))
        self.images = tuple(slots[slot] for slot in self.slots)
        self.products = {}

    def _product(self, key: tuple) -> Poly:
        """ prod_s images[s]^key[s], mod alpha^below. """
        product = self.products.get(key)
        if product is None:
            if not any(key):
                product = self.ring.one
            else:
                position = next(p for p, exponent in enumerate(key) if exponent)
                lower = key[:position] + (key[position] - 1,) + key[position + 1:]
                product = multiply(self._product(lower), self.images[position], self.below)
            self.products[key] = product
        return product

    def __call__(self, f: Poly) -> Poly:
        if not self.slots:
            return f if self.below is None else truncate(f, self.below)
        _check_same_ring(f, self.ring.one)
        groups = {}
        for monom, coeff in f.items():
            key = tuple(monom[slot] for slot in self.slots)
            rest = list(monom)
            for slot in self.slots:
                rest[slot] = 0
            groups.setdefault(key, {})[tuple(rest)] = coeff
        result = f.ring.zero
        for key, rest in groups.items():
            result += multiply(self._product(key), f.ring.from_dict(rest), self.below)
        return result


def substitute(f: Poly, assignment: dict, below: int | None = None) -> Poly:
    """ Simultaneous substitution of variables followed by expansion.

    Args:
        f (Poly): The polynomial to substitute into.
        assignment (dict): Maps variables (generators or names) to polynomials
            of the same variable set.
        below (int, optional): If given, the result is computed mod alpha^below.

    Returns:
        Poly: f with every assigned variable replaced.

    Raises:
        StructuralError: If a key is not a variable, or an image belongs to
            another variable set.

    Examples:
        >>> substitute(y1*y2, {"y1": y1 - alpha/2*pi2})
        y1*y2 - 1/2*alpha*y2*pi2
    """
    return Substitution(assignment, below)(f)


def canonical_bracket(f: Poly, g: Poly, varset: VarSet, below: int | None = None) -> Poly:
    """ The canonical Poisson bracket in Darboux coordinates,

        {f, g} = sum_k (df/dy_k dg/dpi_k - df/dpi_k dg/dy_k),

    so that {y_i, pi_j} = delta_ij.

    Args:
        f (Poly): First argument.
        g (Poly): Second argument.
        varset (VarSet): The variable set both arguments live in.
        below (int, optional): If given, the bracket is computed mod alpha^below.

    Returns:
        Poly: {f, g}.

    Raises:
        StructuralError: If f or g is not over varset.
    """
    if not (varset.owns(f) and varset.owns(g)):
        raise StructuralError("bracket arguments must belong to the given variable set")
    result = varset.zero()
    gens = varset.ring.gens
    for k in range(varset.dim):
        y, pi = gens[varset.y_slot(k)], gens[varset.pi_slot(k)]
        f_y, g_pi = f.diff(y), g.diff(pi)
        if f_y and g_pi:
            result += multiply(f_y, g_pi, below)
        f_pi, g_y = f.diff(pi), g.diff(y)
        if f_pi and g_y:
            result -= multiply(f_pi, g_y, below)
    return result


def pi_degree(f: Poly, varset: VarSet) -> set[int]:
    """ The set of total pi-degrees appearing in f. """
    start, stop = varset.pi_slot(0), varset.pi_slot(0) + varset.dim
    return {sum(monom[start:stop]) for monom in f.itermonoms()}


def depends_on_momenta(f: Poly, varset: VarSet) -> bool:
    return any(degree > 0 for degree in pi_degree(f, varset))


def variable_names(varset: VarSet, frame: str = "darboux") -> list[str]:
    """ Printable names of the generators.

    The "darboux" frame prints (y, pi); "doubled" prints the same slots as
    the original and doubled coordinates (x, xt).
    """
    if frame == "darboux":
        base, momenta = "y", "pi"
    elif frame == "doubled":
        base, momenta = "x", "xt"
    else:
        raise ValueError(f"unknown frame {frame!r}")
    names = ["alpha"]
    names += [f"{base}{i + 1}" for i in range(varset.dim)]
    names += [f"{momenta}{i + 1}" for i in range(varset.dim)]
    names += list(varset.params)
    return names


def _render_coefficient(coeff) -> str:
    value = sympy.Rational(int(coeff.numerator), int(coeff.denominator))
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"


def render(f: Poly, varset: VarSet, frame: str = "darboux") -> str:
    """ Canonical string form of a polynomial.

    Terms come in graded lexicographic order over (alpha, y, pi, parameters).
    Within a term the factors are written as alpha, parameters, base
    coordinates, momenta, e.g. "-1/2*R*y3*pi2". This string is the payload
    of the JSON reports, so it must not change between runs.

    Args:
        f (Poly): The polynomial.
        varset (VarSet): Its variable set.
        frame (str): "darboux" or "doubled", see variable_names.

    Returns:
        str: The rendering, "0" for the zero polynomial.
    """
    if not f:
        return "0"
    names = variable_names(varset, frame)
    n = varset.dim
    factor_order = [0] + list(range(1 + 2 * n, len(names))) + list(range(1, 1 + 2 * n))
    pieces = []
    for monom, coeff in f.terms():
        factors = []
        for slot in factor_order:
            exponent = monom[slot]
            if exponent == 1:
                factors.append(names[slot])
            elif exponent > 1:
                factors.append(f"{names[slot]}^{exponent}")
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        text = _render_coefficient(magnitude)
        if factors:
            body = "*".join(factors) if text == "1" else text + "*" + "*".join(factors)
        else:
            body = text
        if not pieces:
            pieces.append("-" + body if negative else body)
        else:
            pieces.append(("- " if negative else "+ ") + body)
    return " ".join(pieces)
