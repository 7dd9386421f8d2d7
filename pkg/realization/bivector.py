"""
The input of every realization: an antisymmetric matrix Theta^{ij}(x) of
polynomials in the base coordinates and parameters.

Base coordinates x_1..x_N share the slots of the Darboux coordinates y_1..y_N,
so that substituting the Bopp shift y -> x(y, pi) is an ordinary substitution
of the y variables.
"""
from dataclasses import dataclass, field

from poly import Poly, StructuralError, Substitution, VarSet, depends_on_momenta, render
from tensor import LeadSymmetry, SymTensor

__all__ = ["Bivector"]


@dataclass(frozen=True)
class Bivector:
    """ Theta^{ij}(x), stored as the full N x N matrix.

    Args:
        varset (VarSet): The variable set of the entries.
        matrix (tuple): N rows of N polynomials.

    Raises:
        StructuralError: If the matrix is not antisymmetric, or an entry
            depends on alpha or the momenta.
    """
    varset: VarSet
    matrix: tuple = field(compare=False)

    def __post_init__(self):
        n = self.varset.dim
        assert len(self.matrix) == n and all(len(row) == n for row in self.matrix)
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))
        for i in range(n):
            if self.matrix[i][i]:
                raise StructuralError(f"diagonal entry ({i + 1}, {i + 1}) must vanish")
            for j in range(i + 1, n):
                entry = self.matrix[i][j]
                if not self.varset.owns(entry):
                    raise StructuralError(f"entry ({i + 1}, {j + 1}) is not over the variable set")
                if entry + self.matrix[j][i]:
                    raise StructuralError(f"entries ({i + 1}, {j + 1}) and ({j + 1}, {i + 1}) are not opposite")
                if any(monom[0] for monom in entry.itermonoms()) or depends_on_momenta(entry, self.varset):
                    raise StructuralError(f"entry ({i + 1}, {j + 1}) may only depend on x and parameters")

    @classmethod
    def from_entries(cls, varset: VarSet, entries: dict) -> "Bivector":
        """ Builds a bivector from its entries above (or below) the diagonal.

        Args:
            varset (VarSet): The variable set.
            entries (dict): Maps 0-based (i, j) to Theta^{ij}. The (j, i)
                entry is filled in as the negation. Missing pairs are zero.

        Returns:
            Bivector: The antisymmetric bivector.
        """
        n = varset.dim
        matrix = [[varset.zero() for _ in range(n)] for _ in range(n)]
        for (i, j), poly in entries.items():
            if i == j:
                raise StructuralError(f"diagonal entry ({i + 1}, {i + 1}) must vanish")
            matrix[i][j] = poly
            matrix[j][i] = -poly
        return cls(varset, tuple(tuple(row) for row in matrix))

    @property
    def dim(self) -> int:
        return self.varset.dim

    def __call__(self, i: int, j: int) -> Poly:
        return self.matrix[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bivector):
            return NotImplemented
        return self.varset == other.varset and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.varset, self.matrix))

    def is_zero(self) -> bool:
        return not any(entry for row in self.matrix for entry in row)

    def as_tensor(self) -> SymTensor:
        """ Theta as a lead-pair tensor without tail, the zeroth correction. """
        return SymTensor.from_function(
            self.varset, 2, 0, LeadSymmetry.ANTISYM_PAIR, lambda lead, _: self.matrix[lead[0]][lead[1]])

    def evaluate(self, images: list, below: int | None = None) -> tuple:
        """ Theta^{ij}(x) with x_l replaced by images[l], mod alpha^below. """
        varset = self.varset
        evaluate = Substitution({varset.y(l): image for l, image in enumerate(images)}, below)
        n = varset.dim
        rows = [[varset.zero() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                value = evaluate(self.matrix[i][j])
                rows[i][j] = value
                rows[j][i] = -value
        return tuple(tuple(row) for row in rows)

    def render(self) -> list[dict]:
        """ Nonzero entries above the diagonal, 1-based, in the doubled frame. """
        lines = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.matrix[i][j]:
                    lines.append({"lead": [i + 1, j + 1],
                                  "poly": render(self.matrix[i][j], self.varset, "doubled")})
        return lines
