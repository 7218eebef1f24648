"""Linear functionals on a finite grid and the vector-orthogonality tests
shared by both families."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import PatternViolation
from .exactnum import UPoly, solve_exact


@dataclass(frozen=True)
class LinearFunctional:
    """f -> sum_x weights[x] * f(grid[x])."""

    label: str
    grid: tuple
    weights: tuple

    def __call__(self, poly):
        return sum((w * poly(x) for x, w in zip(self.grid, self.weights)), Fraction(0))


def moment_table(functionals, polys, gamma_max, var="x"):
    """{(i, gamma, j): L_i[x^gamma P_j]} for every functional and polynomial."""
    x = UPoly.identity(var)
    table = {}
    for i, L in enumerate(functionals):
        for gamma in range(gamma_max + 1):
            xg = x ** gamma
            for j, p in enumerate(polys):
                table[(i, gamma, j)] = L(xg * p)
    return table


def check_moment_pattern(functionals, polys, gamma_max, d=3, var="x"):
    """Check the d-orthogonality zero pattern.

    L_i[x^gamma P_j] must vanish for j >= d*gamma + i + 1 and must not vanish
    at j = d*gamma + i. Raises PatternViolation with the first offender and
    otherwise returns the number of entries checked.
    """
    table = moment_table(functionals, polys, gamma_max, var)
    checked = 0
    for (i, gamma, j), value in sorted(table.items()):
        if j >= d * gamma + i + 1 and value != 0:
            raise PatternViolation(
                f"L_{i}[x^{gamma} P_{j}] = {value}, expected 0", (i, gamma, j)
            )
        if j == d * gamma + i and value == 0:
            raise PatternViolation(f"L_{i}[x^{gamma} P_{j}] vanishes", (i, gamma, j))
        checked += 1
    return checked


def rule_degrees(index):
    """Degrees (Y_0, Y_1, Y_2) predicted for index = 3*gamma + delta; -1 means
    the coefficient polynomial is identically zero."""
    gamma, delta = divmod(index, 3)
    return tuple(gamma if i <= delta else gamma - 1 for i in range(3))


def solve_decomposition(target, basis, grid, degrees):
    """Solve target(x) = sum_i Y_i(x) basis[i](x) on the grid with deg Y_i
    bounded by ``degrees``.

    ``target`` and each ``basis[i]`` are sequences of values on ``grid``.
    Returns ``(Ys, unique)`` with ``Ys`` a list of UPoly (None if the system is
    inconsistent) and ``unique`` telling whether the solution is forced.
    """
    columns = []
    for i, deg in enumerate(degrees):
        for p in range(deg + 1):
            columns.append((i, p))
    rows = [[basis[i][g] * Fraction(x) ** p for (i, p) in columns] for g, x in enumerate(grid)]
    if not columns:
        ok = all(t == 0 for t in target)
        return ([UPoly()] * len(degrees) if ok else None), True
    sol, rank = solve_exact(rows, list(target))
    if sol is None:
        return None, rank == len(columns)
    coeffs = [[Fraction(0)] * (max(deg, 0) + 1) for deg in degrees]
    for (i, p), v in zip(columns, sol):
        coeffs[i][p] = v
    return [UPoly(c) for c in coeffs], rank == len(columns)


def decomposition_degrees(rows, grid, index_max, var="x"):
    """Degree table for rows[n] = sum_{i<3} Y_i^(n) rows[i] on the grid.

    For each index the rule degrees are imposed, the exact system is solved,
    and the realised degrees of the (unique) solution are returned alongside
    the prediction: ``{n: (predicted, realised, unique)}``.
    """
    basis = rows[:3]
    out = {}
    for n in range(index_max + 1):
        predicted = rule_degrees(n)
        Ys, unique = solve_decomposition(rows[n], basis, grid, predicted)
        realised = None if Ys is None else tuple(y.degree for y in Ys)
        out[n] = (predicted, realised, unique)
    return out
