"""The A-hat family: polynomials in l from the matrix elements of
S = exp(a J+^2) exp(b J-^2), with n = 2j + q and k = 2l + q.

All three constructions (five-term recurrence, 2F3 sum, extraction from the
exact matrix of S) live here together with the characterization checks
built on top of them.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial as ifact
import math

from . import numeric
from .errors import (
    IdentityFailure,
    IndexOutOfFamily,
    InterpolationDegreeMismatch,
    ReflectionMismatch,
)
from .exactnum import (
    UPoly,
    as_rational,
    backward_difference,
    factorial,
    forward_difference,
    hyp_terminating,
    interpolate,
    iterate,
    pochhammer,
    rational_to_str,
)
from .functionals import LinearFunctional, check_moment_pattern, decomposition_degrees
from .su2rep import matrix_S, matrix_S_inverse, reflected

VAR = "l"


@dataclass(frozen=True)
class FamilyParamsA:
    q: int
    c: Fraction
    N: int

    def __post_init__(self):
        if self.q not in (0, 1):
            raise ValueError("q must be 0 or 1")
        object.__setattr__(self, "c", as_rational(self.c))
        if self.c == 0:
            raise ValueError("c = ab must be nonzero")
        if self.N < self.q:
            raise ValueError("N must be at least q")

    @property
    def j_max(self):
        return (self.N - self.q) // 2

    def n_of(self, j):
        return 2 * j + self.q

    def k_of(self, ell):
        return 2 * ell + self.q

    def check_index(self, j):
        if not 0 <= j <= self.j_max:
            raise IndexOutOfFamily(f"j = {j} outside 0..{self.j_max}")


def xi(t, n, N):
    """Coefficients xi_t(n, N) of the five-term recurrence."""
    if t == 0:
        return 2 * (2 * n - N) * (2 * n * n - 2 * n * N - N + 1)
    if t == 1:
        return 4 * (6 * n * n - 6 * n * (N + 2) + N * N + 5 * N + 9)
    if t == 2:
        return 16 * (2 * n - N - 4)
    if t == 3:
        return 16 + 0 * n
    raise ValueError("t must be in 0..3")


def sigma(t, n, N):
    """Coefficients of the recurrence obeyed by the rows of S^-1."""
    if t == 0:
        return 2 * (2 * n - N) * (1 + 2 * n * (n - N) - N)
    if t == 1:
        return 4 * (6 * n * n - 6 * n * (N + 2) + N * N - 7 * N + 9)
    if t == 2:
        return 16 * (2 * n - N + 4)
    if t == 3:
        return 16 + 0 * n
    raise ValueError("t must be in 0..3")


# --- constructions -------------------------------------------------------


def _recurrence_step(params, j, prev, ell):
    """Return A_{j+1} from prev = [A_0..A_j]; works for UPoly or scalar ell."""
    q, c, N = params.q, params.c, params.N
    n = 2 * j + q
    nxt = (ell - j) * prev[j]
    if j >= 1:
        nxt = nxt + c * pochhammer(-n, 2) * pochhammer(N - n + 1, 2) * prev[j - 1]
    for t in range(4):
        if j - t >= 0:
            coef = c * (-c) ** t * xi(t, n, N) * pochhammer(-n, 2 * t) * pochhammer(N - n + 1, 2 * t)
            if coef:
                nxt = nxt + coef * prev[j - t]
    return nxt


def a_poly_recurrence(params, j_max):
    """Monic A_0..A_{j_max} from the five-term recurrence."""
    params.check_index(j_max)
    ell = UPoly.identity(VAR)
    polys = [UPoly([1], VAR)]
    for j in range(j_max):
        polys.append(_recurrence_step(params, j, polys, ell))
    return polys


def a_values_at(params, ell, j_max=None):
    """[A_0(ell), ..., A_{j_max}(ell)] by running the recurrence on numbers.

    Much cheaper than building the polynomials when N is large.
    """
    j_max = params.j_max if j_max is None else j_max
    params.check_index(j_max)
    ell = as_rational(ell)
    vals = [Fraction(1)]
    for j in range(j_max):
        vals.append(_recurrence_step(params, j, vals, ell))
    return vals


def a_poly_hypergeometric(params, j):
    params.check_index(j)
    q, c, N = params.q, params.c, params.N
    n = params.n_of(j)
    ell = UPoly.identity(VAR)
    series = hyp_terminating(
        [Fraction(-j), -ell],
        [Fraction(2 * q + 1, 2), Fraction(q - N, 2), Fraction(q - N + 1, 2)],
        1 / (16 * c),
    )
    if not isinstance(series, UPoly):
        series = UPoly([series], VAR)
    pref = c ** j / factorial(j) * factorial(N - q) * factorial(n) / factorial(N - n)
    return series * pref


def ground_state_rationalized(a, q, ell):
    """S~[k][q] for k = 2l + q; exact closed form a^l (2l+q)!/l!."""
    return as_rational(a) ** ell * Fraction(ifact(2 * ell + q), ifact(ell))


def a_poly_from_matrix(params, j, a=1):
    """Extract A_j from column n = 2j+q of the exact matrix of S (b = c/a)."""
    params.check_index(j)
    a = as_rational(a)
    S = matrix_S(params.N, a, params.c / a)
    return _extract_from_matrix(params, S, j, a)


def _extract_from_matrix(params, S, j, a):
    q = params.q
    n = params.n_of(j)
    grid = list(range(params.j_max + 1))
    # S~[k][n] / S~[k][q] = a^-j A_j(l) / n!
    values = [ifact(n) * a ** j * S[params.k_of(x), n] / S[params.k_of(x), q] for x in grid]
    poly = interpolate(grid, values, VAR)
    if poly.degree != j:
        raise InterpolationDegreeMismatch(f"interpolant has degree {poly.degree}, expected {j}")
    return poly


def check_ground_state(params, a=1):
    """Compare column q of S with the closed-form ground state."""
    a = as_rational(a)
    S = matrix_S(params.N, a, params.c / a)
    return all(
        S[params.k_of(x), params.q] == ground_state_rationalized(a, params.q, x)
        for x in range(params.j_max + 1)
    )


def construction_triangle(params, a=1):
    """True when recurrence, 2F3 and matrix constructions agree for all j."""
    rec = a_poly_recurrence(params, params.j_max)
    a = as_rational(a)
    S = matrix_S(params.N, a, params.c / a)
    for j in range(params.j_max + 1):
        hyp = a_poly_hypergeometric(params, j)
        mat = _extract_from_matrix(params, S, j, a)
        if not (rec[j] == hyp == mat):
            return False
    return True


# --- inverse elements and biorthogonality -------------------------------


def inverse_elements_A(params, a=1):
    """chi~ = S^-1 in the rationalized basis, cross-checked two or three ways.

    Always compares the direct inverse with the reflection of S evaluated at
    (-a, -b). When N = 2p + 2q the closed form in terms of A_{p-j}(p-l) is
    checked entrywise as well.
    """
    a = as_rational(a)
    N, c, q = params.N, params.c, params.q
    b = c / a
    chi = matrix_S_inverse(N, a, b)
    if reflected(matrix_S(N, -a, -b), N) != chi:
        raise ReflectionMismatch("S^-1 differs from the reflected S(-a, -b)")
    if (N - 2 * q) % 2 == 0 and N >= 2 * q:
        p = (N - 2 * q) // 2
        polys = a_poly_recurrence(params, p)
        for j in range(p + 1):
            for ell in range(p + 1):
                n, k = 2 * j + q, 2 * ell + q
                expected = (
                    (-a) ** (j - ell)
                    / factorial(p - ell)
                    * Fraction(ifact(n), ifact(k))
                    * polys[p - j](p - ell)
                )
                if chi[n, k] != expected:
                    raise ReflectionMismatch(f"explicit inverse fails at n={n}, k={k}")
    return chi


def biortho_weight(ell, p):
    return Fraction((-1) ** ell, ifact(ell) * ifact(p - ell))


def biortho_poly_check(N, c):
    """Weighted biorthogonality sums for every pairing that applies to N.

    Even N = 2p + 2q pairs q with itself (for each admissible q); odd
    N = 2p + 1 interlaces q = 0 with q' = 1 and vice versa. Returns a list of
    ``{"q": q, "q_prime": q', "p": p, "table": ..., "passed": bool}``.
    """
    c = as_rational(c)
    if N % 2 == 0:
        pairs = [(q, q, (N - 2 * q) // 2) for q in (0, 1) if N >= 2 * q]
    else:
        pairs = [(0, 1, (N - 1) // 2), (1, 0, (N - 1) // 2)]
    reports = []
    for q, qp, p in pairs:
        left = a_poly_recurrence(FamilyParamsA(q, c, N), p)
        right = a_poly_recurrence(FamilyParamsA(qp, c, N), p)
        table = [
            [
                sum(
                    (biortho_weight(ell, p) * left[j](ell) * right[p - jp](p - ell) for ell in range(p + 1)),
                    Fraction(0),
                )
                for jp in range(p + 1)
            ]
            for j in range(p + 1)
        ]
        passed = all(
            table[j][jp] == ((-1) ** j if j == jp else 0) for j in range(p + 1) for jp in range(p + 1)
        )
        reports.append({"q": q, "q_prime": qp, "p": p, "table": table, "passed": passed})
    return reports


def matrix_biorthogonality(params, a=1):
    a = as_rational(a)
    b = params.c / a
    prod = matrix_S_inverse(params.N, a, b) @ matrix_S(params.N, a, b)
    return prod.entries == tuple(
        tuple(Fraction(int(i == j)) for j in range(params.N + 1)) for i in range(params.N + 1)
    )


# --- difference equation and forward shift -----------------------------


def omega_cleared(q, N):
    """(l + 1) * Omega_l = (2l+q+1)_2 (2l+q-N)_2 as a polynomial."""
    ell = UPoly.identity(VAR)
    return pochhammer(2 * ell + (q + 1), 2) * pochhammer(2 * ell + (q - N), 2)


def _xi_poly(t, q, N):
    ell = UPoly.identity(VAR)
    return xi(t, 2 * ell + q, N)


def _lower_sum(q, N, poly):
    """sum_t (-l)_t xi_t(2l+q, N) poly(l - t)."""
    ell = UPoly.identity(VAR)
    total = UPoly((), VAR)
    for t in range(4):
        total = total + pochhammer(-ell, t) * _xi_poly(t, q, N) * poly.shift(-t)
    return total


def a_difference_apply(params, j, polys=None):
    """Check the difference equation of A_j as a polynomial identity.

    Both sides are multiplied by (l + 1) to clear the denominator of Omega.
    Returns the (zero) residual; raises IdentityFailure otherwise.
    """
    params.check_index(j)
    A = (polys or a_poly_recurrence(params, j))[j]
    q, c, N = params.q, params.c, params.N
    ell = UPoly.identity(VAR)
    one = ell + 1
    lhs = one * (j - ell) * A
    rhs = omega_cleared(q, N) * A.shift(1) * c - one * ell * A.shift(-1) - one * _lower_sum(q, N, A) * c
    residual = lhs - rhs
    if not residual.is_zero():
        raise IdentityFailure(f"difference equation fails for j={j}", residual)
    return residual


def difference_operator_A(params, poly):
    """(l + 1) * H poly, with H written through Delta and nabla."""
    q, c, N = params.q, params.c, params.N
    ell = UPoly.identity(VAR)
    up = sum((iterate(forward_difference, poly, w) for w in range(2)), UPoly((), VAR))
    down = UPoly((), VAR)
    for t in range(4):
        inner = UPoly((), VAR)
        for w in range(t + 1):
            inner = inner + iterate(backward_difference, poly, w) * ((-1) ** w * comb(t, w))
        down = down + pochhammer(-ell, t) * _xi_poly(t, q, N) * inner
    return (ell + 1) * ell * backward_difference(poly) + omega_cleared(q, N) * up * c - (ell + 1) * down * c


def a_eigen_check(params, j, polys=None):
    params.check_index(j)
    A = (polys or a_poly_recurrence(params, j))[j]
    residual = difference_operator_A(params, A) - (UPoly.identity(VAR) + 1) * A * j
    if not residual.is_zero():
        raise IdentityFailure(f"eigenvalue equation fails for j={j}", residual)
    return residual


def forward_shift_operator_A(params, poly):
    """(l + 1) * F poly."""
    q, N = params.q, params.N
    ell = UPoly.identity(VAR)
    up = sum((iterate(forward_difference, poly, w) for w in range(2)), UPoly((), VAR))
    down = UPoly((), VAR)
    for t in range(4):
        inner = UPoly((), VAR)
        for w in range(t + 1):
            inner = inner + iterate(backward_difference, poly, w) * ((-1) ** w * comb(t, w))
        down = down + pochhammer(-ell, t) * _xi_poly(t, q, N) * inner
    return omega_cleared(q, N) * up - (ell + 1) * down


def a_forward_shift(params, j, polys=None):
    if j < 1:
        raise IndexOutOfFamily("the forward shift needs j >= 1")
    params.check_index(j)
    polys = polys or a_poly_recurrence(params, j)
    q, N = params.q, params.N
    factor = pochhammer(-2 * j - q, 2) * pochhammer(N - 2 * j - q + 1, 2)
    lhs = forward_shift_operator_A(params, polys[j])
    rhs = (UPoly.identity(VAR) + 1) * polys[j - 1] * factor
    residual = lhs - rhs
    if not residual.is_zero():
        raise IdentityFailure(f"forward shift fails for j={j}", residual)
    return factor


# --- d-orthogonality functionals ----------------------------------------


def functionals_A(params, a=1, gamma_max=None, check=True):
    """The three functionals L_0, L_1, L_2 as rational weight vectors.

    The weight at x is a^x/x! (2x+q)! chi~[2i+q][2x+q]; it differs from the
    orthonormal-basis weight by a positive factor depending only on i, which
    leaves the zero pattern unchanged.
    """
    q, N = params.q, params.N
    if 2 * 2 + q > N:
        raise ValueError("need N >= 4 + q so that rows 2i+q exist for i = 0, 1, 2")
    a = as_rational(a)
    chi = matrix_S_inverse(N, a, params.c / a)
    grid = tuple(range(params.j_max + 1))
    fns = []
    for i in range(3):
        weights = tuple(
            a ** x / factorial(x) * factorial(2 * x + q) * chi[2 * i + q, 2 * x + q] for x in grid
        )
        fns.append(LinearFunctional(f"L_{i}^({q})", grid, weights))
    if check:
        polys = a_poly_recurrence(params, params.j_max)
        gmax = params.j_max // 3 if gamma_max is None else gamma_max
        check_moment_pattern(fns, polys, gmax, d=3, var=VAR)
    return fns


def proposition_degrees_A(params, index_max, a=1):
    """Degree table of Y_i^(j) in chi~ row 2j+q = sum_i Y_i Xi_i on the grid."""
    q, N = params.q, params.N
    if 2 * index_max + q > N:
        raise ValueError("rows beyond N requested")
    a = as_rational(a)
    chi = matrix_S_inverse(N, a, params.c / a)
    grid = list(range(params.j_max + 1))
    rows = [[chi[2 * j + q, 2 * x + q] for x in grid] for j in range(index_max + 1)]
    return decomposition_degrees(rows, grid, index_max, VAR)


# --- generating function (floating point) ------------------------------


def hermite_complex(n, z):
    total = 0
    for m in range(n // 2 + 1):
        total += (-1) ** m * ifact(n) / (ifact(m) * ifact(n - 2 * m)) * (2 * z) ** (n - 2 * m)
    return total


def a_generating_function_check(N, a, b, eta, polys=None):
    """Evaluate G(k; eta) three ways for every k and report deviations.

    (i)  sum_j A_j(l) (eta/sqrt a)^n / n!                 (exact A, float sum)
    (ii) prefactor * <k|S|N,eta> with float orthonormal matrices
    (iii) the Hermite-sum closed form.
    ``a`` must be positive; ``b`` and ``eta`` may be any real / complex.
    """
    a_f, b_f = float(a), float(b)
    if a_f <= 0:
        raise ValueError("the generating function check needs a > 0")
    c = as_rational(a) * as_rational(b)
    eta = complex(eta)

    Jp, Jm = numeric.ladder_float(N)
    v = numeric.coherent_float(N, eta)
    Sv = numeric.expm_nilpotent_apply(a_f * Jp @ Jp, numeric.expm_nilpotent_apply(b_f * Jm @ Jm, v))

    sqa = math.sqrt(a_f)
    sqb = numeric.csqrt(b_f)
    sqc = sqa * sqb
    rows = []
    for k in range(N + 1):
        q, ell = k % 2, k // 2
        params = FamilyParamsA(q, c, N)
        A = polys[q] if polys else a_poly_recurrence(params, params.j_max)
        g1 = sum(
            complex(A[j](ell)) * (eta / sqa) ** (2 * j + q) / ifact(2 * j + q) for j in range(params.j_max + 1)
        )
        psi_kq = a_f ** ell / ifact(ell) * math.sqrt(ifact(N - q) * ifact(k) / ifact(N - k))
        g2 = Sv[k] / psi_kq * math.sqrt(a_f ** (-q) * ifact(N - q) / ifact(N))
        if eta == 0 or b_f == 0:
            g3 = None
        else:
            z = 1j / (2 * eta * sqb)
            s = sum(
                (1 / sqc) ** (2 * m + q) / ifact(2 * m + q) * float(pochhammer(Fraction(-ell), m)) * hermite_complex(N - 2 * m - q, z)
                for m in range(params.j_max + 1)
            )
            g3 = (1j) ** (N + q) * (-eta * sqb) ** N * s
        rows.append({"k": k, "defining": g1, "coherent": g2, "hermite": g3})
    dev12 = max(numeric.rel_dev(r["defining"], r["coherent"]) for r in rows)
    hermite_rows = [r for r in rows if r["hermite"] is not None]
    dev23 = max((numeric.rel_dev(r["coherent"], r["hermite"]) for r in hermite_rows), default=None)
    return {"N": N, "rows": rows, "dev_defining_coherent": dev12, "dev_coherent_hermite": dev23}


# --- serialization -------------------------------------------------------


def family_dump(params, polys=None):
    polys = polys or a_poly_recurrence(params, params.j_max)
    return {
        "family": "A",
        "q": params.q,
        "c": rational_to_str(params.c),
        "N": params.N,
        "polys": [
            {"j": j, "coeffs": [rational_to_str(x) for x in p.coeffs]} for j, p in enumerate(polys)
        ],
    }


def family_from_dump(data):
    params = FamilyParamsA(int(data["q"]), Fraction(data["c"]), int(data["N"]))
    polys = [UPoly([Fraction(x) for x in entry["coeffs"]], VAR) for entry in data["polys"]]
    return params, polys
