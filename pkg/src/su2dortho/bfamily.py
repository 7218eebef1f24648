"""The B-hat family: polynomials in k from the matrix elements of
Q = exp(a J+) exp(b J-^M), with f = a^M b and n = M j + q.
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
    factorial,
    hyp_terminating,
    interpolate,
    pochhammer,
    rational_to_str,
)
from .functionals import LinearFunctional, check_moment_pattern, decomposition_degrees
from .su2rep import matrix_Q, matrix_Q_inverse, reflected

VAR = "k"


@dataclass(frozen=True)
class FamilyParamsB:
    M: int
    f: Fraction
    N: int

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be at least 1")
        object.__setattr__(self, "f", as_rational(self.f))
        if self.f == 0:
            raise ValueError("f = a^M b must be nonzero")
        if self.N < 0:
            raise ValueError("N must be nonnegative")

    def residue(self, n):
        """(j, q) with n = M j + q and 0 <= q < M."""
        return divmod(n, self.M)

    def check_index(self, n):
        if not 0 <= n <= self.N:
            raise IndexOutOfFamily(f"n = {n} outside 0..{self.N}")


def zeta_M(M, n, N):
    return (-1) ** M * M * pochhammer(-n, M) * pochhammer(N - n + 1, M)


def zeta_M1(M, n, N):
    return (-1) ** M * M * pochhammer(-n, M - 1) * pochhammer(N - n + 1, M - 1) * (2 * n - M - N + 1)


def zeta_2M1(M, n, N):
    return -M * M * pochhammer(-n, 2 * M - 1) * pochhammer(N - n + 1, 2 * M - 1)


# --- constructions -------------------------------------------------------


def b_poly_recurrence(params, n_max):
    params.check_index(n_max)
    M, f, N = params.M, params.f, params.N
    k = UPoly.identity(VAR)
    B = [UPoly([1], VAR)]

    def at(i):
        return B[i] if i >= 0 else UPoly((), VAR)

    for n in range(n_max):
        nxt = (k - n) * B[n]
        nxt = nxt + at(n - M) * (f * zeta_M(M, n, N))
        nxt = nxt + at(n + 1 - M) * (f * zeta_M1(M, n, N))
        nxt = nxt + at(n + 1 - 2 * M) * (f * f * zeta_2M1(M, n, N))
        B.append(nxt)
    return B


def b_parameters(M, q, N):
    """(alpha, beta, gamma) parameter lists; alpha entries are polynomials in k."""
    k = UPoly.identity(VAR)
    alpha = [(-k + (q + m)) * Fraction(1, M) for m in range(M)]
    beta = [Fraction(q + m + 1, M) for m in range(M) if q + m + 1 != M]
    gamma = [Fraction(q - N + m, M) for m in range(M)]
    return alpha, beta, gamma


def b_poly_hypergeometric(params, n):
    params.check_index(n)
    M, f, N = params.M, params.f, params.N
    j, q = params.residue(n)
    alpha, beta, gamma = b_parameters(M, q, N)
    series = hyp_terminating([Fraction(-j)] + alpha, beta + gamma, -1 / (M ** M * f))
    if not isinstance(series, UPoly):
        series = UPoly([series], VAR)
    k = UPoly.identity(VAR)
    pref = (-1) ** q * f ** j / (factorial(j) * factorial(q)) * factorial(N - q) * factorial(n) / factorial(N - n)
    return pochhammer(-k, q) * series * pref


def b_poly_from_matrix(params, n, a=1):
    """Extract B_n from column n of the exact matrix of Q, with b = f/a^M."""
    params.check_index(n)
    a = as_rational(a)
    Q = matrix_Q(params.N, a, params.f / a ** params.M, params.M)
    return _extract_from_matrix(params, Q, n, a)


def _extract_from_matrix(params, Q, n, a):
    grid = list(range(params.N + 1))
    # phi~[k][0] = a^k and phi~[k][n] = a^(k-n) B_n(k) / n!
    values = [ifact(n) * a ** n * Q[x, n] / Q[x, 0] for x in grid]
    poly = interpolate(grid, values, VAR)
    if poly.degree != n:
        raise InterpolationDegreeMismatch(f"interpolant has degree {poly.degree}, expected {n}")
    return poly


def construction_triangle(params, a=1):
    rec = b_poly_recurrence(params, params.N)
    a = as_rational(a)
    Q = matrix_Q(params.N, a, params.f / a ** params.M, params.M)
    for n in range(params.N + 1):
        hyp = b_poly_hypergeometric(params, n)
        mat = _extract_from_matrix(params, Q, n, a)
        if not (rec[n] == hyp == mat):
            return False
    return True


# --- inverse elements and biorthogonality -------------------------------


def inverse_elements_B(params, a=1):
    a = as_rational(a)
    M, N = params.M, params.N
    b = params.f / a ** M
    inv = matrix_Q_inverse(N, a, b, M)
    if reflected(matrix_Q(N, -a, -b, M), N) != inv:
        raise ReflectionMismatch("Q^-1 differs from the reflected Q(-a, -b)")
    return inv


def matrix_biorthogonality(params, a=1):
    a = as_rational(a)
    b = params.f / a ** params.M
    prod = matrix_Q_inverse(params.N, a, b, params.M) @ matrix_Q(params.N, a, b, params.M)
    return prod.entries == tuple(
        tuple(Fraction(int(i == j)) for j in range(params.N + 1)) for i in range(params.N + 1)
    )


def biortho_poly_check_B(params):
    """Table of sum_k w_k B_n(k; f) B_{N-m}(N-k; f') with f' = (-1)^(M+1) f."""
    N = params.N
    left = b_poly_recurrence(params, N)
    dual = FamilyParamsB(params.M, (-1) ** (params.M + 1) * params.f, N)
    right = b_poly_recurrence(dual, N)
    w = [Fraction((-1) ** k, ifact(k) * ifact(N - k)) for k in range(N + 1)]
    table = [
        [sum((w[k] * left[n](k) * right[N - m](N - k) for k in range(N + 1)), Fraction(0)) for m in range(N + 1)]
        for n in range(N + 1)
    ]
    passed = all(table[n][m] == ((-1) ** n if n == m else 0) for n in range(N + 1) for m in range(N + 1))
    return {"M": params.M, "N": N, "table": table, "passed": passed}


# --- Krawtchouk (M = 1) ---------------------------------------------------


def krawtchouk_poly(n, p, N):
    """K_n(x; p, N) = 2F1(-n, -x; -N; 1/p) as a polynomial in x."""
    x = UPoly.identity(VAR)
    p = as_rational(p)
    total = UPoly((), VAR)
    for mu in range(n + 1):
        total = total + pochhammer(-x, mu) * (
            pochhammer(Fraction(-n), mu) / (pochhammer(Fraction(-N), mu) * factorial(mu)) / p ** mu
        )
    return total


def krawtchouk_reduction_check(f, N):
    """B_n(k; f, N) = f^n N!/(N-n)! K_n(k; -f, N) for every n, M = 1."""
    f = as_rational(f)
    B = b_poly_recurrence(FamilyParamsB(1, f, N), N)
    return all(
        B[n] == krawtchouk_poly(n, -f, N) * (f ** n * factorial(N) / factorial(N - n)) for n in range(N + 1)
    )


def krawtchouk_orthogonality(p, N):
    """True when the weighted Gram table equals the closed-form diagonal."""
    p = as_rational(p)
    K = [krawtchouk_poly(n, p, N) for n in range(N + 1)]
    w = [comb(N, x) * p ** x * (1 - p) ** (N - x) for x in range(N + 1)]
    for m in range(N + 1):
        for n in range(N + 1):
            lhs = sum((w[x] * K[m](x) * K[n](x) for x in range(N + 1)), Fraction(0))
            rhs = 0
            if m == n:
                rhs = (-1) ** n * factorial(n) / pochhammer(Fraction(-N), n) * ((1 - p) / p) ** n
            if lhs != rhs:
                return False
    return True


# --- difference equation (M = 2) ----------------------------------------


def b_difference_rhs(f, N, poly, literal=False):
    """Right side of the five-point equation applied to ``poly``.

    With ``literal`` the coefficients are taken exactly as usually displayed
    (zeta_0 ending in N(N+1) and zeta_1(k) on the k+1 term); otherwise the
    corrected coefficients are used.
    """
    f = as_rational(f)
    k = UPoly.identity(VAR)
    z1 = 2 * k - (N + 1)
    if literal:
        z0 = 6 * k * k - 6 * N * k + N * (N + 1)
        z1_up = z1
    else:
        z0 = 6 * k * k - 6 * N * k + N * (N - 1)
        z1_up = z1.shift(1)
    return (
        pochhammer(k - N, 2) * poly.shift(2) * (2 * f)
        + z1_up * (N - k) * poly.shift(1) * (4 * f)
        + (k + z0 * (2 * f)) * poly
        - k * (z1 * (4 * f) + 1) * poly.shift(-1)
        + pochhammer(-k, 2) * poly.shift(-2) * (2 * f)
    )


def b_difference_check(params, n, polys=None, literal=False):
    if params.M != 2:
        raise ValueError("the difference equation is implemented for M = 2 only")
    params.check_index(n)
    B = (polys or b_poly_recurrence(params, n))[n]
    residual = b_difference_rhs(params.f, params.N, B, literal) - B * n
    if not residual.is_zero():
        raise IdentityFailure(f"difference equation fails for n={n}", residual)
    return residual


def b_difference_residual(params, n, literal=True):
    """Residual polynomial of the equation; zero when it holds."""
    B = b_poly_recurrence(params, n)[n]
    return b_difference_rhs(params.f, params.N, B, literal) - B * n


# --- functionals (M = 2) --------------------------------------------------


def functionals_B(params, a=1, gamma_max=None, check=True):
    """M_0, M_1, M_2 with rationalized weights a^x vs~[i][x]."""
    if params.M != 2:
        raise ValueError("the functionals are implemented for M = 2 only")
    if params.N < 2:
        raise ValueError("need N >= 2")
    a = as_rational(a)
    N = params.N
    inv = matrix_Q_inverse(N, a, params.f / a ** 2, 2)
    grid = tuple(range(N + 1))
    fns = [
        LinearFunctional(f"M_{i}", grid, tuple(a ** x * inv[i, x] for x in grid)) for i in range(3)
    ]
    if check:
        polys = b_poly_recurrence(params, N)
        gmax = N // 3 if gamma_max is None else gamma_max
        check_moment_pattern(fns, polys, gmax, d=3, var=VAR)
    return fns


def proposition_degrees_B(params, index_max, a=1):
    if params.M != 2:
        raise ValueError("implemented for M = 2 only")
    if index_max > params.N:
        raise ValueError("rows beyond N requested")
    a = as_rational(a)
    inv = matrix_Q_inverse(params.N, a, params.f / a ** 2, 2)
    grid = list(range(params.N + 1))
    rows = [[inv[n, x] for x in grid] for n in range(index_max + 1)]
    return decomposition_degrees(rows, grid, index_max, VAR)


# --- generating function (floating point) ------------------------------


def b_generating_function_check(M, N, a, b, eta, polys=None):
    """G(k; eta) by the defining sum, the coherent-state overlap and the
    closed MF0 form; at M = 1 also the Krawtchouk generating function."""
    a_f, b_f = float(a), float(b)
    if a_f == 0:
        raise ValueError("a must be nonzero")
    f = as_rational(a) ** M * as_rational(b)
    eta = complex(eta)
    B = polys or b_poly_recurrence(FamilyParamsB(M, f, N), N)

    Jp, Jm = numeric.ladder_float(N)
    v = numeric.coherent_float(N, eta)
    JmM = numeric.np.linalg.matrix_power(Jm, M)
    Qv = numeric.expm_nilpotent_apply(a_f * Jp, numeric.expm_nilpotent_apply(b_f * JmM, v))

    rows = []
    for k in range(N + 1):
        g1 = sum(complex(B[n](k)) * (eta / a_f) ** n / ifact(n) for n in range(N + 1))
        g2 = Qv[k] / (a_f ** k * math.sqrt(comb(N, k)))
        g3 = 0
        for mu in range(N + 1):
            delta = [(mu - N + m) / M for m in range(M)]
            inner = numeric.hyp_float(delta, [], (-1) ** M * (M * eta) ** M * b_f, N)
            g3 += (-eta / a_f) ** mu / ifact(mu) * float(pochhammer(Fraction(-k), mu)) * inner
        g4 = None
        if M == 1:
            g4 = (1 + b_f * eta) ** (N - k) * (1 + (1 + a_f * b_f) * eta / a_f) ** k
        rows.append({"k": k, "defining": g1, "coherent": g2, "closed": g3, "krawtchouk": g4})
    out = {
        "M": M,
        "N": N,
        "rows": rows,
        "dev_defining_coherent": max(numeric.rel_dev(r["defining"], r["coherent"]) for r in rows),
        "dev_coherent_closed": max(numeric.rel_dev(r["coherent"], r["closed"]) for r in rows),
    }
    if M == 1:
        out["dev_closed_krawtchouk"] = max(numeric.rel_dev(r["closed"], r["krawtchouk"]) for r in rows)
    return out


# --- serialization -------------------------------------------------------


def family_dump(params, polys=None):
    polys = polys or b_poly_recurrence(params, params.N)
    return {
        "family": "B",
        "M": params.M,
        "f": rational_to_str(params.f),
        "N": params.N,
        "polys": [
            {"n": n, "coeffs": [rational_to_str(x) for x in p.coeffs]} for n, p in enumerate(polys)
        ],
    }


def family_from_dump(data):
    params = FamilyParamsB(int(data["M"]), Fraction(data["f"]), int(data["N"]))
    polys = [UPoly([Fraction(x) for x in entry["coeffs"]], VAR) for entry in data["polys"]]
    return params, polys
