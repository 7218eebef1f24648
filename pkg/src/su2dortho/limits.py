"""Classical target polynomials and the N -> infinity contraction studies.

Coefficient-level comparisons are exact (Fractions); anything involving
sqrt(N) rescalings runs in double precision.
"""

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb, factorial as ifact
import math

import numpy as np

from . import numeric
from .afamily import FamilyParamsA, a_poly_recurrence, a_values_at
from .exactnum import UPoly, as_rational, factorial, hyp_terminating, pochhammer


@dataclass(frozen=True)
class MeixnerParams:
    beta: Fraction
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", as_rational(self.beta))
        object.__setattr__(self, "d", as_rational(self.d))
        if self.d in (0, 1):
            raise ValueError("d must differ from 0 and 1")


def meixner_recurrence_coeffs(n, params):
    """(b_n, u_n) in x B_n = B_{n+1} + b_n B_n + u_n B_{n-1}."""
    beta, d = params.beta, params.d
    return (n + (n + beta) * d) / (1 - d), n * (n + beta - 1) * d / (1 - d) ** 2


def meixner_monic(n_max, params, var="x"):
    """Monic Meixner B_0..B_{n_max} from the three-term recurrence."""
    x = UPoly.identity(var)
    polys = [UPoly([1], var)]
    prev = UPoly((), var)
    for n in range(n_max):
        b, u = meixner_recurrence_coeffs(n, params)
        nxt = (x - b) * polys[n] - prev * u
        prev = polys[n]
        polys.append(nxt)
    return polys


def meixner_from_2f1(n, params, var="x"):
    """(beta)_n (d/(d-1))^n 2F1(-n, -x; beta; 1 - 1/d)."""
    beta, d = params.beta, params.d
    x = UPoly.identity(var)
    series = hyp_terminating([Fraction(-n), -x], [beta], 1 - 1 / d)
    if not isinstance(series, UPoly):
        series = UPoly([series], var)
    return series * (pochhammer(beta, n) * (d / (d - 1)) ** n)


def krawtchouk(n, x, p, N):
    """K_n(x; p, N) at a single point."""
    return hyp_terminating([Fraction(-n), -as_rational(x)], [Fraction(-N)], 1 / as_rational(p))


def hermite(n, x):
    """H_n(x) from the finite sum; exact for Fractions, also floats/complex."""
    if isinstance(x, int):
        x = Fraction(x)
    total = 0
    for m in range(n // 2 + 1):
        total += (-1) ** m * Fraction(ifact(n), ifact(m) * ifact(n - 2 * m)) * (2 * x) ** (n - 2 * m)
    return total


def hermite_2f0(n, x):
    """(2x)^n 2F0(-n/2, (1-n)/2; -; -1/x^2), x != 0."""
    x = as_rational(x)
    num = [Fraction(-n, 2), Fraction(1 - n, 2)]
    if n % 2:
        num.reverse()  # the integer parameter must come first
    return (2 * x) ** n * hyp_terminating(num, [], -1 / (x * x))


def meixner_candidates(c):
    """The two d values in circulation: c/(c-4) and the root of 1 - 1/d = 1/(4c)."""
    c = as_rational(c)
    d1 = c / (c - 4) if c != 4 else None
    d2 = 4 * c / (4 * c - 1) if 4 * c != 1 else None
    return d1, d2


def contracted_recurrence_coeffs(q, c, j):
    """Large-N limit of the A recurrence written as l A_j = A_{j+1} + b A_j + u A_{j-1}."""
    c = as_rational(c)
    n = 2 * j + q
    return j - 2 * c * (2 * n + 1), (4 * c * c - c) * n * (n - 1)


# --- reports ---------------------------------------------------------------


@dataclass
class ContractionReport:
    target: str
    N: list
    dev_candidate1: list
    dev_candidate2: list = None
    order: float = None
    winner: str = None
    extra: dict = field(default_factory=dict)

    def to_json(self):
        out = asdict(self)
        if not out["extra"]:
            del out["extra"]
        return out

    @classmethod
    def from_json(cls, data):
        return cls(**data)


def fitted_order(Ns, devs):
    """Mean of log(dev_i/dev_{i+1}) / log(N_{i+1}/N_i); None if undefined."""
    rates = []
    for i in range(len(Ns) - 1):
        if not devs[i] or not devs[i + 1]:
            return None
        rates.append(math.log(devs[i] / devs[i + 1]) / math.log(Ns[i + 1] / Ns[i]))
    return sum(rates) / len(rates) if rates else None


def doubling_ratios(devs):
    return [devs[i] / devs[i + 1] if devs[i + 1] else math.inf for i in range(len(devs) - 1)]


def _check_N_list(Ns, minimum):
    Ns = list(Ns)
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("N list must be strictly increasing")
    if Ns and Ns[0] < minimum:
        raise ValueError(f"every N must be at least {minimum}")
    return Ns


def _max_coeff_dev(p, r):
    diff = p - r
    return max((abs(x) for x in diff.coeffs), default=Fraction(0))


def _pick(devs1, devs2, label1, label2):
    """Declare the candidate whose deviation keeps falling and ends smaller."""

    def converging(devs):
        return devs is not None and all(d is not None for d in devs) and (devs[-1] == 0 or devs[-1] < devs[0])

    ok1, ok2 = converging(devs1), converging(devs2)
    if devs1 == devs2:
        return "tie"
    if ok1 and ok2:
        return label1 if devs1[-1] <= devs2[-1] else label2
    if ok1:
        return label1
    if ok2:
        return label2
    return None


def contract_A(q, c, j, N_list):
    """Coefficient deviation of A_j(l; c/N^2, N) from both Meixner candidates."""
    c = as_rational(c)
    Ns = _check_N_list(N_list, 2 * j + q)
    beta = Fraction(2 * q + 1, 2)
    d1, d2 = meixner_candidates(c)
    targets = [meixner_monic(j, MeixnerParams(beta, d), "l")[j] if d is not None else None for d in (d1, d2)]
    devs = ([], [])
    for N in Ns:
        A = a_poly_recurrence(FamilyParamsA(q, c / N ** 2, N), j)[j]
        for slot, target in zip(devs, targets):
            slot.append(float(_max_coeff_dev(A, target)) if target is not None else None)
    winner_label = _pick(devs[0], devs[1], "c/(c-4)", "4c/(4c-1)")
    winning = devs[0] if winner_label == "c/(c-4)" else devs[1]
    return ContractionReport(
        target="meixner",
        N=Ns,
        dev_candidate1=devs[0],
        dev_candidate2=devs[1],
        order=fitted_order(Ns, winning) if winner_label not in (None, "tie") else None,
        winner=winner_label,
        extra={
            "q": q,
            "c": str(c),
            "j": j,
            "d_candidate1": None if d1 is None else str(d1),
            "d_candidate2": None if d2 is None else str(d2),
        },
    )


def contract_A_j1_deviation(q, c, N):
    """Exact coefficient deviation at j = 1 against the d = 4c/(4c-1) target."""
    c = as_rational(c)
    _, d2 = meixner_candidates(c)
    A = a_poly_recurrence(FamilyParamsA(q, c / N ** 2, N), 1)[1]
    target = meixner_monic(1, MeixnerParams(Fraction(2 * q + 1, 2), d2), "l")[1]
    return _max_coeff_dev(A, target)


def _unitary_column(N, X_left, X_right, n):
    e = np.zeros(N + 1)
    e[n] = 1.0
    return numeric.expm_nilpotent_apply(X_left, numeric.expm_nilpotent_apply(X_right, e))


def contract_A_matrix(q, c, j, ell, N_list, a=1):
    """Matrix element psi_{k,n} with a -> a/N, b -> b/N against its 2F1 limit."""
    a_f = float(a)
    b_f = float(as_rational(c) / as_rational(a))
    c_f = a_f * b_f
    k, n = 2 * ell + q, 2 * j + q
    Ns = _check_N_list(N_list, max(k, n))
    target = (
        a_f ** ell * b_f ** j / (ifact(ell) * ifact(j)) * math.sqrt(ifact(k) * ifact(n))
        * numeric.hyp_float([-j, -ell], [q + 0.5], 1 / (4 * c_f), j)
    )
    devs = []
    for N in Ns:
        Jp, Jm = numeric.ladder_float(N)
        col = _unitary_column(N, (a_f / N) * Jp @ Jp, (b_f / N) * Jm @ Jm, n)
        devs.append(numeric.rel_dev(col[k].real, target))
    return ContractionReport(
        target="meixner-matrix",
        N=Ns,
        dev_candidate1=devs,
        order=fitted_order(Ns, devs),
        winner="2F1",
        extra={"q": q, "c": str(c), "j": j, "l": ell, "limit": target},
    )


def charlier_target(M, a, b, j, q, k):
    """Limit of phi_{k,n}: a 1+M F M-1 closed form with argument (-1)^(M+1)/(a^M b)."""
    n = M * j + q
    if k < q:
        return 0.0
    alpha = [(q - k + m) / M for m in range(M)]
    beta = [(q + m + 1) / M for m in range(M) if q + m + 1 != M]
    return (
        a ** (k - q) * b ** j / (ifact(j) * ifact(k - q) * ifact(q)) * math.sqrt(ifact(k) * ifact(n))
        * numeric.hyp_float([-j] + alpha, beta, (-1) ** (M + 1) / (a ** M * b), j)
    )


def contract_B(M, a, b, j, q, k, N_list):
    """phi_{k,n} with a -> a/sqrt(N), b -> b/N^(M/2) against the Charlier-type limit."""
    a, b = float(a), float(b)
    n = M * j + q
    Ns = _check_N_list(N_list, max(n, k))
    target = charlier_target(M, a, b, j, q, k)
    devs = []
    for N in Ns:
        Jp, Jm = numeric.ladder_float(N)
        JmM = np.linalg.matrix_power(Jm, M)
        col = _unitary_column(N, (a / math.sqrt(N)) * Jp, (b / N ** (M / 2)) * JmM, n)
        devs.append(numeric.rel_dev(col[k].real, target))
    return ContractionReport(
        target="charlier",
        N=Ns,
        dev_candidate1=devs,
        order=fitted_order(Ns, devs),
        winner="charlier",
        extra={"M": M, "a": a, "b": b, "j": j, "q": q, "k": k, "limit": target},
    )


def gf_limit(q, ell, a, b, eta, literal=False):
    """e^{b eta^2} x^q 1F1(-l; q+1/2; -eta^2/(4a)) with x = eta/sqrt(a), or
    x = eta when ``literal``."""
    x = eta if literal else eta / math.sqrt(a)
    return np.exp(b * eta * eta) * x ** q * numeric.hyp_float([-ell], [q + 0.5], -eta * eta / (4 * a), ell)


def contract_gf_check(q, c, eta, N_list, ell=1, a=2):
    """Contracted A generating function at k = 2l+q against its 1F1 limit.

    With a -> a/N, b -> b/N and eta -> eta/sqrt(N), eta/sqrt(a) is unchanged,
    so the finite-N value is sum_j A_j(l; c/N^2, N) (eta/sqrt a)^n / n!.
    """
    a_f = float(a)
    c = as_rational(c)
    b_f = float(c) / a_f
    eta = complex(eta)
    x = eta / math.sqrt(a_f)
    Ns = _check_N_list(N_list, 2 * ell + q)
    exact = gf_limit(q, ell, a_f, b_f, eta)
    literal = gf_limit(q, ell, a_f, b_f, eta, literal=True)
    dev1, dev2, values = [], [], []
    for N in Ns:
        vals = a_values_at(FamilyParamsA(q, c / N ** 2, N), ell)
        g = sum(float(v) * x ** (2 * jj + q) / ifact(2 * jj + q) for jj, v in enumerate(vals))
        values.append(g)
        dev1.append(numeric.rel_dev(g, exact))
        dev2.append(numeric.rel_dev(g, literal))
    winner = _pick(dev1, dev2, "(eta/sqrt a)^q", "eta^q")
    if winner == "tie":
        # at q = 0 (or a = 1) the two closed forms coincide
        winner = "(eta/sqrt a)^q"
    return ContractionReport(
        target="gf",
        N=Ns,
        dev_candidate1=dev1,
        dev_candidate2=dev2,
        order=fitted_order(Ns, dev1 if winner != "eta^q" else dev2),
        winner=winner,
        extra={"q": q, "c": str(c), "l": ell, "eta": [eta.real, eta.imag]},
    )
