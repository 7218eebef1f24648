"""Exact scalar and univariate polynomial arithmetic.

Scalars are :class:`fractions.Fraction`; ``Rational`` is an alias kept for
readability in signatures. Polynomials are dense and immutable.
"""

from fractions import Fraction
from itertools import zip_longest
import math

from .errors import ZeroDenominatorParameter

Rational = Fraction


def as_rational(x):
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rational_to_str(x):
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def factorial(n):
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return Fraction(math.factorial(n))


def pochhammer(m, k):
    """Rising factorial (m)_k = m(m+1)...(m+k-1).

    ``m`` may be any ring element supporting ``+ int`` and ``*`` (Fraction,
    float, complex, :class:`UPoly`); the empty product is 1.
    """
    if k < 0:
        raise ValueError("Pochhammer index must be nonnegative")
    result = 1
    for i in range(k):
        result = (m + i) * result
    if isinstance(result, int):
        return Fraction(result)
    return result


def _is_nonpositive_integer(x):
    return isinstance(x, (int, Fraction)) and Fraction(x).denominator == 1 and x <= 0


def _truncation_degree(num_params):
    if not num_params:
        raise ValueError("a terminating series needs at least one numerator parameter")
    first = num_params[0]
    if not _is_nonpositive_integer(first):
        raise ValueError(f"first numerator parameter must be -n with n >= 0, got {first!r}")
    return int(-Fraction(first))


def _check_denominators(den_params, n):
    for b in den_params:
        if isinstance(b, UPoly):
            continue
        if _is_nonpositive_integer(b) and -Fraction(b) <= n - 1:
            raise ZeroDenominatorParameter(
                f"denominator parameter {b} makes (b)_mu vanish for mu <= {n}"
            )


def hyp_terminating(num_params, den_params, arg):
    """Terminating generalized hypergeometric sum.

    The first numerator parameter must be ``-n`` and fixes the number of
    terms. Other parameters may be rationals or :class:`UPoly` (in which case
    the result is a UPoly). The argument may be exact or floating.
    """
    num_params = list(num_params)
    den_params = list(den_params)
    n = _truncation_degree(num_params)
    _check_denominators(den_params, n)

    total = 0
    term = Fraction(1)
    for mu in range(n + 1):
        total = term + total
        if mu == n:
            break
        ratio_num = 1
        for a in num_params:
            ratio_num = (a + mu) * ratio_num
        ratio_den = Fraction(1)
        for b in den_params:
            if isinstance(b, UPoly):
                raise TypeError("polynomial denominator parameters are not supported")
            ratio_den *= b + mu
        term = (ratio_num * term) * (arg / (ratio_den * (mu + 1)))
    return total


class UPoly:
    """Dense univariate polynomial with exact coefficients.

    ``coeffs[i]`` is the coefficient of ``var**i``. Trailing zeros are
    stripped so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        cs = [as_rational(c) if not isinstance(c, Fraction) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def constant(cls, c, var="x"):
        return cls([c], var)

    @classmethod
    def identity(cls, var="x"):
        return cls([0, 1], var)

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly([other], self.var)

    def __add__(self, other):
        if not isinstance(other, (UPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        return UPoly(
            [a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)],
            self.var,
        )

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if not isinstance(other, (UPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UPoly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, UPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = UPoly([1], self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        # Horner; works for Fraction, float, complex and UPoly arguments.
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if isinstance(acc, int):
            return Fraction(acc)
        return acc

    evaluate = __call__

    def shift(self, t):
        """Return q with q(x) = p(x + t)."""
        return self(UPoly([t, 1], self.var)) if self.coeffs else self

    def __repr__(self):
        return f"UPoly({[rational_to_str(c) for c in self.coeffs]}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{rational_to_str(c)}{'*' + mono if mono else ''}")
        return " + ".join(parts).replace("+ -", "- ")


def add(p, q):
    return p + q


def scale(p, c):
    return p * as_rational(c)


def multiply(p, q):
    return p * q


def shift_argument(p, t):
    return p.shift(t)


def evaluate(p, x):
    return p(x)


def forward_difference(p):
    """Delta p(x) = p(x+1) - p(x)."""
    return p.shift(1) - p


def backward_difference(p):
    """nabla p(x) = p(x) - p(x-1)."""
    return p - p.shift(-1)


def iterate(op, p, times):
    for _ in range(times):
        p = op(p)
    return p


def interpolate(xs, ys, var="x"):
    """Exact Newton interpolation through the points (xs[i], ys[i])."""
    xs = [as_rational(x) for x in xs]
    coef = [as_rational(y) for y in ys]
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("interpolation nodes must be distinct")
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    result = UPoly((), var)
    for i in range(n - 1, -1, -1):
        result = result * UPoly([-xs[i], 1], var) + coef[i]
    return result


def solve_exact(rows, rhs):
    """Solve the (possibly overdetermined) linear system rows * u = rhs.

    Returns ``(solution, rank)``; ``solution`` is None when the system is
    inconsistent. Free variables, if any, are set to zero.
    """
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    aug = [[as_rational(v) for v in row] + [as_rational(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][-1] != 0:
            return None, r
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = aug[i][-1]
    return sol, r


class AffineForm:
    """slope * k + intercept."""

    __slots__ = ("slope", "intercept")

    def __init__(self, slope, intercept=0):
        self.slope = as_rational(slope)
        self.intercept = as_rational(intercept)

    def __repr__(self):
        return f"AffineForm({self.slope}*k + {self.intercept})"


def check_s_separable(forms):
    """Test whether prod(a_i(k) + y) = prod(a_i(k)) + pi(y).

    Returns ``(separable, pi)`` where ``pi`` is a UPoly in ``y`` when the set
    is separable and None otherwise.
    """
    for f in forms:
        if f.slope == 0:
            raise ValueError("every form must have degree one in k")
    # bivariate polynomial as {(deg_k, deg_y): coeff}
    prod = {(0, 0): Fraction(1)}
    for f in forms:
        nxt = {}
        for (dk, dy), c in prod.items():
            for (ek, ey), d in (((1, 0), f.slope), ((0, 0), f.intercept), ((0, 1), Fraction(1))):
                if d == 0:
                    continue
                key = (dk + ek, dy + ey)
                nxt[key] = nxt.get(key, Fraction(0)) + c * d
        prod = {k: v for k, v in nxt.items() if v != 0}
    mixed = [key for key in prod if key[1] >= 1 and key[0] >= 1]
    if mixed:
        return False, None
    top = max((dy for (_, dy) in prod), default=0)
    pi = [Fraction(0)] * (top + 1)
    for (dk, dy), c in prod.items():
        if dy >= 1:
            pi[dy] += c
    return True, UPoly(pi, "y")
