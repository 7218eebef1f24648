"""The (N+1)-dimensional su(2) irrep in a rationalized basis.

The basis used throughout is f_n = sqrt(C(N, n)) |N, n>. In it the ladder
operators have integer entries::

    J+ f_n = (n + 1) f_{n+1},    J- f_n = (N - n + 1) f_{n-1},
    J0 f_n = (n - N/2) f_n.

A matrix element <k|X|n> in the orthonormal basis equals
X~[k][n] * sqrt(C(N, k) / C(N, n)); :func:`basis_ratio_squared` exposes the
squared conversion factor exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import EtaZero, NotNilpotent
from .exactnum import as_rational, rational_to_str


class RationalMatrix:
    """Dense matrix of Fractions with just enough algebra for this package."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(as_rational(v) for v in row) for row in entries)
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        if any(len(r) != self.cols for r in entries):
            raise ValueError("ragged matrix")
        self.entries = entries

    @classmethod
    def zeros(cls, n, m=None):
        m = n if m is None else m
        return cls([[0] * m for _ in range(n)])

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"RationalMatrix({self.to_json()})"

    def __add__(self, other):
        self._same_shape(other)
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        self._same_shape(other)
        return RationalMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __neg__(self):
        return RationalMatrix([[-a for a in r] for r in self.entries])

    def scale(self, c):
        c = as_rational(c)
        return RationalMatrix([[c * a for a in r] for r in self.entries])

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        # skip zero entries: the ladder matrices are very sparse
        other_rows = [[(j, v) for j, v in enumerate(row) if v] for row in other.entries]
        out = []
        for row in self.entries:
            acc = [Fraction(0)] * other.cols
            for k, a in enumerate(row):
                if a:
                    for j, v in other_rows[k]:
                        acc[j] += a * v
            out.append(acc)
        return RationalMatrix(out)

    def __pow__(self, e):
        result = RationalMatrix.identity(self.rows)
        for _ in range(e):
            result = result @ self
        return result

    def apply(self, vec):
        return [sum((a * v for a, v in zip(row, vec)), Fraction(0)) for row in self.entries]

    def is_zero(self):
        return all(v == 0 for r in self.entries for v in r)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def to_json(self):
        return [[rational_to_str(v) for v in r] for r in self.entries]

    @classmethod
    def from_json(cls, data):
        return cls([[Fraction(v) for v in r] for r in data])


def commutator(x, y):
    return x @ y - y @ x


@dataclass(frozen=True)
class RepMatrices:
    N: int
    Jp: RationalMatrix
    Jm: RationalMatrix
    J0: RationalMatrix

    @property
    def dim(self):
        return self.N + 1

    @property
    def number_op(self):
        """The number operator J0 + N/2 (diagonal 0..N)."""
        return self.J0 + RationalMatrix.identity(self.dim).scale(Fraction(self.N, 2))


@lru_cache(maxsize=None)
def build_rep(N):
    if N < 0:
        raise ValueError("N must be nonnegative")
    d = N + 1
    jp = [[0] * d for _ in range(d)]
    jm = [[0] * d for _ in range(d)]
    for n in range(d):
        if n + 1 <= N:
            jp[n + 1][n] = n + 1
        if n >= 1:
            jm[n - 1][n] = N - n + 1
    J0 = RationalMatrix.diagonal([Fraction(n) - Fraction(N, 2) for n in range(d)])
    rep = RepMatrices(N, RationalMatrix(jp), RationalMatrix(jm), J0)
    assert commutator(rep.Jp, rep.Jm) == rep.J0.scale(2)
    assert commutator(rep.J0, rep.Jp) == rep.Jp
    assert commutator(rep.J0, rep.Jm) == -rep.Jm
    return rep


def basis_ratio_squared(N, k, n):
    """C(N, k) / C(N, n): squared factor turning X~[k][n] into <k|X|n>."""
    return Fraction(comb(N, k), comb(N, n))


def exp_nilpotent(X):
    """exp(X) for a nilpotent matrix, summed exactly."""
    d = X.rows
    if not (X ** d).is_zero():
        raise NotNilpotent("matrix is not nilpotent")
    result = RationalMatrix.identity(d)
    term = RationalMatrix.identity(d)
    for k in range(1, d):
        term = (term @ X).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
    return result


def _rep_power(N, which, p):
    rep = build_rep(N)
    return getattr(rep, which) ** p


def matrix_S(N, a, b):
    """exp(a J+^2) exp(b J-^2) in the rationalized basis."""
    a, b = as_rational(a), as_rational(b)
    return exp_nilpotent(_rep_power(N, "Jp", 2).scale(a)) @ exp_nilpotent(
        _rep_power(N, "Jm", 2).scale(b)
    )


def matrix_S_inverse(N, a, b):
    a, b = as_rational(a), as_rational(b)
    return exp_nilpotent(_rep_power(N, "Jm", 2).scale(-b)) @ exp_nilpotent(
        _rep_power(N, "Jp", 2).scale(-a)
    )


def matrix_Q(N, a, b, M):
    """exp(a J+) exp(b J-^M) in the rationalized basis."""
    if M < 1:
        raise ValueError("M must be a positive integer")
    a, b = as_rational(a), as_rational(b)
    return exp_nilpotent(_rep_power(N, "Jp", 1).scale(a)) @ exp_nilpotent(
        _rep_power(N, "Jm", M).scale(b)
    )


def matrix_Q_inverse(N, a, b, M):
    if M < 1:
        raise ValueError("M must be a positive integer")
    a, b = as_rational(a), as_rational(b)
    return exp_nilpotent(_rep_power(N, "Jm", M).scale(-b)) @ exp_nilpotent(
        _rep_power(N, "Jp", 1).scale(-a)
    )


def reflected(mat, N):
    """R[n][k] = mat[N-k][N-n] * C(N,k)/C(N,n).

    This is the reflection <n|X|k> = <N-k|Y|N-n> written in the rationalized
    basis.
    """
    d = N + 1
    return RationalMatrix(
        [[mat[N - k, N - n] * basis_ratio_squared(N, k, n) for k in range(d)] for n in range(d)]
    )


@dataclass(frozen=True)
class CoherentVector:
    """Unnormalized coherent state, components C(N, n) eta^n.

    The components are coordinates in the dual basis g_n = |N,n>/sqrt(C(N,n)).
    The same vector in the basis used by :func:`build_rep` has coordinates
    eta^n; see :meth:`rep_coordinates`.
    """

    N: int
    eta: Fraction
    components: tuple

    def rep_coordinates(self):
        return [c / comb(self.N, n) for n, c in enumerate(self.components)]


def coherent_vector(N, eta, check=True):
    eta = as_rational(eta)
    comps = tuple(Fraction(comb(N, n)) * eta ** n for n in range(N + 1))
    vec = CoherentVector(N, eta, comps)
    if check:
        rep = build_rep(N)
        v = vec.rep_coordinates()
        num = rep.number_op
        lowered = rep.Jm.apply(v)
        expected = (RationalMatrix.identity(N + 1).scale(N) - num).apply(v)
        assert lowered == [eta * x for x in expected], "J- action on coherent state"
        if eta != 0:
            raised = rep.Jp.apply(v)
            assert raised == [x / eta for x in num.apply(v)], "J+ action on coherent state"
    return vec


def check_raising_relation(vec):
    """Verify J+ v = eta^-1 (J0 + N/2) v; raises EtaZero when eta = 0."""
    if vec.eta == 0:
        raise EtaZero("J+ relation on a coherent state is undefined at eta = 0")
    rep = build_rep(vec.N)
    v = vec.rep_coordinates()
    return rep.Jp.apply(v) == [x / vec.eta for x in rep.number_op.apply(v)]


# --- conjugation identities -------------------------------------------------


def _poly_of(coeffs, X):
    d = X.rows
    result = RationalMatrix.zeros(d)
    power = RationalMatrix.identity(d)
    for c in coeffs:
        if c:
            result = result + power.scale(c)
        power = power @ X
    return result


def _derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def conjugation_identities(N, a, b, M):
    """Evaluate both sides of each conjugation identity as exact matrices.

    Yields ``(name, lhs, rhs)`` triples.
    """
    a, b = as_rational(a), as_rational(b)
    rep = build_rep(N)
    Jp, Jm, J0 = rep.Jp, rep.Jm, rep.J0
    eye = RationalMatrix.identity(N + 1)
    polys = {
        "a*x": [0, a],
        "a*x^2": [0, 0, a],
        f"b*x^{M}": [0] * M + [b],
    }
    for label, cs in polys.items():
        cs = [Fraction(c) for c in cs]
        d1 = _derivative(cs)
        d2 = _derivative(d1)
        for sign, name, X in ((1, "J+", Jp), (-1, "J-", Jm)):
            E = exp_nilpotent(_poly_of(cs, X))
            Ei = exp_nilpotent(-_poly_of(cs, X))
            yield (
                f"exp(Q({name}))J0exp(-Q({name})) Q={label}",
                E @ J0 @ Ei,
                J0 - (X @ _poly_of(d1, X)).scale(sign),
            )
        q1, q2 = _poly_of(d1, Jm), _poly_of(d2, Jm)
        E, Ei = exp_nilpotent(_poly_of(cs, Jm)), exp_nilpotent(-_poly_of(cs, Jm))
        yield (
            f"exp(Q(J-))J+exp(-Q(J-)) Q={label}",
            E @ Jp @ Ei,
            Jp - (J0 @ q1).scale(2) - Jm @ (q2 + q1 @ q1),
        )
        q1, q2 = _poly_of(d1, Jp), _poly_of(d2, Jp)
        E, Ei = exp_nilpotent(_poly_of(cs, Jp)), exp_nilpotent(-_poly_of(cs, Jp))
        yield (
            f"exp(Q(J+))J-exp(-Q(J+)) Q={label}",
            E @ Jm @ Ei,
            Jm + (q1 @ J0).scale(2) + Jp @ (q2 - q1 @ q1),
        )

    S, Si = matrix_S(N, a, b), matrix_S_inverse(N, a, b)
    inner_b = Jp + ((eye + J0.scale(2)) @ Jm).scale(2 * b) - (Jm ** 3).scale(4 * b * b)
    yield (
        "S^-1 J0 S",
        Si @ J0 @ S,
        J0 - (Jm ** 2).scale(2 * b) + (inner_b @ inner_b).scale(2 * a),
    )
    inner_a = Jm + (Jp @ (eye + J0.scale(2))).scale(2 * a) - (Jp ** 3).scale(4 * a * a)
    yield (
        "S J0 S^-1",
        S @ J0 @ Si,
        J0 - (Jp ** 2).scale(2 * a) + (inner_a @ inner_a).scale(2 * b),
    )
    yield ("S J-^2 S^-1", S @ (Jm ** 2) @ Si, inner_a @ inner_a)
    yield ("S J- S^-1", S @ Jm @ Si, inner_a)

    Q, Qi = matrix_Q(N, a, b, M), matrix_Q_inverse(N, a, b, M)
    rhs = (
        J0
        + Jp.scale(a)
        - (Jm ** M).scale(M * b)
        + ((eye.scale(M - 1) + J0.scale(2)) @ (Jm ** (M - 1))).scale(a * b * M)
        - (Jm ** (2 * M - 1)).scale(a * b * b * M * M)
    )
    yield (f"Q^-1 J0 Q (M={M})", Qi @ J0 @ Q, rhs)
    W = Jm + J0.scale(2 * a) - Jp.scale(a * a)
    yield (f"Q J0 Q^-1 (M={M})", Q @ J0 @ Qi, J0 - Jp.scale(a) + (W ** M).scale(M * b))


def verify_conjugation_identities(N, a, b, M):
    """Return ``{identity name: passed}`` for every conjugation identity."""
    return {name: lhs == rhs for name, lhs, rhs in conjugation_identities(N, a, b, M)}
