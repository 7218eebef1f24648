from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from su2dortho.errors import EtaZero, NotNilpotent
from su2dortho.exactnum import pochhammer
from su2dortho.su2rep import (
    RationalMatrix,
    basis_ratio_squared,
    build_rep,
    check_raising_relation,
    coherent_vector,
    exp_nilpotent,
    matrix_Q,
    matrix_Q_inverse,
    matrix_S,
    matrix_S_inverse,
    reflected,
    verify_conjugation_identities,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=9)
F = Fraction


def test_build_rep_small():
    r0 = build_rep(0)
    assert r0.Jp.is_zero() and r0.Jm.is_zero() and r0.J0.is_zero()
    r1 = build_rep(1)
    assert r1.Jp[1, 0] == 1 and r1.Jm[0, 1] == 1
    assert [r1.J0[i, i] for i in range(2)] == [F(-1, 2), F(1, 2)]
    r2 = build_rep(2)
    assert (r2.Jp[1, 0], r2.Jp[2, 1], r2.Jm[0, 1], r2.Jm[1, 2]) == (1, 2, 2, 1)
    assert [r2.J0[i, i] for i in range(3)] == [-1, 0, 1]


@pytest.mark.parametrize("N", range(9))
def test_nilpotency_and_powers(N):
    rep = build_rep(N)
    assert (rep.Jp ** (N + 1)).is_zero() and (rep.Jm ** (N + 1)).is_zero()
    for k in range(N + 1):
        P, Q = rep.Jp ** k, rep.Jm ** k
        for n in range(N + 1 - k):
            assert P[n + k, n] == pochhammer(n + 1, k)
        for n in range(k, N + 1):
            assert Q[n - k, n] == pochhammer(N - n + 1, k)


def test_exp_nilpotent():
    assert exp_nilpotent(RationalMatrix.zeros(3)) == RationalMatrix.identity(3)
    rep = build_rep(2)
    a = F(3, 5)
    X = (rep.Jp ** 2).scale(a)
    assert X[2, 0] == 2 * a
    assert exp_nilpotent(X) == RationalMatrix.identity(3) + X
    with pytest.raises(NotNilpotent):
        exp_nilpotent(RationalMatrix.identity(2))


def test_matrix_S_small():
    a, b = F(2, 3), F(-3, 5)
    S = matrix_S(2, a, b)
    assert S[0, 0] == 1 and S[1, 1] == 1
    # unitary elements are S~ * sqrt(C(2,k)/C(2,n)); squares are compared
    assert S[2, 0] ** 2 * basis_ratio_squared(2, 2, 0) == (2 * a) ** 2
    assert S[0, 2] ** 2 * basis_ratio_squared(2, 0, 2) == (2 * b) ** 2
    assert S[2, 2] == 1 + 4 * a * b
    assert matrix_S(3, 0, 0) == RationalMatrix.identity(4)


def test_matrix_S_frozen_oracle():
    # independent symbolic evaluation of exp(a J+^2) exp(b J-^2), N = 4
    expected = [
        ["1", "0", "-36/5", "0", "108/25"],
        ["0", "1", "0", "-18/5", "0"],
        ["4/3", "0", "-43/5", "0", "114/25"],
        ["0", "4", "0", "-67/5", "0"],
        ["16/3", "0", "-152/5", "0", "361/25"],
    ]
    assert matrix_S(4, F(2, 3), F(-3, 5)).to_json() == expected


def test_matrix_Q_small():
    a, b = F(2, 3), F(-3, 5)
    assert matrix_Q(1, a, b, 1).entries == ((1, b), (a, 1 + a * b))
    assert matrix_Q(3, a, b, 5) == exp_nilpotent(build_rep(3).Jp.scale(a))
    assert matrix_Q(3, 0, 0, 2) == RationalMatrix.identity(4)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 8), small, small, st.integers(1, 3))
def test_inverses_and_reflection(N, a, b, M):
    eye = RationalMatrix.identity(N + 1)
    assert matrix_S_inverse(N, a, b) @ matrix_S(N, a, b) == eye
    assert matrix_Q_inverse(N, a, b, M) @ matrix_Q(N, a, b, M) == eye
    assert reflected(matrix_S(N, -a, -b), N) == matrix_S_inverse(N, a, b)
    assert reflected(matrix_Q(N, -a, -b, M), N) == matrix_Q_inverse(N, a, b, M)


@pytest.mark.parametrize("N", range(1, 11))
def test_parity_of_S(N):
    S = matrix_S(N, F(5, 4), F(-2, 7))
    assert all(S[k, n] == 0 for k in range(N + 1) for n in range(N + 1) if (k - n) % 2)


def test_exp_additivity():
    X = build_rep(5).Jm ** 2
    assert exp_nilpotent(X.scale(F(1, 3))) @ exp_nilpotent(X.scale(F(2, 5))) == exp_nilpotent(
        X.scale(F(11, 15))
    )


def test_coherent_vector_examples():
    assert coherent_vector(1, 1).components == (1, 1)
    assert coherent_vector(4, 0).components == (1, 0, 0, 0, 0)
    assert coherent_vector(2, F(1, 2)).components == (1, 1, F(1, 4))
    with pytest.raises(EtaZero):
        check_raising_relation(coherent_vector(3, 0))
    assert check_raising_relation(coherent_vector(3, F(-2, 3)))


@pytest.mark.parametrize("N", [1, 2, 5])
def test_higher_coherent_actions(N):
    eta = F(3, 4)
    rep = build_rep(N)
    v = coherent_vector(N, eta).rep_coordinates()
    num = [rep.number_op[n, n] for n in range(N + 1)]
    for k in range(N + 1):
        up = (rep.Jp ** k).apply(v)
        down = (rep.Jm ** k).apply(v)
        assert up == [(-1) ** k * eta ** (-k) * pochhammer(-m, k) * x for m, x in zip(num, v)]
        assert down == [(-1) ** k * eta ** k * pochhammer(m - N, k) * x for m, x in zip(num, v)]


def test_conjugation_identities_example():
    res = verify_conjugation_identities(4, 1, 1, 2)
    assert res and all(res.values())


def test_conjugation_identities_trivial_parameters():
    res = verify_conjugation_identities(3, 0, 0, 2)
    assert all(res.values())


def test_json_round_trip():
    S = matrix_S(3, F(1, 2), F(-7, 3))
    assert RationalMatrix.from_json(S.to_json()) == S
