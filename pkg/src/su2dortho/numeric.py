"""Floating-point helpers in the orthonormal basis |N, n>.

Kept apart from the exact layer on purpose: these routines build the ladder
matrices with square roots directly from the textbook action, so they serve
as an independent route when compared against the rational constructions.
"""

import cmath
import math

import numpy as np


def ladder_float(N):
    """Orthonormal-basis (Jp, Jm) as float arrays."""
    d = N + 1
    Jp = np.zeros((d, d))
    Jm = np.zeros((d, d))
    for n in range(N):
        s = math.sqrt((n + 1) * (N - n))
        Jp[n + 1, n] = s
        Jm[n, n + 1] = s
    return Jp, Jm


def expm_nilpotent_apply(X, v):
    """exp(X) v for nilpotent X, by the terminating series."""
    out = v.astype(complex)
    term = out.copy()
    for i in range(1, X.shape[0] + 1):
        term = X @ term / i
        if not np.any(term):
            break
        out = out + term
    return out


def coherent_float(N, eta):
    """Unnormalized coherent state sum_n sqrt(C(N,n)) eta^n |N,n>."""
    return np.array([math.sqrt(math.comb(N, n)) * eta ** n for n in range(N + 1)], dtype=complex)


def rel_dev(x, y):
    scale = max(abs(x), abs(y))
    if scale == 0:
        return 0.0
    return float(abs(x - y) / scale)


def csqrt(x):
    return cmath.sqrt(x)


def hyp_float(num, den, z, max_terms):
    """Truncated pFq sum with at most ``max_terms + 1`` terms; stops early on a
    vanishing numerator factor."""
    total = 0
    term = 1
    for mu in range(max_terms + 1):
        total += term
        ratio = 1
        for x in num:
            ratio *= x + mu
        if ratio == 0:
            break
        for x in den:
            ratio /= x + mu
        term = term * ratio * z / (mu + 1)
    return total
