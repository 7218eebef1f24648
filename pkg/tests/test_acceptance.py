"""Acceptance criteria 1 to 12, one test each.

Every test prints a single PASS/FAIL line (also repeated in the terminal
summary) and asserts the criterion at its stated tolerance and time budget.
"""

from fractions import Fraction
import math
import random
import time

import pytest

from su2dortho import afamily as fa
from su2dortho import bfamily as fb
from su2dortho import limits as L
from su2dortho.errors import Su2DorthoError
from su2dortho.functionals import rule_degrees
from su2dortho.su2rep import verify_conjugation_identities

F = Fraction
C_SET = (F(1), F(1, 2), F(-3, 7), F(5))
F_SET = (F(1), F(1, 3), F(-2, 5))
A_SCALE = F(2, 3)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def a_params(n_max):
    for q in (0, 1):
        for N in range(q, n_max + 1):
            for c in C_SET:
                yield fa.FamilyParamsA(q, c, N)


def b_params(n_max, Ms=(1, 2, 3), fs=F_SET):
    for M in Ms:
        for N in range(n_max + 1):
            for f in fs:
                yield fb.FamilyParamsB(M, f, N)


def test_criterion_01_triangle_A(acceptance):
    with Timer() as t:
        cases = list(a_params(12))
        bad = [p for p in cases if not fa.construction_triangle(p)]
    ok = not bad and t.elapsed < 30
    acceptance(1, "A construction triangle, exact", ok, f"{len(cases)} parameter sets, {t.elapsed:.1f}s")
    assert ok, bad[:3]


def test_criterion_02_triangle_B(acceptance):
    with Timer() as t:
        cases = list(b_params(10))
        bad = [p for p in cases if not fb.construction_triangle(p)]
    ok = not bad and t.elapsed < 30
    acceptance(2, "B construction triangle, exact", ok, f"{len(cases)} parameter sets, {t.elapsed:.1f}s")
    assert ok, bad[:3]


def test_criterion_03_matrix_biorthogonality(acceptance):
    with Timer() as t:
        bad = [p for p in a_params(12) if not fa.matrix_biorthogonality(p, A_SCALE)]
        bad += [p for p in b_params(10) if not fb.matrix_biorthogonality(p, A_SCALE)]
    ok = not bad and t.elapsed < 10
    acceptance(3, "matrix biorthogonality chi psi = delta, vs phi = delta", ok, f"{t.elapsed:.1f}s")
    assert ok, bad[:3]


def test_criterion_04_polynomial_biorthogonality(acceptance):
    with Timer() as t:
        bad = []
        count = 0
        for N in range(13):
            for c in C_SET:
                for rep in fa.biortho_poly_check(N, c):
                    count += 1
                    if not rep["passed"]:
                        bad.append(("A", N, c, rep["q"], rep["q_prime"]))
        for p in b_params(10):
            count += 1
            if not fb.biortho_poly_check_B(p)["passed"]:
                bad.append(("B", p))
    ok = not bad and t.elapsed < 10
    acceptance(4, "weighted polynomial biorthogonality, even/odd A and B", ok, f"{count} tables, {t.elapsed:.1f}s")
    assert ok, bad[:3]


def test_criterion_05_difference_equations(acceptance):
    with Timer() as t:
        failures = []
        for p in a_params(10):
            polys = fa.a_poly_recurrence(p, p.j_max)
            for j in range(p.j_max + 1):
                try:
                    fa.a_difference_apply(p, j, polys)
                    fa.a_eigen_check(p, j, polys)
                except Su2DorthoError as exc:
                    failures.append(str(exc))
        literal_zero = 0
        literal_total = 0
        for p in b_params(10, Ms=(2,)):
            polys = fb.b_poly_recurrence(p, p.N)
            for n in range(p.N + 1):
                try:
                    fb.b_difference_check(p, n, polys)
                except Su2DorthoError as exc:
                    failures.append(str(exc))
                literal_total += 1
                literal_zero += fb.b_difference_residual(p, n, literal=True).is_zero()
    ok = not failures and t.elapsed < 20
    acceptance(
        5,
        "difference equations as polynomial identities",
        ok,
        f"{t.elapsed:.1f}s; B uses corrected zeta coefficients, the literal coefficients vanish "
        f"in {literal_zero}/{literal_total} cases",
    )
    assert ok, failures[:3]


def test_criterion_06_forward_shift(acceptance):
    with Timer() as t:
        failures = []
        for p in a_params(10):
            polys = fa.a_poly_recurrence(p, p.j_max)
            for j in range(1, p.j_max + 1):
                try:
                    factor = fa.a_forward_shift(p, j, polys)
                    n = 2 * j + p.q
                    assert factor == (-n) * (-n + 1) * (p.N - n + 1) * (p.N - n + 2)
                except (Su2DorthoError, AssertionError) as exc:
                    failures.append(str(exc))
    ok = not failures and t.elapsed < 10
    acceptance(6, "forward shift with factor (-2j-q)_2 (N-2j-q+1)_2", ok, f"{t.elapsed:.1f}s")
    assert ok, failures[:3]


def _degree_table_ok(table):
    """Rule degrees for indices >= 3; at indices 0..2 the row is Xi_n itself,
    so the unique decomposition is the unit vector."""
    for n, (predicted, realised, unique) in table.items():
        if not unique or realised is None:
            return False
        expected = rule_degrees(n) if n >= 3 else tuple(0 if i == n else -1 for i in range(3))
        if realised != expected:
            return False
    return True


def test_criterion_07_functionals(acceptance):
    with Timer() as t:
        failures = []
        for q in (0, 1):
            for N in range(4 + q, 13):
                for c in C_SET:
                    try:
                        fa.functionals_A(fa.FamilyParamsA(q, c, N), A_SCALE)
                    except Su2DorthoError as exc:
                        failures.append(f"A q={q} N={N} c={c}: {exc}")
        for N in range(2, 13):
            for f in F_SET:
                try:
                    fb.functionals_B(fb.FamilyParamsB(2, f, N), A_SCALE)
                except Su2DorthoError as exc:
                    failures.append(f"B N={N} f={f}: {exc}")
        tables = [fa.proposition_degrees_A(fa.FamilyParamsA(q, F(-3, 7), 22 + q), 9, A_SCALE) for q in (0, 1)]
        tables.append(fb.proposition_degrees_B(fb.FamilyParamsB(2, F(1, 3), 12), 9, A_SCALE))
        mismatched_base = sum(
            1 for tab in tables for n in (1, 2) if tab[n][1] != tab[n][0]
        )
        degrees_ok = all(_degree_table_ok(tab) for tab in tables)
    ok = not failures and degrees_ok and t.elapsed < 60
    acceptance(
        7,
        "functional moment patterns and degree tables",
        ok,
        f"{t.elapsed:.1f}s; indices 3..9 match the rule, at indices 1, 2 the forced solution is the "
        f"unit vector ({mismatched_base} entries below the rule's bound)",
    )
    assert not failures, failures[:3]
    assert degrees_ok


def test_criterion_08_conjugation_identities(acceptance):
    with Timer() as t:
        failed = []
        count = 0
        for N in range(11):
            for M in (1, 2, 3):
                for a, b in ((F(1), F(1)), (F(2, 3), F(-3, 5)), (F(-5, 2), F(1, 7))):
                    for name, passed in verify_conjugation_identities(N, a, b, M).items():
                        count += 1
                        if not passed:
                            failed.append((N, M, a, b, name))
    ok = not failed and t.elapsed < 30
    acceptance(8, "conjugation identities and composites, exact matrices", ok, f"{count} identities, {t.elapsed:.1f}s")
    assert ok, failed[:3]


def test_criterion_09_krawtchouk(acceptance):
    with Timer() as t:
        bad = []
        for N in range(11):
            for f in F_SET + (F(-1, 2), F(7, 3)):
                if not fb.krawtchouk_reduction_check(f, N):
                    bad.append(("reduction", N, f))
                if not fb.krawtchouk_orthogonality(-f, N):
                    bad.append(("orthogonality", N, -f))
    ok = not bad and t.elapsed < 10
    acceptance(9, "M=1 Krawtchouk reduction and orthogonality", ok, f"{t.elapsed:.1f}s")
    assert ok, bad[:3]


def test_criterion_10_meixner_contraction(acceptance):
    Ns = [32, 64, 128]
    with Timer() as t:
        winners = set()
        orders = []
        bad = []
        for q in (0, 1):
            trivial = L.contract_A(q, 1, 0, Ns)
            if any(trivial.dev_candidate1) or any(trivial.dev_candidate2):
                bad.append(("j=0 not exact", q))
            for j in (1, 2, 3):
                rep = L.contract_A(q, 1, j, Ns)
                winners.add(rep.winner)
                winning = rep.dev_candidate2 if rep.winner == "4c/(4c-1)" else rep.dev_candidate1
                rates = [math.log2(r) for r in L.doubling_ratios(winning)]
                orders.append((q, j, rep.order, rates))
                if not all(0.7 <= x <= 1.3 for x in rates):
                    bad.append((q, j, rates))
    ok = not bad and len(winners) == 1 and t.elapsed < 60
    summary = ", ".join(f"q={q} j={j}: {o:.2f}" for q, j, o, _ in orders)
    acceptance(10, "Meixner contraction, order ~ 1/N, one winner", ok, f"winner d = {sorted(winners)}; {summary}; {t.elapsed:.1f}s")
    assert len(winners) == 1 and winners == {"4c/(4c-1)"}
    assert not bad, bad


def test_criterion_11_charlier_contraction(acceptance):
    Ns = [32, 64, 128, 256]
    cases = [
        (1, 0.7, 0.4, 1, 0, 2),
        (1, 0.7, -0.4, 2, 0, 3),
        (1, 1.2, 0.5, 2, 0, 1),
        (2, 0.7, 0.4, 1, 0, 2),
        (2, 0.6, 0.5, 1, 1, 3),
        (2, 0.9, -0.3, 0, 1, 2),
    ]
    with Timer() as t:
        bad = []
        spans = []
        for case in cases:
            rep = L.contract_B(*case, Ns)
            ratios = L.doubling_ratios(rep.dev_candidate1)
            spans.extend(ratios)
            if not all(1.5 <= r <= 2.5 for r in ratios):
                bad.append((case, ratios))
    ok = not bad and t.elapsed < 60
    acceptance(
        11,
        "d-Charlier contraction, doubling ratio in [1.5, 2.5]",
        ok,
        f"ratios {min(spans):.3f}..{max(spans):.3f}, {t.elapsed:.1f}s",
    )
    assert ok, bad


def test_criterion_12_generating_functions(acceptance):
    rng = random.Random(20240917)
    with Timer() as t:
        worst = 0.0
        for _ in range(20):
            N = rng.randint(1, 10)
            a = F(rng.randint(1, 9), rng.randint(1, 9))
            b = F(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
            eta = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            worst = max(worst, fa.a_generating_function_check(N, a, b, eta)["dev_defining_coherent"])
            M = rng.randint(1, 3)
            worst = max(worst, fb.b_generating_function_check(M, N, a, b, eta)["dev_defining_coherent"])
        trends = []
        for q in (0, 1):
            rep = L.contract_gf_check(q, F(1, 4), 0.5, [16, 32, 64])
            devs = rep.dev_candidate1
            trends.append(all(y < x for x, y in zip(devs, devs[1:])) and rep.winner == "(eta/sqrt a)^q")
    ok = worst <= 1e-10 and all(trends) and t.elapsed < 30
    acceptance(
        12,
        "generating functions: finite N routes agree, contracted form converges",
        ok,
        f"max rel dev {worst:.2e}, contraction trends {trends}, {t.elapsed:.1f}s",
    )
    assert worst <= 1e-10
    assert all(trends)
