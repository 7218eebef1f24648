"""The invariant suite run by ``su2dortho verify``.

Each check is a named case; results are collected in key order so the
report is deterministic.
"""

from fractions import Fraction
import random

from . import afamily as fa
from . import bfamily as fb
from .errors import Su2DorthoError
from .su2rep import build_rep, coherent_vector, verify_conjugation_identities

C_VALUES = (Fraction(1), Fraction(1, 2), Fraction(-3, 7), Fraction(5))
F_VALUES = (Fraction(1), Fraction(1, 3), Fraction(-2, 5))
A_SCALE = Fraction(2, 3)
QUICK_N = 6
FULL_N = 12


class _Collector:
    def __init__(self):
        self.results = {}
        self.first_failure = None

    def record(self, key, passed, detail=""):
        entry = self.results.setdefault(key, {"passed": True, "count": 0, "failures": []})
        entry["count"] += 1
        if not passed:
            entry["passed"] = False
            entry["failures"].append(detail)
            if self.first_failure is None:
                self.first_failure = f"{key}: {detail}"

    def run(self, key, label, fn):
        """Record fn() as a pass; exceptions and False results as failures."""
        try:
            ok = fn()
        except Su2DorthoError as exc:
            residual = getattr(exc, "residual", None)
            extra = f" residual={residual}" if residual is not None else ""
            self.record(key, False, f"{label}: {exc}{extra}")
            return
        self.record(key, bool(ok), label)


def _a_cases(col, n_max):
    for q in (0, 1):
        for N in range(q, n_max + 1):
            for c in C_VALUES:
                p = fa.FamilyParamsA(q, c, N)
                tag = f"q={q} N={N} c={c}"
                col.run("A.construction_triangle", tag, lambda: fa.construction_triangle(p))
                col.run("A.ground_state", tag, lambda: fa.check_ground_state(p, A_SCALE))
                col.run("A.matrix_biorthogonality", tag, lambda: fa.matrix_biorthogonality(p, A_SCALE))
                col.run("A.inverse_elements", tag, lambda: fa.inverse_elements_A(p, A_SCALE) is not None)
                polys = fa.a_poly_recurrence(p, p.j_max)
                for j in range(p.j_max + 1):
                    jt = f"{tag} j={j}"
                    col.run("A.difference_equation", jt, lambda: fa.a_difference_apply(p, j, polys).is_zero())
                    col.run("A.eigenvalue_form", jt, lambda: fa.a_eigen_check(p, j, polys).is_zero())
                    if j >= 1:
                        col.run("A.forward_shift", jt, lambda: fa.a_forward_shift(p, j, polys) != 0)
                if N >= 4 + q:
                    col.run("A.functionals", tag, lambda: len(fa.functionals_A(p, A_SCALE)) == 3)
    for N in range(n_max + 1):
        for c in C_VALUES:
            for rep in fa.biortho_poly_check(N, c):
                col.record(
                    "A.polynomial_biorthogonality",
                    rep["passed"],
                    f"N={N} c={c} q={rep['q']} q'={rep['q_prime']}",
                )


def _b_cases(col, n_max):
    n_max = min(n_max, 10)
    for M in (1, 2, 3):
        for N in range(n_max + 1):
            for f in F_VALUES:
                p = fb.FamilyParamsB(M, f, N)
                tag = f"M={M} N={N} f={f}"
                col.run("B.construction_triangle", tag, lambda: fb.construction_triangle(p))
                col.run("B.matrix_biorthogonality", tag, lambda: fb.matrix_biorthogonality(p, A_SCALE))
                col.run("B.inverse_elements", tag, lambda: fb.inverse_elements_B(p, A_SCALE) is not None)
                col.run("B.polynomial_biorthogonality", tag, lambda: fb.biortho_poly_check_B(p)["passed"])
                if M == 2:
                    polys = fb.b_poly_recurrence(p, N)
                    for n in range(N + 1):
                        col.run(
                            "B.difference_equation",
                            f"{tag} n={n}",
                            lambda: fb.b_difference_check(p, n, polys).is_zero(),
                        )
                    if N >= 2:
                        col.run("B.functionals", tag, lambda: len(fb.functionals_B(p, A_SCALE)) == 3)
                if M == 1:
                    col.run("B.krawtchouk_reduction", tag, lambda: fb.krawtchouk_reduction_check(f, N))
                    col.run("B.krawtchouk_orthogonality", tag, lambda: fb.krawtchouk_orthogonality(-f, N))


def _rep_cases(col, n_max):
    for N in range(n_max + 1):
        build_rep(N)
        col.record("su2.commutation", True, f"N={N}")
        for eta in (Fraction(0), Fraction(1, 2), Fraction(-3)):
            try:
                coherent_vector(N, eta)
                col.record("su2.coherent_actions", True, f"N={N} eta={eta}")
            except AssertionError as exc:
                col.record("su2.coherent_actions", False, f"N={N} eta={eta}: {exc}")
        for M in (1, 2, 3):
            for a, b in ((Fraction(1), Fraction(1)), (Fraction(2, 3), Fraction(-3, 5))):
                for name, ok in sorted(verify_conjugation_identities(N, a, b, M).items()):
                    col.record("su2.conjugation_identities", ok, f"N={N} M={M} a={a} b={b} {name}")


def _gf_cases(col, n_max, seed, points=20, tol=1e-10):
    rng = random.Random(seed)
    top = min(n_max, 10)
    for i in range(points):
        N = rng.randint(1, top)
        a = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        b = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 9))
        eta = complex(round(rng.uniform(-1, 1), 6), round(rng.uniform(-1, 1), 6))
        rep = fa.a_generating_function_check(N, a, b, eta)
        col.record(
            "A.generating_function",
            rep["dev_defining_coherent"] <= tol,
            f"N={N} a={a} b={b} eta={eta} dev={rep['dev_defining_coherent']:.3e}",
        )
        M = rng.randint(1, 3)
        rep = fb.b_generating_function_check(M, N, a, b, eta)
        col.record(
            "B.generating_function",
            rep["dev_defining_coherent"] <= tol and rep["dev_coherent_closed"] <= tol,
            f"M={M} N={N} a={a} b={b} eta={eta} dev={rep['dev_defining_coherent']:.3e}",
        )


def run_verify(n_max=FULL_N, seed=0):
    """Run the whole suite up to ``n_max`` and return a JSON-ready report."""
    col = _Collector()
    _rep_cases(col, n_max)
    _a_cases(col, n_max)
    _b_cases(col, n_max)
    _gf_cases(col, n_max, seed)
    checks = {
        key: {"passed": val["passed"], "count": val["count"], "failures": val["failures"][:5]}
        for key, val in sorted(col.results.items())
    }
    failed = sorted(k for k, v in checks.items() if not v["passed"])
    return {
        "N_max": n_max,
        "seed": seed,
        "checks": checks,
        "total": sum(v["count"] for v in checks.values()),
        "failed": failed,
        "passed": not failed,
        "first_failure": col.first_failure,
    }
