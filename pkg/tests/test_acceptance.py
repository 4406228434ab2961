"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import csv
import io
import math
from fractions import Fraction

import mpmath
from mpmath import mp

from gibbspoly.cli import main
from gibbspoly.exactpoly import X
from gibbspoly.expand import JumpKind, cd_derivative, laguerre_coefficients, partial_sum_eval
from gibbspoly.gibbsrun import (
    conjecture_at_1,
    gegenbauer_overshoot,
    hermite_overshoot,
    laguerre_overshoot,
    triple_sum_partial,
)
from gibbspoly.mpnum import gibbs_constant
from gibbspoly.orthofam import (
    FamilySpec,
    carlitz_product,
    hermite,
    laguerre,
    norm_squared_exact,
    pochhammer,
    polynomial,
    recurrence_values,
)
from reference_values import VALUE_AT_1, X_MINUS_200, X_PLUS_200

_run_cache = {}


def matching_digits(a: str, b: str) -> int:
    a, b = a.replace(".", "").lstrip("0"), b.replace(".", "").lstrip("0")
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    return k


def high_precision_run(capsys):
    """The 300-digit alpha = -1/2, n = 200 run, through the command line."""
    if "row" not in _run_cache:
        code = main(["overshoot", "--family", "laguerre", "--alpha", "-1/2", "--n", "200", "--digits", "300"])
        out, _ = capsys.readouterr()
        assert code == 0
        (_run_cache["row"],) = csv.DictReader(io.StringIO(out))
    return _run_cache["row"]


def test_criterion_1_roots(capsys, acceptance_report):
    row = high_precision_run(capsys)
    up = matching_digits(row["x_plus"], X_PLUS_200)
    down = matching_digits(row["x_minus"], X_MINUS_200)
    ok = up >= 250 and down >= 250
    assert acceptance_report(1, ok, f"x_plus matches {up} digits, x_minus matches {down} digits (need 250)")


def test_criterion_2_overshoot(capsys, acceptance_report):
    value = mpmath.mpf(high_precision_run(capsys)["overshoot"])
    ok = 1.1788 <= value <= 1.1828
    assert acceptance_report(2, ok, f"overshoot {mpmath.nstr(value, 12)} in [1.1788, 1.1828]")


def test_criterion_3_u_coordinates(capsys, acceptance_report):
    row = high_precision_run(capsys)
    up, down = mpmath.mpf(row["u_plus"]), mpmath.mpf(row["u_minus"])
    ok = abs(up - mp.pi) < 0.003 and abs(down + mp.pi) < 0.003
    assert acceptance_report(3, ok, f"u_plus {mpmath.nstr(up, 8)}, u_minus {mpmath.nstr(down, 8)} (within 0.003 of +-pi)")


def test_criterion_4_value_at_one_table(acceptance_report):
    worst = 0.0
    ok = True
    for (alpha, n), printed in VALUE_AT_1.items():
        value = conjecture_at_1(alpha, n, 30).value_at_1
        diff = abs(float(value - mpmath.mpf(printed)))
        worst = max(worst, diff)
        ok = ok and diff < 1e-10
    assert acceptance_report(4, ok, f"six table values, largest deviation {worst:.2e} (need < 1e-10)")


def test_criterion_5_gibbs_constant(acceptance_report):
    g = gibbs_constant(30)
    with mp.workdps(45):
        quad = 2 / mp.pi * mp.quad(lambda t: mp.sinc(t), [0, mp.pi / 2, mp.pi])
        diff = abs(g.value - quad)
    ok = diff < mpmath.mpf(10) ** -25 and g.format(4) == "1.179"
    assert acceptance_report(5, ok, f"gamma = {g.format(30)}, quadrature gap {mpmath.nstr(diff, 3)}")


def _pairing(p, q, moments):
    return sum((c * moments(k) for k, c in enumerate((p * q).coeffs)), Fraction(0))


def test_criterion_6_exact_properties(acceptance_report):
    checks = {}

    # orthogonality and norms through moments normalized by the zeroth moment
    ok = True
    for alpha in (Fraction(-1, 2), Fraction(0), Fraction(2)):
        spec = FamilySpec.laguerre(alpha)
        polys = [polynomial(spec, n) for n in range(9)]
        m = lambda k: pochhammer(alpha + 1, k)  # noqa: E731
        for n, p in enumerate(polys):
            ok = ok and all(_pairing(polys[j], p, m) == 0 for j in range(n))
            ratio = norm_squared_exact(spec, n) / norm_squared_exact(spec, 0)
            ok = ok and ratio.is_rational and _pairing(p, p, m) == ratio.rational
    half = Fraction(1, 2)
    hm = lambda k: Fraction(0) if k % 2 else pochhammer(half, k // 2)  # noqa: E731
    hs = [hermite(n) for n in range(11)]
    for n, p in enumerate(hs):
        ok = ok and all(_pairing(hs[j], p, hm) == 0 for j in range(n))
        ratio = norm_squared_exact(FamilySpec.hermite(), n) / norm_squared_exact(FamilySpec.hermite(), 0)
        ok = ok and _pairing(p, p, hm) == ratio.rational
    checks["orthogonality"] = ok

    checks["derivative n<=30"] = all(
        laguerre(n, a).derivative() == -laguerre(n - 1, a + 1)
        for a in (Fraction(-1, 2), Fraction(0), Fraction(3))
        for n in range(1, 31)
    )

    def cd_divisible(alpha, n):
        form = cd_derivative(FamilySpec.laguerre(alpha), JumpKind.STEP_AT_ONE, n)
        return form.numerator.eval_rational(1) == 0 and form.quotient * (X - 1) == form.numerator

    checks["CD divisibility n<=50"] = all(cd_divisible(a, n) for a in (Fraction(-1, 2), Fraction(0)) for n in range(1, 51))

    checks["Carlitz n<=8"] = all(
        left == right
        for a in (Fraction(0), Fraction(1), Fraction(-1, 2))
        for left, right in (carlitz_product(n, a) for n in range(1, 9))
    )

    ok = all(hermite(n + 1) == 2 * X * hermite(n) - hermite(n - 1).scale(2 * n) for n in range(1, 40))
    for x in (Fraction(1, 3), Fraction(-5, 2)):
        vals = recurrence_values(FamilySpec.hermite(), 40, x)
        ok = ok and all(vals[n] == hermite(n).eval_rational(x) for n in range(41))
    checks["Hermite recurrence n<=40"] = ok

    ok = all(checks.values())
    detail = ", ".join(f"{k} {'ok' if v else 'broken'}" for k, v in checks.items())
    assert acceptance_report(6, ok, detail)


def test_criterion_7_universality(acceptance_report):
    gamma_runs = {
        "Laguerre(-1/2)": (lambda n: laguerre_overshoot(Fraction(-1, 2), n, 30), 25, 400),
        "Laguerre(0)": (lambda n: laguerre_overshoot(0, n, 30), 25, 400),
        "Hermite": (lambda N: hermite_overshoot(N, 30), 12, 200),
        "Gegenbauer(1/2)": (lambda n: gegenbauer_overshoot(Fraction(1, 2), n, 30), 12, 200),
    }
    ok = True
    parts = []
    for name, (fn, small, large) in gamma_runs.items():
        e_small = float(fn(small).gamma_error)
        e_large = float(fn(large).gamma_error)
        ok = ok and e_large < 0.01 and e_large < e_small
        parts.append(f"{name} {e_small:.2e} -> {e_large:.2e}")
    assert acceptance_report(7, ok, "; ".join(parts))


def test_criterion_8_triple_sum(acceptance_report):
    limit = 1 - mpmath.e / 2
    with mp.workdps(40):
        e100 = abs(triple_sum_partial(100, 30).value - limit)
        e1000 = abs(triple_sum_partial(1000, 30).value - limit)
    ok = e1000 < e100
    assert acceptance_report(8, ok, f"|T_100 - limit| = {mpmath.nstr(e100, 4)}, |T_1000 - limit| = {mpmath.nstr(e1000, 4)}")


def test_criterion_9_two_paths(acceptance_report):
    p = 50
    worst_digits = math.inf
    ok = True
    for alpha in (Fraction(-1, 2), Fraction(0)):
        for n in (10, 50, 200):
            row = laguerre_overshoot(alpha, n, p)
            series = laguerre_coefficients(alpha, n)
            at_one = partial_sum_eval(series, Fraction(1), p + 10)
            for x, value in ((row.x_plus, row.value_plus), (row.x_minus, row.value_minus)):
                via_sum = partial_sum_eval(series, x.refined, p + 10) - at_one
                with mp.workdps(p + 20):
                    diff = abs(via_sum.value - value.value)
                    agree = math.inf if diff == 0 else float(-mpmath.log10(diff / max(1, abs(value.value))))
                worst_digits = min(worst_digits, agree)
                ok = ok and agree >= p - 10
    assert acceptance_report(9, ok, f"worst agreement {worst_digits:.1f} digits at {p} digits (need {p - 10})")
