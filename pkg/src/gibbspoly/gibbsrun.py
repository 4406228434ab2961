"""End-to-end overshoot pipelines, asymptotic comparisons and the value at x = 1.

Overshoots are computed on exact antiderivatives of the Christoffel-Darboux
quotient evaluated at certified critical points; no quadrature is involved.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .critpoints import (
    RootEnclosure,
    Side,
    first_root,
    hermite_zero_window,
    laguerre_window,
    u_map,
)
from .errors import DomainError, IllConditionedError, NoRootFoundError
from .expand import JumpKind, cd_derivative, laguerre_coefficients, partial_sum_eval
from .exactpoly import Poly
from .mpnum import GUARD, ExactReal, RealMP, _check_digits, as_fraction, gibbs_constant
from .orthofam import Family, FamilySpec, recurrence_values

__all__ = [
    "GibbsRow",
    "ConjectureRow",
    "AsymptoticReport",
    "laguerre_critical_points",
    "sign_critical_point",
    "laguerre_overshoot",
    "hermite_overshoot",
    "gegenbauer_overshoot",
    "overshoot",
    "overshoot_table",
    "asymptotic_compare",
    "conjecture_at_1",
    "triple_sum_partial",
    "triple_sum_limit",
]


@dataclass(frozen=True)
class GibbsRow:
    """One overshoot measurement.

    For the Laguerre step the values are taken relative to the partial sum
    at the jump, value = Π_n(x) - Π_n(1), and the overshoot is two-sided.
    For the sign function the values are Π(x) itself and the overshoot is
    the one-sided value at the first positive critical point.  ``n`` is the
    Laguerre degree, or the half-degree of the odd sums 2n+1.
    """

    family: FamilySpec
    n: int
    digits: int
    x_plus: RootEnclosure
    x_minus: RootEnclosure | None
    u_plus: RealMP | None
    u_minus: RealMP | None
    value_plus: RealMP
    value_minus: RealMP | None
    overshoot: RealMP | None
    gamma_error: RealMP | None


@dataclass(frozen=True)
class ConjectureRow:
    alpha: Fraction
    n: int
    value_at_1: RealMP
    via: str


@dataclass(frozen=True)
class AsymptoticReport:
    what: str
    params: dict
    exact: RealMP
    asymptotic: RealMP
    rel_error: RealMP


def _finish(x: mpf, p: int) -> RealMP:
    with mp.workdps(p):
        return RealMP(+x, p)


def _gamma_error(overshoot: RealMP | None, p: int) -> RealMP | None:
    if overshoot is None:
        return None
    return abs(overshoot - gibbs_constant(p))


def _integrated(constant: ExactReal, anti: Poly, x: RootEnclosure, base: Fraction, p: int) -> RealMP:
    """constant * (A(x) - A(base)), the difference taken exactly at the dyadic root."""
    wp = p + GUARD
    shifted = anti - Poly.constant(anti.eval_rational(base))
    at_x = shifted.eval_mp(x.refined.value if x.low != x.high else x.low, wp).value
    with mp.workdps(wp):
        v = constant.evaluate(wp).value * at_x
    return _finish(v, p)


def laguerre_critical_points(alpha, n: int, p: int) -> tuple[RootEnclosure | None, RootEnclosure | None]:
    """(x_minus, x_plus); a side with no root in the domain comes back as None."""
    cd = cd_derivative(FamilySpec.laguerre(alpha), JumpKind.STEP_AT_ONE, n)
    q = cd.quotient
    found = []
    for direction, side in (("down", Side.BELOW_JUMP), ("up", Side.ABOVE_JUMP)):
        try:
            r = first_root(q, 1, direction, laguerre_window(n, direction), p, side)
        except NoRootFoundError:
            r = None
        if r is not None and r.high <= 0:
            r = None
        found.append(r)
    return found[0], found[1]


def laguerre_overshoot(alpha, n: int, p: int) -> GibbsRow:
    alpha = as_fraction(alpha)
    spec = FamilySpec.laguerre(alpha)
    _check_digits(p)
    if n < 3:
        raise DomainError(f"the two-sided overshoot needs n >= 3, got {n}", "n")
    cd = cd_derivative(spec, JumpKind.STEP_AT_ONE, n)
    anti = cd.quotient.antiderivative()
    x_minus, x_plus = laguerre_critical_points(alpha, n, p)
    if x_plus is None:
        raise NoRootFoundError(f"no critical point above the jump for n={n}")
    value_plus = _integrated(cd.constant, anti, x_plus, Fraction(1), p)
    u_plus = u_map(x_plus.refined, n, p)
    if x_minus is None:
        value_minus = u_minus = over = None
    else:
        value_minus = _integrated(cd.constant, anti, x_minus, Fraction(1), p)
        u_minus = u_map(x_minus.refined, n, p)
        over = value_plus - value_minus
    return GibbsRow(spec, n, p, x_plus, x_minus, u_plus, u_minus, value_plus, value_minus,
                    over, _gamma_error(over, p))


def sign_critical_point(spec: FamilySpec, n: int, p: int) -> RootEnclosure:
    """Smallest positive critical point of the degree 2n+1 sum of sgn."""
    _check_digits(p)
    if n < 1:
        raise DomainError(f"half-degree must be >= 1, got {n}", "n")
    if spec.family is Family.HERMITE:
        _, upper = hermite_zero_window(n)
        hint = upper.to_fraction().limit_denominator(1 << 30)
    else:
        # first positive zero of C_{2n+1}^(lam+1) sits near pi/(2n+lam+2)
        hint = Fraction(math.pi / (2 * n + float(spec.params[0]) + 2)).limit_denominator(1 << 30)
    q = cd_derivative(spec, JumpKind.SIGN, n).quotient
    return first_root(q, 0, "up", hint, p, Side.POSITIVE)


def _one_sided(spec: FamilySpec, n: int, p: int) -> GibbsRow:
    x_plus = sign_critical_point(spec, n, p)
    cd = cd_derivative(spec, JumpKind.SIGN, n)
    value = _integrated(cd.constant, cd.quotient.antiderivative(), x_plus, Fraction(0), p)
    return GibbsRow(spec, n, p, x_plus, None, None, None, value, None, value, _gamma_error(value, p))


def hermite_overshoot(N: int, p: int) -> GibbsRow:
    """Π_{2N+1}(x_{N,+}) for the sign function in Hermite polynomials."""
    return _one_sided(FamilySpec.hermite(), N, p)


def gegenbauer_overshoot(lam, n: int, p: int) -> GibbsRow:
    """Value of the degree 2n+1 Gegenbauer sum of sgn at its first positive critical point."""
    return _one_sided(FamilySpec.gegenbauer(lam), n, p)


def overshoot(spec: FamilySpec, n: int, p: int) -> GibbsRow:
    if spec.family is Family.LAGUERRE:
        return laguerre_overshoot(spec.params[0], n, p)
    if spec.family is Family.HERMITE:
        return hermite_overshoot(n, p)
    if spec.family is Family.GEGENBAUER:
        return gegenbauer_overshoot(spec.params[0], n, p)
    raise DomainError(f"no jump function is expanded in the {spec.family.value} family", "family")


def _overshoot_job(args):
    return overshoot(*args)


def overshoot_table(spec: FamilySpec, ns, p: int, jobs: int = 1) -> list[GibbsRow]:
    """Rows for every n, in ascending n whatever order the workers finish in."""
    ns = sorted(ns)
    tasks = [(spec, n, p) for n in ns]
    if jobs <= 1 or len(tasks) <= 1:
        return [_overshoot_job(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_overshoot_job, tasks))


# asymptotic comparisons


def _mp_point(x, wp: int) -> mpf:
    if isinstance(x, RealMP):
        return x.value
    with mp.workdps(wp):
        if isinstance(x, (int, Fraction, str)):
            q = as_fraction(x)
            return mpf(q.numerator) / q.denominator
        return mpf(x)


def _report(what: str, params: dict, exact: mpf, asym: mpf, p: int, rel=None) -> AsymptoticReport:
    wp = p + GUARD
    with mp.workdps(wp):
        if abs(exact) < mpf(10) ** (-(p // 2)):
            raise IllConditionedError(
                f"{what}: exact value {mp.nstr(exact, 5)} is too close to zero for a relative error"
            )
        if rel is None:
            rel = abs(exact - asym) / abs(exact)
    return AsymptoticReport(what, params, _finish(exact, p), _finish(asym, p), _finish(rel, p))


def _glp_sine(alpha: Fraction, n: int, x, p: int) -> AsymptoticReport:
    wp = p + GUARD
    x = _mp_point(x, wp)
    exact = recurrence_values(FamilySpec.laguerre(alpha), n, RealMP(x, wp), p)[n]
    with mp.workdps(wp):
        a = mpf(alpha.numerator) / alpha.denominator
        asym = (
            mpf(n) ** (a / 2 - mpf(1) / 4)
            / (mp.sqrt(mp.pi) * x ** (a / 2 + mpf(1) / 4))
            * mp.exp(x / 2)
            * mp.sin(2 * mp.sqrt(n * x) - a * mp.pi / 2 + mp.pi / 4)
        )
    return _report("glp_sine", {"alpha": alpha, "n": n, "x": x}, exact, asym, p)


def _hermite_sine(N: int, x, p: int) -> AsymptoticReport:
    wp = p + GUARD
    x = _mp_point(x, wp)
    exact = recurrence_values(FamilySpec.hermite(), 2 * N + 1, RealMP(x, wp), p)[2 * N + 1]
    with mp.workdps(wp):
        asym = (
            (-1) ** N * mp.factorial(N) * mpf(2) ** (2 * N + 1) / mp.sqrt(mp.pi)
            * mp.exp(x * x / 2) * mp.sin(x * mp.sqrt(4 * N + 2))
        )
    return _report("hermite_sine", {"N": N, "x": x}, exact, asym, p)


def _dn_alpha(alpha: Fraction, n: int, p: int) -> AsymptoticReport:
    wp = p + GUARD
    d = cd_derivative(FamilySpec.laguerre(alpha), JumpKind.STEP_AT_ONE, n).constant.evaluate(wp).value
    with mp.workdps(wp):
        a = mpf(alpha.numerator) / alpha.denominator
        asym = 1 / (mp.e * mpf(n) ** a)
        rel = abs(d * mp.e * mpf(n) ** a - 1)
    return _report("dn_alpha", {"alpha": alpha, "n": n}, d, asym, p, rel)


def _final_derivative(alpha: Fraction, n: int, x, p: int) -> AsymptoticReport:
    wp = p + GUARD
    x = _mp_point(x, wp)
    cd = cd_derivative(FamilySpec.laguerre(alpha), JumpKind.STEP_AT_ONE, n)
    q = cd.quotient.eval_mp(x, wp).value
    with mp.workdps(wp):
        exact = cd.constant.evaluate(wp).value * q
        a = mpf(alpha.numerator) / alpha.denominator
        big_a = mp.pi / 2 * (a - mpf(1) / 2)
        sn = mp.sqrt(n)
        sx = mp.sqrt(x)
        bracket = mp.sin(2 * sn * (sx - 1)) - (sx - 1) * mp.cos(2 * sn * sx - big_a) * mp.sin(2 * sn - big_a)
        asym = (
            (1 - mpf(1) / n) ** ((1 + 2 * a) / 4) * mp.exp((x - 1) / 2)
            / (mp.pi * x ** ((2 * a + 3) / 4) * (x - 1))
            * bracket
        )
    return _report("final_derivative", {"alpha": alpha, "n": n, "x": x}, exact, asym, p)


def asymptotic_compare(what: str, params: dict, p: int) -> AsymptoticReport:
    """Relative error of one of the large-n approximations.

    ``glp_sine``: L_n^(alpha)(x) against its sine asymptotic, params alpha, n, x.
    ``hermite_sine``: H_{2N+1}(x) against its sine asymptotic, params N, x.
    ``dn_alpha``: |d_n e n^alpha - 1|, params alpha, n.
    ``final_derivative``: the derivative of the Laguerre partial sum against
    its trigonometric approximation, params alpha, n, x.
    """
    _check_digits(p)
    params = dict(params)
    if what == "glp_sine":
        return _glp_sine(as_fraction(params["alpha"]), int(params["n"]), params["x"], p)
    if what == "hermite_sine":
        return _hermite_sine(int(params["N"]), params["x"], p)
    if what == "dn_alpha":
        return _dn_alpha(as_fraction(params["alpha"]), int(params["n"]), p)
    if what == "final_derivative":
        if _mp_point(params["x"], p + GUARD) == 1:
            raise DomainError("final_derivative is singular at x = 1", "x")
        return _final_derivative(as_fraction(params["alpha"]), int(params["n"]), params["x"], p)
    raise DomainError(f"unknown asymptotic comparison {what!r}", "what")


# the partial sum at the jump


def _laguerre_at_two(alpha2: Fraction, top: int) -> list[Fraction]:
    return recurrence_values(FamilySpec.laguerre(alpha2), top, Fraction(2))


def _carlitz_at_1(alpha: Fraction, n: int, p: int) -> mpf:
    """Π_n(1) from the Carlitz product form.

    Π_n(1) = s_0 - 1/(e Γ(a+1)) Σ_j 1/(j 4^j) Σ_{r=1}^j c_r binom(2j-2r, j-r) L_{2r-1}^(2a+1)(2)
    with c_r = (2r)!/(r! (a+1)_r).
    """
    wp = p + GUARD
    at_two = _laguerre_at_two(2 * alpha + 1, max(2 * n - 1, 0))
    a_terms = []
    c = Fraction(1)
    for r in range(1, n + 1):
        c = c * 2 * (2 * r - 1) / (alpha + r)
        a_terms.append(c * at_two[2 * r - 1])
    with mp.workdps(wp):
        a_mp = [mpf(t.numerator) / t.denominator for t in a_terms]
        b_mp = [mpf(math.comb(2 * m, m)) for m in range(n)]
        total = mpf(0)
        scale = mpf(1)
        for j in range(1, n + 1):
            scale /= 4
            inner = mp.fdot(a_mp[:j], reversed(b_mp[:j]))
            total += inner * scale / j
        s0 = ExactReal.incgamma_ratio(alpha + 1).evaluate(wp).value
        pref = (ExactReal(e_pow=-1) / ExactReal.gamma(alpha + 1)).evaluate(wp).value
        return s0 - pref * total


def conjecture_at_1(alpha, n: int, p: int, via: str = "direct_sum") -> ConjectureRow:
    """Π_n^(alpha)(1) for the unit step, by the direct sum or the Carlitz form."""
    alpha = as_fraction(alpha)
    FamilySpec.laguerre(alpha)
    _check_digits(p)
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}", "n")
    if via == "direct_sum":
        value = partial_sum_eval(laguerre_coefficients(alpha, n), Fraction(1), p)
    elif via == "carlitz":
        value = _finish(_carlitz_at_1(alpha, n, p), p)
    else:
        raise DomainError(f"unknown evaluation path {via!r}", "via")
    return ConjectureRow(alpha, n, value, via)


def triple_sum_limit(p: int) -> RealMP:
    """1 - e/2."""
    with mp.workdps(p + GUARD):
        v = 1 - mp.e / 2
    return _finish(v, p)


def triple_sum_inner(J: int) -> list[Fraction]:
    """Exact inner double sums t_j, j = 1..J, of the alpha = 0 triple sum.

    t_j = Σ_{r=1}^j binom(2r,r) binom(2j-2r,j-r) Σ_k binom(2r,2r-1-k)(-2)^k/k!,
    where the k-sum is L_{2r-1}^(1)(2).  Computed as one integer convolution
    over the common denominator (2J-1)!.
    """
    if J < 1:
        raise DomainError(f"truncation must be >= 1, got {J}", "J")
    at_two = _laguerre_at_two(Fraction(1), 2 * J - 1)
    den = math.factorial(2 * J - 1)
    a_int = []
    for r in range(1, J + 1):
        v = at_two[2 * r - 1] * den * math.comb(2 * r, r)
        assert v.denominator == 1
        a_int.append(v.numerator)
    b_int = [math.comb(2 * m, m) for m in range(J)]
    out = []
    for j in range(1, J + 1):
        s = sum(a_int[r] * b_int[j - 1 - r] for r in range(j))
        out.append(Fraction(s, den))
    return out


def triple_sum_partial(J: int, p: int) -> RealMP:
    """Σ_{j=1}^J t_j / (4^j j), the alpha = 0 reduction of the value at the jump."""
    _check_digits(p)
    inner = triple_sum_inner(J)
    wp = p + GUARD
    with mp.workdps(wp):
        total = mpf(0)
        for j, t in enumerate(inner, start=1):
            total += mpf(t.numerator) / (t.denominator * 4**j * j)
    return _finish(total, p)
