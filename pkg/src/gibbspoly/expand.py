"""Orthogonal expansions of the two jump functions.

* the unit step at one, S(x) = [x >= 1], expanded in Laguerre polynomials;
* the sign function, expanded in Hermite or Gegenbauer polynomials.

Coefficients are :class:`~gibbspoly.mpnum.ExactReal` values.  Within one
series every coefficient except the Laguerre constant term shares the same
transcendental factor, which is what lets the Christoffel-Darboux forms be
checked as exact polynomial identities.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import DomainError
from .exactpoly import Poly
from .mpnum import GUARD, ExactReal, RealMP, as_fraction
from .orthofam import (
    Family,
    FamilySpec,
    norm_squared_exact,
    pochhammer,
    polynomial,
    recurrence_values,
)

__all__ = [
    "JumpKind",
    "ExpansionSeries",
    "CDForm",
    "laguerre_coefficients",
    "hermite_coefficients",
    "gegenbauer_coefficients",
    "cd_derivative",
    "partial_sum_eval",
]


class JumpKind(str, enum.Enum):
    STEP_AT_ONE = "step_at_one"
    SIGN = "sign"

    @property
    def jump_point(self) -> Fraction:
        return Fraction(1) if self is JumpKind.STEP_AT_ONE else Fraction(0)


_ALLOWED = {
    JumpKind.STEP_AT_ONE: {Family.LAGUERRE},
    JumpKind.SIGN: {Family.HERMITE, Family.GEGENBAUER},
}


def _check_pairing(spec: FamilySpec, kind: JumpKind):
    if spec.family not in _ALLOWED[kind]:
        raise DomainError(f"{kind.value} cannot be expanded in the {spec.family.value} family", "family")


@dataclass(frozen=True)
class ExpansionSeries:
    """Truncated expansion sum_{j<=degree} coeffs[j] * p_j(x)."""

    spec: FamilySpec
    kind: JumpKind
    degree: int
    coeffs: tuple[ExactReal, ...]

    def __post_init__(self):
        _check_pairing(self.spec, self.kind)
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("an expansion of degree n needs n + 1 coefficients")

    def basis(self, j: int) -> Poly:
        return polynomial(self.spec, j)

    def grouped(self) -> dict[ExactReal, list[tuple[int, Fraction]]]:
        """Coefficients bucketed by their transcendental factor."""
        groups: dict[ExactReal, list[tuple[int, Fraction]]] = defaultdict(list)
        for j, c in enumerate(self.coeffs):
            if c.rational:
                groups[c.factor].append((j, c.rational))
        return dict(groups)

    def polynomial_parts(self) -> dict[ExactReal, Poly]:
        """The partial sum as factor -> exact rational polynomial."""
        return {
            factor: sum((self.basis(j).scale(r) for j, r in terms), Poly())
            for factor, terms in self.grouped().items()
        }

    def __call__(self, x, digits: int) -> RealMP:
        return partial_sum_eval(self, x, digits)


@dataclass(frozen=True)
class CDForm:
    """Derivative of a partial sum as ``constant * quotient(x)``.

    ``numerator`` is the Christoffel-Darboux numerator, ``quotient`` is the
    numerator divided exactly by ``x - jump``.
    """

    spec: FamilySpec
    kind: JumpKind
    n: int
    numerator: Poly
    quotient: Poly
    constant: ExactReal

    @property
    def jump(self) -> Fraction:
        return self.kind.jump_point


def laguerre_coefficients(alpha, n: int) -> ExpansionSeries:
    """Coefficients of the unit step at 1 in L_j^(alpha), j = 0..n.

    s_0 = Γ(alpha+1, 1)/Γ(alpha+1) and, for j >= 1,
    s_j = -(1/e) L_{j-1}^(alpha+1)(1) / ||L_{j-1}^(alpha+1)||^2.
    """
    alpha = as_fraction(alpha)
    spec = FamilySpec.laguerre(alpha)
    if n < 0:
        raise DomainError("truncation degree must be >= 0", "n")
    shifted = FamilySpec.laguerre(alpha + 1)
    at_one = recurrence_values(shifted, max(n - 1, 0), Fraction(1)) if n else []
    coeffs = [ExactReal.incgamma_ratio(alpha + 1)]
    inv_e = ExactReal(e_pow=-1)
    norm = norm_squared_exact(shifted, 0)
    for j in range(1, n + 1):
        m = j - 1
        if m:
            # ||L_m^(a+1)||^2 = Γ(m+a+2)/m!
            norm = norm * ((m + alpha + 1) / m)
        coeffs.append(-inv_e * at_one[m] / norm)
    return ExpansionSeries(spec, JumpKind.STEP_AT_ONE, n, tuple(coeffs))


def _hermite_at_zero(m: int) -> Fraction:
    """H_m(0): zero for odd m, (-1)^k (2k)!/k! for m = 2k."""
    if m % 2:
        return Fraction(0)
    k = m // 2
    return Fraction((-1) ** k * math.factorial(2 * k), math.factorial(k))


def hermite_coefficients(N: int) -> ExpansionSeries:
    """Coefficients of sgn in H_j, j = 0..2N+1; even ones vanish."""
    if N < 0:
        raise DomainError("half-degree must be >= 0", "N")
    spec = FamilySpec.hermite()
    zero = ExactReal.of(0)
    coeffs = []
    for j in range(2 * N + 2):
        if j % 2 == 0:
            coeffs.append(zero)
        else:
            # 2 H_{j-1}(0) / (sqrt(pi) 2^j j!)
            r = 2 * _hermite_at_zero(j - 1) / (2**j * math.factorial(j))
            coeffs.append(ExactReal(r, sqrt_pi_pow=-1))
    return ExpansionSeries(spec, JumpKind.SIGN, 2 * N + 1, tuple(coeffs))


def gegenbauer_coefficients(lam, n: int) -> ExpansionSeries:
    """Coefficients of sgn in C_j^(lam), j = 0..2n+1.

    s_{2k+1} = C_{2k}^(lam+1)(0) / (lam ||C_{2k}^(lam+1)||^2).
    """
    lam = as_fraction(lam)
    spec = FamilySpec.gegenbauer(lam)
    if n < 0:
        raise DomainError("truncation index must be >= 0", "n")
    shifted = FamilySpec.gegenbauer(lam + 1)
    zero = ExactReal.of(0)
    coeffs = []
    for j in range(2 * n + 2):
        if j % 2 == 0:
            coeffs.append(zero)
            continue
        k = (j - 1) // 2
        at_zero = (-1) ** k * pochhammer(lam + 1, k) / math.factorial(k)
        coeffs.append(ExactReal.of(at_zero / lam) / norm_squared_exact(shifted, 2 * k))
    return ExpansionSeries(spec, JumpKind.SIGN, 2 * n + 1, tuple(coeffs))


def _symmetric_cd(deriv_spec: FamilySpec, top: int, scale: Fraction) -> tuple[Poly, Poly, ExactReal]:
    """scale * sum_{m<=top} p_m(0) p_m(x)/h_m = constant * p_{top+1}(x)/x for even top.

    Christoffel-Darboux with y = 0, using p_{top+1}(0) = 0:
    constant = scale * k_top p_top(0) / (k_{top+1} h_top).
    """
    p_top = polynomial(deriv_spec, top)
    p_next = polynomial(deriv_spec, top + 1)
    numerator = p_next
    quotient = p_next.divide_exact(0)
    ratio = scale * p_top.leading * p_top.eval_rational(0) / p_next.leading
    constant = ExactReal.of(ratio) / norm_squared_exact(deriv_spec, top)
    return numerator, quotient, constant


def cd_derivative(spec: FamilySpec, kind: JumpKind, n: int) -> CDForm:
    """Christoffel-Darboux form of the derivative of the partial sum.

    ``n`` is the Laguerre truncation degree, or the half-degree N/n of the
    odd Hermite/Gegenbauer partial sums of degree 2N+1.
    """
    _check_pairing(spec, kind)
    if n < 1:
        raise DomainError(f"the Christoffel-Darboux form needs n >= 1, got {n}", "n")
    if spec.family is Family.LAGUERRE:
        (alpha,) = spec.params
        shifted = FamilySpec.laguerre(alpha + 1)
        p_prev = polynomial(shifted, n - 1)
        p_n = polynomial(shifted, n)
        a = p_prev.eval_rational(1)
        b = p_n.eval_rational(1)
        numerator = p_prev.scale(b) - p_n.scale(a)
        quotient = numerator.divide_exact(1)
        # derivative = (1/e) K_{n-1}(x, 1) = -(1/e) k_{n-1}/(k_n h_{n-1}) * numerator/(x - 1)
        ratio = -p_prev.leading / p_n.leading
        constant = ExactReal(ratio, e_pow=-1) / norm_squared_exact(shifted, n - 1)
        return CDForm(spec, kind, n, numerator, quotient, constant)
    if spec.family is Family.HERMITE:
        numerator, quotient, constant = _symmetric_cd(spec, 2 * n, Fraction(2))
        return CDForm(spec, kind, n, numerator, quotient, constant)
    (lam,) = spec.params
    numerator, quotient, constant = _symmetric_cd(FamilySpec.gegenbauer(lam + 1), 2 * n, Fraction(2))
    return CDForm(spec, kind, n, numerator, quotient, constant)


def partial_sum_eval(series: ExpansionSeries, x, digits: int) -> RealMP:
    """Evaluate the partial sum at x by the three-term recurrence.

    Deliberately independent of the Christoffel-Darboux forms: the basis
    values come from the recurrence, not from the explicit polynomials.
    """
    wp = digits + GUARD
    values = recurrence_values(series.spec, series.degree, x, wp)
    with mp.workdps(wp):
        total = mp.mpf(0)
        for factor, terms in series.grouped().items():
            part = mp.fsum(values[j] * mp.mpf(r.numerator) / r.denominator for j, r in terms)
            total += part * factor.evaluate(wp).value
    with mp.workdps(digits):
        return RealMP(+total, digits)
