"""Classical orthogonal polynomial families with exact rational coefficients.

Polynomials are built from their explicit defining sums; the three-term
recurrences live in :func:`recurrence_values` and serve as independent
evaluators and test oracles.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf

from .errors import DomainError
from .exactpoly import Poly
from .mpnum import GUARD, ExactReal, RealMP, as_fraction, mpf_from_fraction

__all__ = [
    "Family",
    "FamilySpec",
    "pochhammer",
    "gen_binomial",
    "laguerre",
    "hermite",
    "gegenbauer",
    "jacobi",
    "legendre",
    "chebyshev_t",
    "chebyshev_u",
    "polynomial",
    "norm_squared_exact",
    "norm_squared",
    "recurrence_values",
    "carlitz_product",
]

HALF = Fraction(1, 2)


class Family(str, enum.Enum):
    LAGUERRE = "laguerre"
    HERMITE = "hermite"
    GEGENBAUER = "gegenbauer"
    JACOBI = "jacobi"
    LEGENDRE = "legendre"
    CHEBYSHEV_T = "chebyshev_t"
    CHEBYSHEV_U = "chebyshev_u"


_PARAM_NAMES = {
    Family.LAGUERRE: ("alpha",),
    Family.HERMITE: (),
    Family.GEGENBAUER: ("lambda",),
    Family.JACOBI: ("alpha", "beta"),
    Family.LEGENDRE: (),
    Family.CHEBYSHEV_T: (),
    Family.CHEBYSHEV_U: (),
}


@dataclass(frozen=True)
class FamilySpec:
    """A classical family together with its rational parameters."""

    family: Family
    params: tuple[Fraction, ...] = ()

    def __post_init__(self):
        family = Family(self.family)
        object.__setattr__(self, "family", family)
        params = tuple(as_fraction(p) for p in self.params)
        object.__setattr__(self, "params", params)
        names = _PARAM_NAMES[family]
        if len(params) != len(names):
            raise DomainError(f"{family.value} takes parameters {names}, got {len(params)}")
        if family is Family.LAGUERRE:
            _check_alpha(params[0], "alpha")
        elif family is Family.GEGENBAUER:
            _check_lambda(params[0])
        elif family is Family.JACOBI:
            _check_alpha(params[0], "alpha")
            _check_alpha(params[1], "beta")

    @classmethod
    def laguerre(cls, alpha) -> "FamilySpec":
        return cls(Family.LAGUERRE, (alpha,))

    @classmethod
    def hermite(cls) -> "FamilySpec":
        return cls(Family.HERMITE)

    @classmethod
    def gegenbauer(cls, lam) -> "FamilySpec":
        return cls(Family.GEGENBAUER, (lam,))

    @classmethod
    def jacobi(cls, alpha, beta) -> "FamilySpec":
        return cls(Family.JACOBI, (alpha, beta))

    @property
    def param_label(self) -> str:
        return ";".join(f"{n}={p}" for n, p in zip(_PARAM_NAMES[self.family], self.params))

    def __str__(self):
        label = self.param_label
        return f"{self.family.value}({label})" if label else self.family.value


def _check_alpha(alpha: Fraction, name: str):
    if alpha <= -1:
        raise DomainError(f"{name} must be > -1, got {alpha}", name)


def _check_lambda(lam: Fraction):
    if lam <= -HALF:
        raise DomainError(f"lambda must be > -1/2, got {lam}", "lambda")
    if lam == 0:
        # the standard normalization degenerates to zero for n >= 1
        raise DomainError("lambda = 0 is degenerate in the standard Gegenbauer normalization", "lambda")


def _check_degree(n: int):
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}", "n")


def pochhammer(a, k: int) -> Fraction:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    a = as_fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def gen_binomial(top, k: int) -> Fraction:
    """binom(top, k) for rational top and integer k >= 0."""
    if k < 0:
        return Fraction(0)
    top = as_fraction(top)
    out = Fraction(1)
    for i in range(k):
        out = out * (top - i) / (i + 1)
    return out


@lru_cache(maxsize=2048)
def _laguerre(n: int, alpha: Fraction) -> Poly:
    # L_n^(a)(x) = sum_j binom(n+a, n-j) (-x)^j / j!
    coeffs = [Fraction(0)] * (n + 1)
    binom = Fraction(1)  # binom(n+a, m) with m = n - j, starting at j = n
    top = n + alpha
    inv_fact = Fraction(1, math.factorial(n))
    for j in range(n, -1, -1):
        m = n - j
        if m > 0:
            binom = binom * (top - (m - 1)) / m
        coeffs[j] = binom * inv_fact * (-1) ** j
        if j > 0:
            inv_fact *= j
    return Poly(coeffs)


def laguerre(n: int, alpha=0) -> Poly:
    """Generalized Laguerre polynomial L_n^(alpha), alpha > -1."""
    _check_degree(n)
    alpha = as_fraction(alpha)
    _check_alpha(alpha, "alpha")
    return _laguerre(n, alpha)


@lru_cache(maxsize=1024)
def _hermite(n: int) -> Poly:
    m, odd = divmod(n, 2)
    if odd:
        base = _laguerre(m, HALF).substitute_power(2)
        p = Poly([0, 1]) * base
        scale = (-1) ** m * 2 ** (2 * m + 1) * math.factorial(m)
    else:
        p = _laguerre(m, -HALF).substitute_power(2)
        scale = (-1) ** m * 2 ** (2 * m) * math.factorial(m)
    return p.scale(scale)


def hermite(n: int) -> Poly:
    """Physicists' Hermite polynomial via its Laguerre specialization."""
    _check_degree(n)
    return _hermite(n)


@lru_cache(maxsize=1024)
def _gegenbauer(n: int, lam: Fraction) -> Poly:
    # C_n^(l)(x) = sum_k (-1)^k (l)_{n-k} / (k! (n-2k)!) (2x)^{n-2k}
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        m = n - 2 * k
        c = pochhammer(lam, n - k) / (math.factorial(k) * math.factorial(m))
        coeffs[m] = (-1) ** k * c * 2**m
    return Poly(coeffs)


def gegenbauer(n: int, lam) -> Poly:
    """Gegenbauer polynomial in the standard normalization, C_1 = 2 lambda x."""
    _check_degree(n)
    lam = as_fraction(lam)
    _check_lambda(lam)
    return _gegenbauer(n, lam)


@lru_cache(maxsize=512)
def _jacobi(n: int, alpha: Fraction, beta: Fraction) -> Poly:
    down = Poly([Fraction(-1, 2), HALF])  # (x - 1)/2
    up = Poly([HALF, HALF])  # (x + 1)/2
    down_pows = [Poly([1])]
    up_pows = [Poly([1])]
    for _ in range(n):
        down_pows.append(down_pows[-1] * down)
        up_pows.append(up_pows[-1] * up)
    total = Poly()
    for j in range(n + 1):
        c = gen_binomial(n + alpha, n - j) * gen_binomial(n + beta, j)
        if c:
            total = total + (down_pows[j] * up_pows[n - j]).scale(c)
    return total


def jacobi(n: int, alpha, beta) -> Poly:
    """Jacobi polynomial P_n^(alpha, beta) from its explicit binomial sum."""
    _check_degree(n)
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    _check_alpha(alpha, "alpha")
    _check_alpha(beta, "beta")
    return _jacobi(n, alpha, beta)


def legendre(n: int) -> Poly:
    return jacobi(n, 0, 0)


@lru_cache(maxsize=512)
def _chebyshev_t(n: int) -> Poly:
    if n == 0:
        return Poly([1])
    # T_n(x) = (n/2) sum_k (-1)^k (n-k-1)! / (k! (n-2k)!) (2x)^{n-2k}
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        m = n - 2 * k
        c = Fraction(n * math.factorial(n - k - 1), 2 * math.factorial(k) * math.factorial(m))
        coeffs[m] = (-1) ** k * c * 2**m
    return Poly(coeffs)


def chebyshev_t(n: int) -> Poly:
    """Chebyshev polynomial of the first kind, T_n(cos t) = cos(n t)."""
    _check_degree(n)
    return _chebyshev_t(n)


def chebyshev_u(n: int) -> Poly:
    """Chebyshev polynomial of the second kind, U_n = C_n^(1)."""
    _check_degree(n)
    return _gegenbauer(n, Fraction(1))


def polynomial(spec: FamilySpec, n: int) -> Poly:
    f = spec.family
    if f is Family.LAGUERRE:
        return laguerre(n, spec.params[0])
    if f is Family.HERMITE:
        return hermite(n)
    if f is Family.GEGENBAUER:
        return gegenbauer(n, spec.params[0])
    if f is Family.JACOBI:
        return jacobi(n, *spec.params)
    if f is Family.LEGENDRE:
        return legendre(n)
    if f is Family.CHEBYSHEV_T:
        return chebyshev_t(n)
    return chebyshev_u(n)


def norm_squared_exact(spec: FamilySpec, n: int) -> ExactReal:
    """Squared weighted L2 norm of the n-th member, as an exact descriptor."""
    _check_degree(n)
    f = spec.family
    if f is Family.LAGUERRE:
        (alpha,) = spec.params
        return ExactReal.gamma(n + alpha + 1) / math.factorial(n)
    if f is Family.HERMITE:
        return ExactReal(Fraction(2**n * math.factorial(n)), sqrt_pi_pow=1)
    if f is Family.GEGENBAUER or f is Family.CHEBYSHEV_U:
        lam = spec.params[0] if f is Family.GEGENBAUER else Fraction(1)
        # pi 2^(1-2l) Γ(n+2l) / (n! (n+l) Γ(l)^2), rewritten with the duplication formula
        rational = pochhammer(2 * lam, n) / (math.factorial(n) * (n + lam))
        return ExactReal(rational, sqrt_pi_pow=1) * ExactReal.gamma(lam + HALF) / ExactReal.gamma(lam)
    if f is Family.LEGENDRE:
        return ExactReal.of(Fraction(2, 2 * n + 1))
    if f is Family.CHEBYSHEV_T:
        return ExactReal(Fraction(1) if n == 0 else HALF, sqrt_pi_pow=2)
    alpha, beta = spec.params
    s = alpha + beta
    two = ExactReal.two_power(s + 1)
    if n == 0:
        return two * ExactReal.gamma(alpha + 1) * ExactReal.gamma(beta + 1) / ExactReal.gamma(s + 2)
    # 2^(a+b+1) Γ(n+a+1) Γ(n+b+1) / ((2n+a+b+1) Γ(n+a+b+1) n!)
    return (
        two
        * ExactReal.gamma(n + alpha + 1)
        * ExactReal.gamma(n + beta + 1)
        / ExactReal.gamma(n + s + 1)
        / ((2 * n + s + 1) * math.factorial(n))
    )


def norm_squared(spec: FamilySpec, n: int, p: int):
    """Exact Fraction when the norm is rational, otherwise a RealMP."""
    val = norm_squared_exact(spec, n)
    if val.is_rational:
        return val.rational
    return val.evaluate(p)


def recurrence_values(spec: FamilySpec, nmax: int, x, digits: int | None = None) -> list:
    """p_0(x), ..., p_nmax(x) from the three-term recurrence.

    With a rational ``x`` and ``digits=None`` the values are exact
    Fractions; otherwise they are mpf values computed at ``digits`` plus
    guard digits.
    """
    f = spec.family
    if digits is None:
        x = as_fraction(x)

        def conv(q):
            return as_fraction(q)

        return _recur(f, spec.params, nmax, x, conv)
    wp = digits + GUARD
    with mp.workdps(wp):
        if isinstance(x, RealMP):
            x = x.value
        elif isinstance(x, (Fraction, int)):
            x = mpf_from_fraction(as_fraction(x), wp)
        else:
            x = mpf(x)

        def conv(q):
            return mpf_from_fraction(as_fraction(q), wp)

        vals = _recur(f, spec.params, nmax, x, conv)
        return [+v for v in vals]


def _recur(f: Family, params, nmax: int, x, conv):
    one = conv(1)
    if f is Family.LAGUERRE:
        a = conv(params[0])
        vals = [one, one + a - x]
        for k in range(1, nmax):
            vals.append(((2 * k + 1 + a - x) * vals[k] - (k + a) * vals[k - 1]) / (k + 1))
    elif f is Family.HERMITE:
        vals = [one, 2 * x]
        for k in range(1, nmax):
            vals.append(2 * x * vals[k] - 2 * k * vals[k - 1])
    elif f in (Family.GEGENBAUER, Family.CHEBYSHEV_U):
        lam = conv(params[0]) if f is Family.GEGENBAUER else one
        vals = [one, 2 * lam * x]
        for k in range(1, nmax):
            vals.append((2 * (k + lam) * x * vals[k] - (k + 2 * lam - 1) * vals[k - 1]) / (k + 1))
    elif f is Family.CHEBYSHEV_T:
        vals = [one, x]
        for k in range(1, nmax):
            vals.append(2 * x * vals[k] - vals[k - 1])
    elif f is Family.LEGENDRE:
        vals = [one, x]
        for k in range(1, nmax):
            vals.append(((2 * k + 1) * x * vals[k] - k * vals[k - 1]) / (k + 1))
    else:
        a, b = (conv(p) for p in params)
        vals = [one, (a + 1) + (a + b + 2) * (x - 1) / 2]
        for k in range(1, nmax):
            n = k + 1
            c = 2 * n + a + b
            a1 = 2 * n * (n + a + b) * (c - 2)
            a2 = (c - 1) * (a * a - b * b)
            a3 = (c - 1) * c * (c - 2)
            a4 = 2 * (n + a - 1) * (n + b - 1) * c
            vals.append(((a2 + a3 * x) * vals[k] - a4 * vals[k - 1]) / a1)
    return vals[: nmax + 1]


def carlitz_product(n: int, alpha) -> tuple[Poly, Poly]:
    """Both sides of the Carlitz product formula as exact polynomials.

    Left: L_n^(a)(x) L_{n-1}^(a+1)(x).  Right:
    Γ(1+a+n)/(4^n n!) Σ_r (2r)!(2n-2r)! / (r! ((n-r)!)^2 Γ(1+a+r)) L_{2r-1}^(2a+1)(2x),
    with L_{-1} = 0 and the Gamma ratio taken as a Pochhammer symbol.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"Carlitz product needs n >= 1, got {n!r}", "n")
    alpha = as_fraction(alpha)
    _check_alpha(alpha, "alpha")
    left = laguerre(n, alpha) * laguerre(n - 1, alpha + 1)
    right = Poly()
    lead = Fraction(1, 4**n * math.factorial(n))
    for r in range(1, n + 1):
        gamma_ratio = pochhammer(1 + alpha + r, n - r)  # Γ(1+a+n)/Γ(1+a+r)
        c = Fraction(
            math.factorial(2 * r) * math.factorial(2 * n - 2 * r),
            math.factorial(r) * math.factorial(n - r) ** 2,
        )
        term = laguerre(2 * r - 1, 2 * alpha + 1).scale_argument(2)
        right = right + term.scale(lead * gamma_ratio * c)
    return left, right


def leading_coefficient(spec: FamilySpec, n: int) -> Fraction:
    return polynomial(spec, n).leading
