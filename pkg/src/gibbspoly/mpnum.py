"""Arbitrary-precision reals and the special functions the pipelines need.

Precision is always passed explicitly as a number of decimal digits.
Every function evaluates with ``GUARD`` extra digits and tags its result
with the requested precision; nothing reads or mutates a global precision
setting outside a local ``workdps`` block.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from numbers import Rational

import mpmath
from mpmath import mp, mpf
from mpmath.libmp import from_rational, mpf_abs, mpf_neg, round_nearest

from .errors import DomainError, PoleError

__all__ = [
    "GUARD",
    "RealMP",
    "as_fraction",
    "mpf_from_fraction",
    "fraction_from_mpf",
    "pi",
    "e",
    "sqrt_pi",
    "gamma",
    "gamma_closed_form",
    "upper_incomplete_gamma_at_1",
    "sine_integral",
    "gibbs_constant",
    "ExactReal",
]

GUARD = 20
MIN_DIGITS = 10

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-1/2"`` or ``"0.25"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m:
            return Fraction(int(m.group(1)), int(m.group(2)))
        return Fraction(value.strip())
    if isinstance(value, float):
        # floats are exact binary rationals; accept them as such
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def _bits(digits: int) -> int:
    return int(math.ceil(digits * math.log2(10))) + 4


def mpf_from_fraction(q: Fraction, digits: int) -> mpf:
    """Correctly rounded conversion of an exact rational."""
    q = as_fraction(q)
    return mp.make_mpf(from_rational(q.numerator, q.denominator, _bits(digits), round_nearest))


def fraction_from_mpf(x) -> Fraction:
    """The exact dyadic rational held by an mpf."""
    x = mpf(x) if not isinstance(x, mpf) else x
    if not mpmath.isfinite(x):
        raise ValueError("non-finite value has no rational form")
    sign, man, exp, _ = x._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


@total_ordering
@dataclass(frozen=True, eq=False)
class RealMP:
    """An mpf tagged with the number of decimal digits it is good to."""

    value: mpf
    digits: int

    def __post_init__(self):
        if self.digits <= 0:
            raise ValueError("digits must be positive")
        if not isinstance(self.value, mpf):
            with mp.workdps(self.digits):
                object.__setattr__(self, "value", mpf(self.value))

    @classmethod
    def from_fraction(cls, q, digits: int) -> "RealMP":
        return cls(mpf_from_fraction(q, digits), digits)

    def _coerce(self, other):
        if isinstance(other, RealMP):
            return other.value, max(self.digits, other.digits)
        if isinstance(other, (Fraction, Rational)) and not isinstance(other, int):
            return mpf_from_fraction(other, self.digits + GUARD), self.digits
        if isinstance(other, (int, float, mpf)):
            return mpf(other), self.digits
        return NotImplemented, None

    def _binop(self, other, fn, reflected=False):
        ov, digits = self._coerce(other)
        if ov is NotImplemented:
            return NotImplemented
        with mp.workdps(digits):
            val = fn(ov, self.value) if reflected else fn(self.value, ov)
        return RealMP(val, digits)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binop(other, lambda a, b: a + b, True)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: a - b, True)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binop(other, lambda a, b: a * b, True)

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: a / b, True)

    def __neg__(self):
        # exact: sign flips never round
        return RealMP(mp.make_mpf(mpf_neg(self.value._mpf_)), self.digits)

    def __abs__(self):
        return RealMP(mp.make_mpf(mpf_abs(self.value._mpf_)), self.digits)

    def __eq__(self, other):
        ov, _ = self._coerce(other)
        if ov is NotImplemented:
            return NotImplemented
        return self.value == ov

    def __lt__(self, other):
        ov, _ = self._coerce(other)
        if ov is NotImplemented:
            return NotImplemented
        return self.value < ov

    def __hash__(self):
        return hash((self.value, self.digits))

    def __float__(self):
        return float(self.value)

    def sqrt(self) -> "RealMP":
        with mp.workdps(self.digits):
            return RealMP(mpmath.sqrt(self.value), self.digits)

    def to_fraction(self) -> Fraction:
        return fraction_from_mpf(self.value)

    def with_digits(self, digits: int) -> "RealMP":
        with mp.workdps(digits):
            return RealMP(+self.value, digits)

    def format(self, digits: int | None = None) -> str:
        """Decimal string; fixed notation for decimal exponents -6..6, scientific otherwise."""
        n = self.digits if digits is None else digits
        return mpmath.nstr(self.value, n, min_fixed=-7, max_fixed=7)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RealMP({mpmath.nstr(self.value, min(self.digits, 20))}, digits={self.digits})"


def _check_digits(p: int):
    if p < MIN_DIGITS:
        raise DomainError(f"precision must be at least {MIN_DIGITS} digits, got {p}", "digits")


# Constants are cached per precision. lru_cache is safe under concurrent reads;
# a racing miss just computes the same immutable mpf twice.
@lru_cache(maxsize=None)
def _pi_mpf(digits: int) -> mpf:
    with mp.workdps(digits):
        return +mp.pi


@lru_cache(maxsize=None)
def _e_mpf(digits: int) -> mpf:
    with mp.workdps(digits):
        return +mp.e


@lru_cache(maxsize=None)
def _sqrt_pi_mpf(digits: int) -> mpf:
    with mp.workdps(digits):
        return mpmath.sqrt(_pi_mpf(digits))


def pi(p: int) -> RealMP:
    return RealMP(_pi_mpf(p), p)


def e(p: int) -> RealMP:
    return RealMP(_e_mpf(p), p)


def sqrt_pi(p: int) -> RealMP:
    return RealMP(_sqrt_pi_mpf(p), p)


def gamma_closed_form(a) -> tuple[Fraction, int] | None:
    """Exact Γ(a) as ``(q, k)`` meaning ``q * sqrt(pi)**k`` when one exists.

    Integers give ``k = 0`` and half-integers ``k = 1``; anything else
    returns ``None``.  Raises :class:`PoleError` at the poles.
    """
    a = as_fraction(a)
    if a.denominator == 1:
        if a <= 0:
            raise PoleError(f"Gamma has a pole at {a}", "a")
        return Fraction(math.factorial(int(a) - 1)), 0
    if a.denominator == 2:
        m = a - Fraction(1, 2)  # integer
        m = int(m)
        if m >= 0:
            # Γ(m + 1/2) = (2m)! / (4^m m!) √π
            return Fraction(math.factorial(2 * m), 4**m * math.factorial(m)), 1
        k = -m
        # Γ(1/2 - k) = (-4)^k k! / (2k)! √π
        return Fraction((-4) ** k * math.factorial(k), math.factorial(2 * k)), 1
    return None


@lru_cache(maxsize=256)
def _gamma_mpf(a: Fraction, digits: int) -> mpf:
    closed = gamma_closed_form(a)
    wp = digits + GUARD
    with mp.workdps(wp):
        if closed is not None:
            q, k = closed
            val = mpf_from_fraction(q, wp)
            if k:
                val *= _sqrt_pi_mpf(wp)
            return val
        return mpmath.gamma(mpf_from_fraction(a, wp))


def gamma(a, p: int) -> RealMP:
    """Γ(a) for rational a, good to p - 5 digits (in practice to p)."""
    _check_digits(p)
    a = as_fraction(a)
    val = _gamma_mpf(a, p)
    with mp.workdps(p):
        return RealMP(+val, p)


def _incgamma_cf(a: mpf, wp: int) -> mpf:
    """Γ(a, 1) by the Legendre continued fraction (modified Lentz)."""
    tiny = mpf(10) ** (-2 * wp)
    eps = mpf(10) ** (-wp)
    b = 2 - a
    c = 1 / tiny
    d = 1 / b
    h = d
    i = 0
    while True:
        i += 1
        an = -i * (i - a)
        b += 2
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) < eps:
            break
        if i > 50 * wp * wp:
            raise ArithmeticError("incomplete gamma continued fraction did not converge")
    return h / _e_mpf(wp)


@lru_cache(maxsize=256)
def _incgamma_mpf(a: Fraction, digits: int) -> mpf:
    wp = digits + GUARD
    with mp.workdps(wp):
        inv_e = 1 / _e_mpf(wp)
        if a.denominator == 1:
            # Γ(n+1, 1) = n! e^{-1} Σ_{k<=n} 1/k!
            n = int(a) - 1
            s = sum(Fraction(1, math.factorial(k)) for k in range(n + 1))
            return mpf_from_fraction(s * math.factorial(n), wp) * inv_e
        frac = a - math.floor(a)
        val = _incgamma_cf(mpf_from_fraction(frac, wp), wp)
        # upward recurrence Γ(s+1, 1) = s Γ(s, 1) + 1/e has no cancellation
        s = frac
        while s < a:
            val = mpf_from_fraction(s, wp) * val + inv_e
            s += 1
        return val


def upper_incomplete_gamma_at_1(a, p: int) -> RealMP:
    """Γ(a, 1) = ∫_1^∞ x^(a-1) e^(-x) dx for rational a > 0."""
    _check_digits(p)
    a = as_fraction(a)
    if a <= 0:
        raise DomainError(f"upper incomplete gamma needs a > 0, got {a}", "a")
    val = _incgamma_mpf(a, p)
    with mp.workdps(p):
        return RealMP(+val, p)


def sine_integral(x, p: int) -> RealMP:
    """Si(x) from its Taylor series; intended for moderate |x|."""
    _check_digits(p)
    if isinstance(x, RealMP):
        x = x.value
    wp = p + GUARD
    with mp.workdps(wp):
        x = mpf(x)
        # the largest term is about e^|x|, so cancellation costs |x|/ln 10 digits
        extra = int(abs(x) / math.log(10)) + 5
    wp += extra
    with mp.workdps(wp):
        x = mpf(x)
        x2 = x * x
        term = x  # x^(2k+1)/(2k+1)!, signed
        total = mpf(0)
        cutoff = mpf(10) ** (-(p + 10))
        k = 0
        while True:
            contrib = term / (2 * k + 1)
            total += contrib
            if abs(contrib) < cutoff and k > 0:
                break
            k += 1
            term = -term * x2 / ((2 * k) * (2 * k + 1))
    with mp.workdps(p):
        return RealMP(+total, p)


@lru_cache(maxsize=None)
def _gibbs_mpf(p: int) -> mpf:
    wp = p + GUARD
    with mp.workdps(wp):
        si = sine_integral(_pi_mpf(wp), wp).value
        return 2 * si / _pi_mpf(wp)


def gibbs_constant(p: int) -> RealMP:
    """γ = (2/π) Si(π) = 1.1789797444721672..."""
    if p < 1:
        raise DomainError("precision must be positive", "digits")
    val = _gibbs_mpf(max(p, MIN_DIGITS))
    with mp.workdps(p):
        return RealMP(+val, p)


def _reduce_gamma_arg(a: Fraction) -> tuple[Fraction, Fraction]:
    """Write Γ(a) = q * Γ(f) with f in (0, 1) and q rational."""
    f = a - math.floor(a)
    q = Fraction(1)
    s = f
    while s < a:
        q *= s
        s += 1
    while s > a:
        s -= 1
        if s == 0:
            raise PoleError(f"Gamma has a pole at {a}", "a")
        q /= s
    return q, f


@dataclass(frozen=True)
class ExactReal:
    """``rational * e**e_pow * sqrt(pi)**sqrt_pi_pow * 2**two_pow * Π Γ(f)**k [* Γ(a,1)/Γ(a)]``.

    Keeps the transcendental part symbolic so that identities between
    coefficients can be checked exactly.  Gamma factors are reduced to
    arguments in (0, 1); integer and half-integer arguments never appear
    there because they fold into the rational and √π parts.
    """

    rational: Fraction = Fraction(1)
    e_pow: int = 0
    sqrt_pi_pow: int = 0
    two_pow: Fraction = Fraction(0)
    gammas: tuple[tuple[Fraction, int], ...] = ()
    incgamma: Fraction | None = None

    @classmethod
    def of(cls, q) -> "ExactReal":
        return cls(as_fraction(q))

    @classmethod
    def gamma(cls, a, power: int = 1) -> "ExactReal":
        a = as_fraction(a)
        closed = gamma_closed_form(a)
        if closed is not None:
            q, k = closed
            return cls(q**power, sqrt_pi_pow=k * power)
        q, f = _reduce_gamma_arg(a)
        if f == Fraction(1, 2):
            return cls(q**power, sqrt_pi_pow=power)
        return cls(q**power, gammas=((f, power),))

    @classmethod
    def two_power(cls, t) -> "ExactReal":
        t = as_fraction(t)
        whole = math.floor(t)
        rat = Fraction(2) ** whole
        return cls(rat, two_pow=t - whole)

    @classmethod
    def incgamma_ratio(cls, a) -> "ExactReal":
        """Γ(a, 1) / Γ(a)."""
        return cls(incgamma=as_fraction(a))

    @property
    def factor(self) -> "ExactReal":
        """The same value with rational part 1."""
        return ExactReal(Fraction(1), self.e_pow, self.sqrt_pi_pow, self.two_pow, self.gammas, self.incgamma)

    @property
    def is_rational(self) -> bool:
        return self.factor == ExactReal()

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactReal.of(other)
        if not isinstance(other, ExactReal):
            return NotImplemented
        if self.incgamma is not None and other.incgamma is not None:
            raise ValueError("products of two incomplete-gamma ratios are not representable")
        rat = self.rational * other.rational
        two = self.two_pow + other.two_pow
        if two >= 1:
            two -= 1
            rat *= 2
        g = dict(self.gammas)
        for f, k in other.gammas:
            g[f] = g.get(f, 0) + k
        gammas = tuple(sorted((f, k) for f, k in g.items() if k))
        inc = self.incgamma if self.incgamma is not None else other.incgamma
        return ExactReal(rat, self.e_pow + other.e_pow, self.sqrt_pi_pow + other.sqrt_pi_pow, two, gammas, inc)

    __rmul__ = __mul__

    def inverse(self) -> "ExactReal":
        if self.incgamma is not None:
            raise ValueError("cannot invert an incomplete-gamma ratio symbolically")
        if self.rational == 0:
            raise ZeroDivisionError("inverse of zero")
        two = -self.two_pow
        rat = 1 / self.rational
        if two < 0:
            two += 1
            rat /= 2
        return ExactReal(
            rat, -self.e_pow, -self.sqrt_pi_pow, two, tuple((f, -k) for f, k in self.gammas), None
        )

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactReal.of(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ExactReal.of(other) * self.inverse()

    def __neg__(self):
        return ExactReal(-self.rational, self.e_pow, self.sqrt_pi_pow, self.two_pow, self.gammas, self.incgamma)

    def evaluate(self, p: int) -> RealMP:
        wp = p + GUARD
        with mp.workdps(wp):
            v = mpf_from_fraction(self.rational, wp)
            if self.e_pow:
                v *= _e_mpf(wp) ** self.e_pow
            if self.sqrt_pi_pow:
                v *= _sqrt_pi_mpf(wp) ** self.sqrt_pi_pow
            if self.two_pow:
                v *= mpf(2) ** mpf_from_fraction(self.two_pow, wp)
            for f, k in self.gammas:
                v *= _gamma_mpf(f, wp) ** k
            if self.incgamma is not None:
                v *= _incgamma_mpf(self.incgamma, wp) / _gamma_mpf(self.incgamma, wp)
        with mp.workdps(p):
            return RealMP(+v, p)

    def __str__(self):
        parts = [str(self.rational)]
        if self.e_pow:
            parts.append(f"e^{self.e_pow}")
        if self.sqrt_pi_pow:
            parts.append(f"sqrt(pi)^{self.sqrt_pi_pow}")
        if self.two_pow:
            parts.append(f"2^({self.two_pow})")
        parts += [f"Gamma({f})^{k}" for f, k in self.gammas]
        if self.incgamma is not None:
            parts.append(f"Gamma({self.incgamma},1)/Gamma({self.incgamma})")
        return " * ".join(parts)
