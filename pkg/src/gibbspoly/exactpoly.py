"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored lowest power first.  Evaluation at rationals (and at
mpf values, which are dyadic rationals) is done exactly in integer
arithmetic, so signs are certain and multiprecision results are correctly
rounded.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from mpmath import mp, mpf

from .errors import MultipleRootsError, NotDivisibleError
from .mpnum import GUARD, RealMP, as_fraction, fraction_from_mpf, mpf_from_fraction

__all__ = [
    "Poly",
    "X",
    "sturm_sequence",
    "sturm_count",
    "descartes_bound",
    "root_count",
]


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


class Poly:
    """Immutable dense polynomial over Q.

    >>> p = Poly([4, -5, 1])
    >>> p
    Poly('x^2 - 5*x + 4')
    >>> p.divide_exact(1)
    Poly('x - 4')
    """

    __slots__ = ("coeffs", "_int_form")

    def __init__(self, coeffs=()):
        c = [as_fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)
        self._int_form = None

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        a, da = self.integer_form()
        b, db = other.integer_form()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        den = da * db
        return Poly([Fraction(c, den) for c in out])

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        return Poly([c * v for v in self.coeffs])

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "Poly":
        return Poly([k * self.coeffs[k] for k in range(1, len(self.coeffs))])

    def antiderivative(self) -> "Poly":
        """Antiderivative with zero constant term."""
        if not self.coeffs:
            return Poly()
        return Poly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def divide_exact(self, root) -> "Poly":
        """Quotient of ``self / (x - root)``; the remainder must vanish."""
        q, r = self.synthetic_division(root)
        if r != 0:
            raise NotDivisibleError(f"polynomial does not vanish at {root} (remainder {r})")
        return q

    def synthetic_division(self, root) -> tuple["Poly", Fraction]:
        root = as_fraction(root)
        if not self.coeffs:
            return Poly(), Fraction(0)
        acc = Fraction(0)
        out = []
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        remainder = out.pop()
        return Poly(reversed(out)), remainder

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for j in range(dq + 1):
                    rem[k - dq + j] -= c * other.coeffs[j]
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(x)) by Horner's rule."""
        result = Poly()
        for c in reversed(self.coeffs):
            result = result * inner + Poly([c])
        return result

    def scale_argument(self, s) -> "Poly":
        """self(s*x)."""
        s = as_fraction(s)
        return Poly([c * s**k for k, c in enumerate(self.coeffs)])

    def substitute_power(self, m: int) -> "Poly":
        """self(x**m)."""
        out = [Fraction(0)] * (m * self.degree + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[m * k] = c
        return Poly(out)

    # -- evaluation --------------------------------------------------------

    def integer_form(self) -> tuple[tuple[int, ...], int]:
        """``(ints, den)`` with ``self == Poly(ints) / den`` and ``den > 0``."""
        if self._int_form is None:
            den = reduce(_lcm, (c.denominator for c in self.coeffs), 1)
            ints = tuple(c.numerator * (den // c.denominator) for c in self.coeffs)
            self._int_form = (ints, den)
        return self._int_form

    def _scaled_value(self, num: int, den: int) -> int:
        """den**degree * P_int(num/den), an exact integer."""
        ints, _ = self.integer_form()
        if not ints:
            return 0
        acc = ints[-1]
        if den & (den - 1) == 0:
            shift = den.bit_length() - 1
            s = shift
            for c in reversed(ints[:-1]):
                acc = acc * num + (c << s)
                s += shift
        else:
            dpow = den
            for c in reversed(ints[:-1]):
                acc = acc * num + c * dpow
                dpow *= den
        return acc

    def eval_rational(self, x) -> Fraction:
        x = as_fraction(x)
        if not self.coeffs:
            return Fraction(0)
        _, cden = self.integer_form()
        v = self._scaled_value(x.numerator, x.denominator)
        return Fraction(v, cden * x.denominator ** self.degree)

    __call__ = eval_rational

    def sign_at(self, x) -> int:
        """Exact sign of P(x) at a rational point."""
        x = as_fraction(x)
        if not self.coeffs:
            return 0
        v = self._scaled_value(x.numerator, x.denominator)
        return (v > 0) - (v < 0)

    def eval_mp(self, x, digits: int) -> RealMP:
        """Correctly rounded value at an mpf/RealMP point.

        The point is converted to its exact dyadic value and the
        polynomial is evaluated exactly, so no guard digits are lost to
        cancellation no matter how large the coefficients are.
        """
        if isinstance(x, RealMP):
            x = x.value
        elif isinstance(x, Fraction):
            return RealMP.from_fraction(self.eval_rational(x), digits)
        elif not isinstance(x, mpf):
            with mp.workdps(digits + GUARD):
                x = mpf(x)
        xq = fraction_from_mpf(x)
        num, den = xq.numerator, xq.denominator
        if not self.coeffs:
            return RealMP(mpf(0), digits)
        _, cden = self.integer_form()
        v = self._scaled_value(num, den)
        return RealMP.from_fraction(Fraction(v, cden * den**self.degree), digits)

    def eval_mp_horner(self, x, digits: int) -> RealMP:
        """Plain floating Horner at ``digits + GUARD``; an independent check."""
        if isinstance(x, RealMP):
            x = x.value
        wp = digits + GUARD
        with mp.workdps(wp):
            x = mpf(x)
            acc = mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + mpf_from_fraction(c, wp)
        with mp.workdps(digits):
            return RealMP(+acc, digits)

    # -- transforms used by root counting -----------------------------------

    def primitive_integer_coeffs(self) -> list[int]:
        ints, _ = self.integer_form()
        g = reduce(math.gcd, ints, 0) or 1
        return [c // g for c in ints]


X = Poly([0, 1])


def _as_poly(other):
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, Fraction)):
        return Poly([other])
    return NotImplemented


# -- exact root counting ------------------------------------------------------


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm chain p, p', -rem(p, p'), ... over Q.

    Each member is made monic up to sign (positive scaling does not change
    sign variations) to keep the rational coefficients small.
    """
    if p.degree < 1:
        return [p]
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        _, r = seq[-2].divmod(seq[-1])
        if r.is_zero():
            break
        r = -r
        seq.append(r.scale(1 / abs(r.leading)))
    return seq


def _sign_changes(values) -> int:
    count = 0
    last = 0
    for v in values:
        s = (v > 0) - (v < 0)
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def sturm_count(p: Poly, a, b) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    a, b = as_fraction(a), as_fraction(b)
    if a >= b:
        return 0
    seq = sturm_sequence(p)
    va = _sign_changes(q.sign_at(a) for q in seq)
    vb = _sign_changes(q.sign_at(b) for q in seq)
    return va - vb


def _mobius_coeffs(p: Poly, a: Fraction, b: Fraction) -> list[int]:
    """Integer coefficients of (1+t)^d p((a + b t)/(1 + t)), up to a positive factor."""
    ints = p.primitive_integer_coeffs()
    d = len(ints) - 1
    # x = (A + W y) / D  maps y in (0, 1) onto (a, b)
    D = _lcm(a.denominator, b.denominator)
    A = a.numerator * (D // a.denominator)
    W = b.numerator * (D // b.denominator) - A
    # q(y) = D^d p((A + W y)/D) by Horner over Z[y]
    q = [ints[-1]]
    dpow = D
    for c in reversed(ints[:-1]):
        nxt = [0] * (len(q) + 1)
        for k, v in enumerate(q):
            nxt[k] += v * A
            nxt[k + 1] += v * W
        nxt[0] += c * dpow
        dpow *= D
        q = nxt
    # reverse: y^d q(1/y) maps (0, 1) to (1, inf); then shift y = 1 + t
    r = q[::-1]
    n = len(r)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            r[k] += r[k + 1]
    return r


def descartes_bound(p: Poly, a, b) -> int:
    """Sign variations of the Mobius transform of p onto (a, b).

    This is an upper bound on the number of roots in the open interval
    (a, b) with the same parity; 0 and 1 are exact answers.
    """
    a, b = as_fraction(a), as_fraction(b)
    if p.degree < 1:
        return 0
    return _sign_changes(_mobius_coeffs(p, a, b))


def _descartes_count(p: Poly, a: Fraction, b: Fraction, depth: int, max_depth: int) -> int:
    v = descartes_bound(p, a, b)
    if v <= 1:
        return v
    if depth >= max_depth:
        raise MultipleRootsError(
            f"could not separate roots in ({float(a)}, {float(b)}); repeated or clustered roots"
        )
    m = (a + b) / 2
    mid_extra = 1 if p.sign_at(m) == 0 else 0
    return (
        _descartes_count(p, a, m, depth + 1, max_depth)
        + mid_extra
        + _descartes_count(p, m, b, depth + 1, max_depth)
    )


STURM_MAX_DEGREE = 12


def root_count(p: Poly, a, b, method: str = "auto", max_depth: int = 60) -> int:
    """Exact number of distinct real roots in the open interval (a, b).

    ``method`` is ``"sturm"``, ``"descartes"`` or ``"auto"`` (Sturm up to
    degree 12, Descartes bisection above; exact Sturm chains grow so fast
    that already at degree 40 they cost a thousand times more).
    """
    a, b = as_fraction(a), as_fraction(b)
    if a >= b or p.degree < 1:
        return 0
    if method == "auto":
        method = "sturm" if p.degree <= STURM_MAX_DEGREE else "descartes"
    if method == "sturm":
        return sturm_count(p, a, b) - (1 if p.sign_at(b) == 0 else 0)
    if method == "descartes":
        return _descartes_count(p, a, b, 0, max_depth)
    raise ValueError(f"unknown root counting method {method!r}")

