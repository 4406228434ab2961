"""Certified location of the critical points next to the jump.

Roots are bracketed by an exact-sign scan, the bracket is certified to hold
the first root (exact root count over the whole stretch scanned), and the
root is then polished by bisection followed by Newton's method with exact
polynomial evaluation.  The final enclosure is re-checked with exact signs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import MultipleRootsError, NoRootFoundError, PrecisionExhaustedError
from .exactpoly import Poly, root_count
from .mpnum import GUARD, RealMP, as_fraction, fraction_from_mpf, mpf_from_fraction

__all__ = [
    "Side",
    "RootEnclosure",
    "bracket_first_root",
    "refine_root",
    "first_root",
    "laguerre_window",
    "hermite_zero_window",
    "u_map",
]


class Side(str, enum.Enum):
    ABOVE_JUMP = "above_jump"
    BELOW_JUMP = "below_jump"
    POSITIVE = "positive"


@dataclass(frozen=True)
class RootEnclosure:
    """A certified root: Q(low) and Q(high) have opposite exact signs and
    the bracket it was isolated in holds exactly one root."""

    low: Fraction
    high: Fraction
    refined: RealMP
    poly_degree: int
    side: Side

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    def recertify(self, q: Poly) -> bool:
        if self.low == self.high:
            return q.sign_at(self.low) == 0
        return q.sign_at(self.low) * q.sign_at(self.high) < 0


def _dyadic_step(window: Fraction, divisions: int = 64) -> Fraction:
    """Largest power of two not exceeding window/divisions."""
    target = window / divisions
    k = math.floor(math.log2(target.numerator) - math.log2(target.denominator))
    step = Fraction(2) ** k
    while step > target:
        step /= 2
    while step * 2 <= target:
        step *= 2
    return step


def bracket_first_root(q: Poly, start, direction: str, window_hint, max_halvings: int = 12):
    """Bracket the first root of q strictly beyond ``start``.

    Scans with exact signs at dyadic points spaced ``window_hint/64`` apart,
    out to ``8 * window_hint``.  The first sign change gives the bracket;
    an exact root count over (start, far end of the bracket) must be 1, so
    no earlier root can hide between samples.  Returns ``(low, high)``,
    equal when a sample point is itself a root.
    """
    start = as_fraction(start)
    window_hint = as_fraction(window_hint)
    if direction not in ("up", "down"):
        raise ValueError("direction must be 'up' or 'down'")
    if window_hint <= 0:
        raise ValueError("window_hint must be positive")
    s0 = q.sign_at(start)
    if s0 == 0:
        raise ValueError("q vanishes at the starting point")
    sgn = 1 if direction == "up" else -1
    limit = 8 * window_hint
    step = _dyadic_step(window_hint)
    last = None
    for _ in range(max_halvings + 1):
        prev = start
        k = 1
        found = None
        while k * step <= limit:
            pt = start + sgn * k * step
            s = q.sign_at(pt)
            if s != s0:
                found = (prev, pt, s)
                break
            prev = pt
            k += 1
        if found is None:
            raise NoRootFoundError(
                f"no sign change within {float(limit):.4g} {direction} of {start}"
            )
        prev, pt, s = found
        last = tuple(sorted((prev, pt)))
        if s == 0:
            # a sample hit the root exactly: width-zero bracket if nothing precedes it
            if root_count(q, *sorted((start, pt))) == 0:
                return pt, pt
        elif root_count(q, *sorted((start, pt))) == 1:
            return last
        step /= 2
    inner = root_count(q, *last)
    raise MultipleRootsError(
        f"could not isolate the first root {direction} of {start}; "
        f"final bracket near {float(last[0]):.6g} holds {inner} roots"
    )


def _bisect_to(q: Poly, lo: Fraction, hi: Fraction, width: Fraction):
    s_lo = q.sign_at(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = q.sign_at(mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _newton(q: Poly, dq: Poly, lo: Fraction, hi: Fraction, wp: int) -> mpf:
    bits = int(wp * math.log2(10))
    with mp.workdps(wp):
        lo_m = mpf_from_fraction(lo, wp)
        hi_m = mpf_from_fraction(hi, wp)
        x = (lo_m + hi_m) / 2
        for _ in range(100):
            fx = q.eval_mp(x, wp).value
            dfx = dq.eval_mp(x, wp).value
            if dfx == 0:
                break
            step = fx / dfx
            x_new = x - step
            if not lo_m <= x_new <= hi_m:
                # fall back to the midpoint of the bracket half that holds the root
                x_new = (x + (hi_m if step < 0 else lo_m)) / 2
            x = x_new
            if step == 0 or abs(step) <= abs(x) * mpf(2) ** (-bits + 8):
                return x
    raise PrecisionExhaustedError("Newton iteration stalled; retry at higher precision")


def refine_root(q: Poly, bracket, p: int, side: Side = Side.POSITIVE) -> RootEnclosure:
    """Polish a certified single-root bracket to width <= 10^-(p-10)."""
    lo, hi = (as_fraction(v) for v in bracket)
    if lo == hi:
        return RootEnclosure(lo, hi, RealMP.from_fraction(lo, p), q.degree, side)
    lo, hi = _bisect_to(q, lo, hi, Fraction(1, 2**40) * max(1, abs(lo)))
    if lo == hi:
        return RootEnclosure(lo, hi, RealMP.from_fraction(lo, p), q.degree, side)
    dq = q.derivative()
    # half-width of the final enclosure, a power of two below 10^-(p-10)/4
    half = Fraction(1, 2 ** (math.ceil((p - 10) * math.log2(10)) + 2))
    for extra in (GUARD, 2 * GUARD + p // 2):
        x = _newton(q, dq, lo, hi, p + extra)
        xq = fraction_from_mpf(x)
        a, b = max(lo, xq - half), min(hi, xq + half)
        sa, sb = q.sign_at(a), q.sign_at(b)
        if sa == 0:
            b = a
        elif sb == 0:
            a = b
        elif sa * sb > 0:
            continue
        with mp.workdps(p):
            refined = RealMP(+x, p) if a != b else RealMP.from_fraction(a, p)
        return RootEnclosure(a, b, refined, q.degree, side)
    raise PrecisionExhaustedError(f"could not certify a {p}-digit enclosure")


def first_root(q: Poly, start, direction: str, window_hint, p: int, side: Side) -> RootEnclosure:
    return refine_root(q, bracket_first_root(q, start, direction, window_hint), p, side)


def laguerre_window(n: int, direction: str) -> Fraction:
    """Scan window from the predicted root x = (1 +- pi/(2 sqrt n))^2."""
    shift = math.pi / (2 * math.sqrt(n))
    if direction == "up":
        w = (1 + shift) ** 2 - 1
    else:
        w = 1 - (1 - shift) ** 2 if shift < 1 else 1.0
    return Fraction(w).limit_denominator(1 << 20)


def hermite_zero_window(N: int, p: int = 30) -> tuple[RealMP, RealMP]:
    """Bounds on the least positive zero of H_{2N+1}.

    pi/sqrt(2n+1) < x < pi/sqrt(2n+1) * {1/2 + 1/2 [1 - (2 pi/(2n+1))^2]^(1/2)}^(-1/2)
    with n = 2N+1.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    n = 2 * N + 1
    with mp.workdps(p + GUARD):
        lower = mp.pi / mp.sqrt(2 * n + 1)
        brace = mpf(1) / 2 + mp.sqrt(1 - (2 * mp.pi / (2 * n + 1)) ** 2) / 2
        upper = lower / mp.sqrt(brace)
    with mp.workdps(p):
        return RealMP(+lower, p), RealMP(+upper, p)


def u_map(x, n: int, p: int | None = None) -> RealMP:
    """u = 2 sqrt(n) (sqrt(x) - 1)."""
    if isinstance(x, RealMP):
        digits = x.digits if p is None else p
        x = x.value
    else:
        digits = p or 30
    with mp.workdps(digits + GUARD):
        x = mpf(x) if not isinstance(x, Fraction) else mpf_from_fraction(x, digits + GUARD)
        if x < 0:
            raise ValueError("u_map needs x >= 0")
        u = 2 * mp.sqrt(n) * (mp.sqrt(x) - 1)
    with mp.workdps(digits):
        return RealMP(+u, digits)
