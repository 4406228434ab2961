import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp

from gibbspoly.errors import DomainError
from gibbspoly.exactpoly import X, Poly
from gibbspoly.mpnum import ExactReal, RealMP
from gibbspoly.orthofam import (
    Family,
    FamilySpec,
    carlitz_product,
    chebyshev_t,
    chebyshev_u,
    gegenbauer,
    gen_binomial,
    hermite,
    jacobi,
    laguerre,
    leading_coefficient,
    legendre,
    norm_squared,
    norm_squared_exact,
    pochhammer,
    polynomial,
    recurrence_values,
)

HALF = Fraction(1, 2)
alphas = st.fractions(min_value=Fraction(-9, 10), max_value=4, max_denominator=10)
lambdas = st.fractions(min_value=Fraction(-2, 5), max_value=4, max_denominator=10).filter(lambda v: v != 0)
points = st.fractions(min_value=-3, max_value=3, max_denominator=20)


# Moment functionals normalized by the zeroth moment: m_k / m_0, all rational.

def laguerre_moments(alpha):
    return lambda k: pochhammer(alpha + 1, k)


def hermite_moments(k):
    return Fraction(0) if k % 2 else pochhammer(HALF, k // 2)


def gegenbauer_moments(lam):
    return lambda k: Fraction(0) if k % 2 else pochhammer(HALF, k // 2) / pochhammer(lam + 1, k // 2)


def legendre_moments(k):
    return Fraction(0) if k % 2 else Fraction(1, k + 1)


def jacobi_moments_in_shifted_variable(a, b):
    # moments of y = 1 + x: 2^j (b+1)_j / (a+b+2)_j
    return lambda j: 2**j * pochhammer(b + 1, j) / pochhammer(a + b + 2, j)


def pairing(p: Poly, q: Poly, moments) -> Fraction:
    r = p * q
    return sum((c * moments(k) for k, c in enumerate(r.coeffs)), Fraction(0))


def zeroth_moment(spec: FamilySpec) -> ExactReal:
    f = spec.family
    if f is Family.LAGUERRE:
        return ExactReal.gamma(spec.params[0] + 1)
    if f is Family.HERMITE:
        return ExactReal(sqrt_pi_pow=1)
    if f is Family.GEGENBAUER:
        lam = spec.params[0]
        return ExactReal(sqrt_pi_pow=1) * ExactReal.gamma(lam + HALF) / ExactReal.gamma(lam + 1)
    if f is Family.LEGENDRE:
        return ExactReal.of(2)
    a, b = spec.params
    return ExactReal.two_power(a + b + 1) * ExactReal.gamma(a + 1) * ExactReal.gamma(b + 1) / ExactReal.gamma(a + b + 2)


def check_orthogonality(spec: FamilySpec, nmax: int, moments, shift=None):
    polys = [polynomial(spec, n) for n in range(nmax + 1)]
    if shift is not None:
        polys = [p.compose(shift) for p in polys]
    m0 = zeroth_moment(spec)
    for n, p in enumerate(polys):
        for m in range(n):
            assert pairing(polys[m], p, moments) == 0
        ratio = norm_squared_exact(spec, n) / m0
        assert ratio.is_rational
        assert pairing(p, p, moments) == ratio.rational


class TestOrthogonality:
    @given(alphas)
    def test_laguerre(self, alpha):
        check_orthogonality(FamilySpec.laguerre(alpha), 7, laguerre_moments(alpha))

    def test_hermite(self):
        check_orthogonality(FamilySpec.hermite(), 10, hermite_moments)

    @given(lambdas)
    def test_gegenbauer(self, lam):
        check_orthogonality(FamilySpec.gegenbauer(lam), 7, gegenbauer_moments(lam))

    def test_legendre(self):
        check_orthogonality(FamilySpec(Family.LEGENDRE), 8, legendre_moments)

    @given(alphas, alphas)
    def test_jacobi(self, a, b):
        # write p(x) as a polynomial in y = 1 + x
        check_orthogonality(FamilySpec.jacobi(a, b), 5, jacobi_moments_in_shifted_variable(a, b), X - 1)

    def test_chebyshev_t(self):
        moments = gegenbauer_moments(Fraction(0))
        for n in range(8):
            for m in range(n):
                assert pairing(chebyshev_t(m), chebyshev_t(n), moments) == 0
            # m_0 = pi
            expected = norm_squared_exact(FamilySpec(Family.CHEBYSHEV_T), n) / ExactReal(sqrt_pi_pow=2)
            assert pairing(chebyshev_t(n), chebyshev_t(n), moments) == expected.rational

    def test_chebyshev_u(self):
        moments = gegenbauer_moments(Fraction(1))
        spec = FamilySpec(Family.CHEBYSHEV_U)
        m0 = zeroth_moment(FamilySpec.gegenbauer(1))
        for n in range(8):
            assert pairing(chebyshev_u(n), chebyshev_u(n), moments) == (norm_squared_exact(spec, n) / m0).rational


class TestKnownMembers:
    def test_low_degree_laguerre(self):
        assert laguerre(1, 1) == Poly([2, -1])
        assert laguerre(2, 1) == Poly([3, -3, HALF])
        assert laguerre(3, 0) == Poly([1, -3, Fraction(3, 2), Fraction(-1, 6)])

    def test_low_degree_hermite(self):
        assert hermite(3) == Poly([0, -12, 0, 8])
        assert hermite(4) == Poly([12, 0, -48, 0, 16])

    def test_legendre_is_gegenbauer_half(self):
        for n in range(10):
            assert legendre(n) == gegenbauer(n, HALF)
            assert legendre(n) == jacobi(n, 0, 0)

    def test_chebyshev_u_is_gegenbauer_one(self):
        for n in range(10):
            assert chebyshev_u(n) == gegenbauer(n, 1)

    def test_chebyshev_t_is_cosine(self):
        with mp.workdps(30):
            for n in range(12):
                for t in (mpmath.mpf("0.3"), mpmath.mpf("1.1")):
                    v = chebyshev_t(n).eval_mp(mp.cos(t), 25).value
                    assert abs(v - mp.cos(n * t)) < mpmath.mpf(10) ** -22

    def test_gegenbauer_leading_coefficient(self):
        lam = Fraction(3, 4)
        for n in range(8):
            assert leading_coefficient(FamilySpec.gegenbauer(lam), n) == 2**n * pochhammer(lam, n) / math.factorial(n)

    def test_helpers(self):
        assert pochhammer(HALF, 3) == Fraction(15, 8)
        assert gen_binomial(Fraction(5, 2), 2) == Fraction(15, 8)
        assert gen_binomial(3, -1) == 0


class TestIdentities:
    @pytest.mark.parametrize("alpha", [Fraction(-1, 2), Fraction(0), Fraction(1), Fraction(7, 3)])
    def test_laguerre_derivative(self, alpha):
        for n in range(1, 31):
            assert laguerre(n, alpha).derivative() == -laguerre(n - 1, alpha + 1)

    def test_hermite_polynomial_recurrence(self):
        for n in range(1, 40):
            assert hermite(n + 1) == 2 * X * hermite(n) - hermite(n - 1).scale(2 * n)

    def test_hermite_derivative(self):
        for n in range(1, 40):
            assert hermite(n).derivative() == hermite(n - 1).scale(2 * n)

    @pytest.mark.parametrize("alpha", [Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(1, 3)])
    def test_carlitz_product(self, alpha):
        for n in range(1, 9):
            left, right = carlitz_product(n, alpha)
            assert left == right

    def test_carlitz_domain(self):
        with pytest.raises(DomainError):
            carlitz_product(0, 0)


class TestRecurrence:
    @pytest.mark.parametrize(
        "spec",
        [
            FamilySpec.laguerre(Fraction(-1, 2)),
            FamilySpec.laguerre(2),
            FamilySpec.hermite(),
            FamilySpec.gegenbauer(Fraction(3, 2)),
            FamilySpec.jacobi(Fraction(1, 2), Fraction(-1, 3)),
            FamilySpec(Family.LEGENDRE),
            FamilySpec(Family.CHEBYSHEV_T),
            FamilySpec(Family.CHEBYSHEV_U),
        ],
        ids=str,
    )
    def test_recurrence_matches_explicit_sums(self, spec):
        x = Fraction(3, 7)
        vals = recurrence_values(spec, 25, x)
        assert vals == [polynomial(spec, n)(x) for n in range(26)]

    @given(points)
    def test_hermite_recurrence_values(self, x):
        vals = recurrence_values(FamilySpec.hermite(), 40, x)
        assert vals == [hermite(n)(x) for n in range(41)]

    def test_floating_recurrence_agrees(self):
        spec = FamilySpec.laguerre(Fraction(1, 3))
        exact = recurrence_values(spec, 60, Fraction(5, 4))
        approx = recurrence_values(spec, 60, Fraction(5, 4), 40)
        with mp.workdps(60):
            for q, v in zip(exact, approx):
                assert abs(v - mpmath.mpf(q.numerator) / q.denominator) <= abs(v) * mpmath.mpf(10) ** -38 + mpmath.mpf(10) ** -50

    def test_accepts_realmp_points(self):
        x = RealMP.from_fraction(Fraction(1, 2), 30)
        v = recurrence_values(FamilySpec.hermite(), 3, x, 30)[3]
        assert abs(v - (8 * mpmath.mpf(1) / 8 - 6)) < mpmath.mpf(10) ** -28


class TestNorms:
    def test_laguerre_norm_is_rational_for_integer_alpha(self):
        assert norm_squared(FamilySpec.laguerre(2), 3, 30) == Fraction(math.factorial(5), math.factorial(3))

    def test_half_integer_alpha_gives_sqrt_pi(self):
        val = norm_squared_exact(FamilySpec.laguerre(Fraction(-1, 2)), 2)
        # Γ(5/2)/2! = 3 sqrt(pi) / 8
        assert val == ExactReal(Fraction(3, 8), sqrt_pi_pow=1)

    def test_irrational_norm_evaluates(self):
        v = norm_squared(FamilySpec.laguerre(Fraction(1, 3)), 0, 30)
        assert isinstance(v, RealMP)
        with mp.workdps(40):
            assert abs(v.value - mp.gamma(mpmath.mpf(4) / 3)) < mpmath.mpf(10) ** -28


class TestDomain:
    @pytest.mark.parametrize("alpha", [-1, Fraction(-3, 2), -2])
    def test_alpha_must_exceed_minus_one(self, alpha):
        with pytest.raises(DomainError) as info:
            FamilySpec.laguerre(alpha)
        assert info.value.parameter == "alpha"

    @pytest.mark.parametrize("lam", [0, Fraction(-1, 2), -1])
    def test_lambda_domain(self, lam):
        with pytest.raises(DomainError) as info:
            FamilySpec.gegenbauer(lam)
        assert info.value.parameter == "lambda"

    def test_negative_degree(self):
        with pytest.raises(DomainError):
            laguerre(-1, 0)

    def test_labels(self):
        assert str(FamilySpec.laguerre("-1/2")) == "laguerre(alpha=-1/2)"
        assert str(FamilySpec.hermite()) == "hermite"
        assert FamilySpec.gegenbauer(1).param_label == "lambda=1"
