"""
Overshoot of a Laguerre expansion near a jump
=============================================

The unit step at x = 1 is expanded in Laguerre polynomials with alpha = -1/2
and truncated at degree n.  Its first critical points on either side of the
jump are zeros of an exact rational polynomial, so they can be located to as
many digits as we care to ask for.
"""

from fractions import Fraction

from gibbspoly import cd_derivative, gibbs_constant, laguerre_overshoot
from gibbspoly.expand import JumpKind
from gibbspoly.orthofam import FamilySpec

alpha = Fraction(-1, 2)
n = 200

###############################################################################
# The derivative of the partial sum is a constant times a polynomial that
# vanishes at x = 1.  Dividing out (x - 1) exactly leaves the quotient whose
# roots are the critical points.

form = cd_derivative(FamilySpec.laguerre(alpha), JumpKind.STEP_AT_ONE, n)
print("quotient degree:", form.quotient.degree)
print("numerator vanishes at 1:", form.numerator.eval_rational(1) == 0)

###############################################################################
# Locate both critical points at 60 significant digits.  Each comes back as a
# rational enclosure whose endpoints have opposite exact signs.

row = laguerre_overshoot(alpha, n, 60)
print("x_minus =", row.x_minus.refined.format(60))
print("x_plus  =", row.x_plus.refined.format(60))
print("enclosure width:", float(row.x_plus.width))

###############################################################################
# The jump between the two critical values is close to the Gibbs constant,
# and in u = 2 sqrt(n) (sqrt(x) - 1) both points sit close to -pi and pi.

print("overshoot  =", row.overshoot.format(12))
print("gamma      =", gibbs_constant(12).format(12))
print("difference =", row.gamma_error.format(3))
print("u_minus, u_plus =", row.u_minus.format(6), row.u_plus.format(6))

###############################################################################
# The same numbers, as a table, from the shell::
#
#     gibbspoly overshoot --family laguerre --alpha -1/2 --n 200 --digits 300
