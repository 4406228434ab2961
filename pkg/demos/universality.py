"""
The same constant for every family
==================================

Laguerre, Hermite and Gegenbauer expansions of a jump all overshoot by an
amount that approaches the Gibbs constant as the degree grows.
"""

from fractions import Fraction

from gibbspoly import overshoot_table
from gibbspoly.orthofam import FamilySpec

###############################################################################
# Hermite and Gegenbauer expand the sign function, whose partial sums are odd,
# so the overshoot is read off at the first positive critical point.  Their
# index N gives the odd degree 2N+1.  Laguerre expands the step at 1 and the
# overshoot is the full jump between the two flanking critical points.

runs = [
    (FamilySpec.laguerre(Fraction(-1, 2)), [25, 100, 400]),
    (FamilySpec.laguerre(0), [25, 100, 400]),
    (FamilySpec.hermite(), [12, 50, 200]),
    (FamilySpec.gegenbauer(Fraction(1, 2)), [12, 50, 200]),
]

for spec, ns in runs:
    for row in overshoot_table(spec, ns, 30, jobs=3):
        print(f"{str(spec):22s} n={row.n:4d}  overshoot={row.overshoot.format(10)}  "
              f"error={row.gamma_error.format(3)}")

###############################################################################################################################################
# Every error column shrinks as the degree grows.  The Legendre case
# (Gegenbauer with lambda = 1/2) converges much faster than the other three.
