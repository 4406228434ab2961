"""
Partial sums at the jump itself
===============================

Every truncation of the Laguerre step expansion takes some value at x = 1,
and the table below suggests it tends to one half.  Two independent routes
give the same digits: the direct sum of the series, and a rewrite through a
product formula for Laguerre polynomials.
"""

from gibbspoly import conjecture_at_1, triple_sum_limit, triple_sum_partial

###############################################################################
# Direct sums for alpha = 0, 1, 2.

for alpha in (0, 1, 2):
    for n in (100, 1000):
        v = conjecture_at_1(alpha, n, 20)
        print(f"alpha={alpha}  n={n:5d}  {v.value_at_1.format(15)}")

###############################################################################
# The product-formula route agrees well past the printed digits.

a = conjecture_at_1(2, 100, 40, via="direct_sum").value_at_1
b = conjecture_at_1(2, 100, 40, via="carlitz").value_at_1
print("difference of the two routes:", (a - b).format(3))

###############################################################################
# For alpha = 0 the value at 1 is (1 - T_n)/e where T_n is a partial sum of a
# triple binomial sum.  A limit of one half would force T_n -> 1 - e/2.

limit = triple_sum_limit(20)
for J in (10, 100, 400, 1000):
    t = triple_sum_partial(J, 20)
    print(f"J={J:4d}  T_J={t.format(12)}  gap={abs(t - limit).format(3)}")

###############################################################################
# The approach is not monotone: the value at 1 drifts back and forth around
# one half as n grows (n = 400 lands further away than n = 100), while the
# gap at n = 1000 is the smallest of the four.
