# ruff: noqa: E402
""" Overview
============
`(1 minute read)`

``betahalton`` generates van der Corput and Halton sequences whose digits
come from a numeration system built on a linear recurrence

.. math::

   G_{n+d} = a_0 G_{n+d-1} + \\dots + a_{d-1} G_n

rather than the powers of an integer base. The recurrence is given by its
coefficient vector, for example ``(1, 1)`` for the Fibonacci numbers. Each
integer is written greedily in the basis ``G_n`` and its digits are
reflected at the radix point with the dominant root ``beta`` of the
recurrence as the base.

Numeration systems
------------------

A system is built from its coefficients. Only some shapes of coefficient
vector map the integers densely into [0, 1), ``classify_coefficients``
reports which one applies:
"""

import betahalton as bh

fib = bh.NumerationSystem((1, 1))

print(fib.G[:10])
print(fib.beta)
print(bh.classify_coefficients((1, 0, 1, 1)).describe())

# %%
# Integers are written in the system with ``greedy_expansion``. The digits are
# little endian, ``digits[0]`` multiplies ``G_0``.

digits = bh.greedy_expansion(12, fib)
print(digits.digits, bh.expansion_value(digits, fib))

# %%
# Sequences
# ---------
#
# ``vdc_point`` gives a single point, ``generate_point_set`` a block of a
# Halton sequence with one numeration system per coordinate.

print([bh.vdc_point(n, fib) for n in range(1, 6)])

cfg = bh.make_halton_config([fib, bh.NumerationSystem((2,))])
point_set = bh.generate_point_set(cfg, 1024)

# %%
# The exact star discrepancy measures how evenly the points fill the unit square.

report = bh.star_discrepancy(point_set)
print(report.method, report.d_star)

# %%
# and bounds the error of quasi Monte Carlo integration:

result = bh.qmc_integrate("product", point_set, d_star=report.d_star)
print(result.to_record())

# %%
# Measure transport
# -----------------
#
# The digit successor map (odometer) carries a natural measure to Lebesgue
# measure on [0, 1). ``verify_transport`` checks this on every cylinder up to a
# given depth:

print(bh.verify_transport(bh.NumerationSystem((1, 0, 1)), depth=6).to_record())

# %%
# The same operations are available on the command line:
#
# .. code-block:: sh
#
#    betahalton gen --coeffs 1,1 --coeffs 2 --count 1024 --header > points.csv
#    betahalton discrepancy --input points.csv
#    betahalton verify-measure --coeffs 1,0,1 --depth 8
#
# Next, visit :ref:`get-started` to install ``betahalton``.
