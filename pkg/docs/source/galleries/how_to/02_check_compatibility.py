"""
.. _compat-howto:

How to choose systems for a Halton sequence
===========================================

The coordinates of a Halton sequence must come from compatible numeration
systems, otherwise the points concentrate on a lower dimensional set.
For constant coefficient systems ``(b, ..., b)`` (which include the integer
base ``b``) compatibility needs the ``b`` to be pairwise coprime.

"""

import betahalton as bh

systems = [bh.NumerationSystem((1, 1)), bh.NumerationSystem((2,)), bh.NumerationSystem((3, 3, 3))]

report = bh.compatibility_check(systems)
print(report.status)

for pair in report.pairs:
    print(pair.i, pair.j, pair.coprime, pair.status)

# %%
# ``(2,)`` and ``(2, 2)`` share ``b = 2`` and fail:

print(bh.compatibility_check([bh.NumerationSystem((2,)), bh.NumerationSystem((2, 2))]).status)

# %%
# ``make_halton_config`` attaches the report to the config, and configs read
# with ``parse_config`` refuse a failing set. Systems with other coefficient
# shapes are accepted with a warning, as the check does not cover them.

cfg = bh.make_halton_config([bh.NumerationSystem((1, 0, 1)), bh.NumerationSystem((2,))])
print(cfg.describe())
