"""
Variation functionals and coefficient decay bounds
==================================================

Two ways of measuring the roughness of ``f^(k)`` lead to two decay bounds
for ``|c_j|``.  The Chebyshev-weighted variation integrates
``|f^(k+1)(x(theta))|`` over the angle ``theta``; the total variation
integrates ``|f^(k+1)(x)|`` over ``x``.  Jumps of ``f^(k)`` add point masses
to both.
"""
from __future__ import annotations

import math

import chebdecay as cd

g = cd.builtin_example("example51")

#%%
# Both functionals for ``g'``.  The jump of size 1 at the middle of the
# interval has weight 1 in either sense.
weighted = cd.cheb_weighted_variation(g, 1)
plain = cd.total_variation(g, 1)
for r in (weighted, plain):
    print(f"{r.kind:16s} smooth {r.smooth_part:.10f} + jumps {r.jump_total:.3f} = {r.total:.10f}")
print("closed forms:", 1 + 2 * math.pi / math.sqrt(3), 25 / 9)

#%%
# Each bound refuses a variation computed by the other functional, so the
# two cannot be mixed up by accident.
pw = cd.BoundParams.from_report(g.interval, weighted)
pt = cd.BoundParams.from_report(g.interval, plain)
try:
    cd.decay_bound_smooth(pt, 4)
except cd.PreconditionError as exc:
    print("refused:", exc)

#%%
# Reference coefficients against both bounds.  The total-variation bound
# is the sharper one here at every index.
ref = cd.reference_coefficients(g, 30)
print(f"{'j':>3} {'|c_j|':>11} {'bv bound':>11} {'weighted':>11}")
for j in (2, 3, 5, 10, 20, 30):
    b_bv = cd.decay_bound_bv(pt, j).value
    b_w = cd.decay_bound_smooth(pw, j).value
    print(f"{j:3d} {abs(ref[j]):11.3e} {b_bv:11.3e} {b_w:11.3e}")

#%%
# The coefficients can also be rebuilt from those of ``g'``.  This is the
# integration-by-parts identity behind the decay bounds.
d1 = cd.derivative_coefficients(g, 1, 12)
for j in (2, 5, 10):
    print(f"c_{j}: direct {ref[j]:+.12f}, from g' {cd.reconstruct_coefficient(1, j, d1, g.interval):+.12f}")
