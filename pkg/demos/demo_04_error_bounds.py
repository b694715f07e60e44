"""
Certified L1 error of truncated quadrature series
================================================

``C_(d,n)[f]`` keeps the first ``d + 1`` discrete coefficients computed from
``n`` Chebyshev points.  Its L1 error is bounded by a tail of the decay
bounds.  Here we compare the bounds with the measured error.
"""
from __future__ import annotations

import chebdecay as cd

g = cd.builtin_example("example51")
pw = cd.BoundParams.from_report(g.interval, cd.cheb_weighted_variation(g, 1))
pt = cd.BoundParams.from_report(g.interval, cd.total_variation(g, 1))

#%%
# Degrees ``d = 200 - l`` for ``l = 2, 4, ..., 128`` at ``n = 200``.  For
# ``k = 1`` on ``[-1, 1]`` both bounds share all structure except the
# variation value, so their ratio is constant.
rows = cd.comparison_table(g, pw, pt, [(200 - 2**i, 200) for i in range(1, 8)])
print(f"{'d':>4} {'measured':>11} {'bv bound':>11} {'weighted':>11} {'ratio':>8}")
for r in rows:
    print(f"{r.d:4d} {r.measured_l1:11.3e} {r.bound_bv:11.3e} {r.bound_weighted:11.3e} {r.bound_bv / r.bound_weighted:8.5f}")

#%%
# Past ``d = n`` the bound grows again because the aliased coefficients
# are no longer offset by truncation.  ``d = n - l - 1`` and ``d = n + l``
# differ by exactly the factor 2/3.
for l in (0, 5, 50):
    lo = cd.error_bound_majidian(pw, 200 - l - 1, 200).value
    hi = cd.error_bound_majidian(pw, 200 + l, 200).value
    print(f"l = {l:2d}: {lo:.6e} vs 2/3 * {hi:.6e} = {2 * hi / 3:.6e}")

#%%
# Inadmissible pairs become error rows; the rest of the table is kept.
for r in cd.comparison_table(g, pw, pt, [(9, 10), (19, 10)]):
    print(r.d, r.n, "ok" if r.ok else r.error)

#%%
# A single run carries its bounds and reports whether they hold.
run = cd.run_approximation(g, 30, 50, weighted=pw, bv=pt)
print(f"d=30, n=50: measured {run.measured_l1:.3e}, certified: {run.certified}")
