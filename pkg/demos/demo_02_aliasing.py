"""
Aliasing in discrete Chebyshev coefficients
===========================================

With ``n`` Chebyshev points the discrete coefficient ``c_(k,n)`` cannot tell
``T_k`` apart from ``T_(2jn-k)`` and ``T_(2jn+k)``.  The error is an
alternating sum of those distant coefficients.
"""
from __future__ import annotations

import chebdecay as cd

#%%
# ``T_10`` sampled at 5 points: it is ``-1`` at every node, so the
# discrete constant coefficient reads ``-2`` although the true one is 0.
t10 = cd.parse("on [-1,1]: 512*t^10 - 1280*t^8 + 1120*t^6 - 400*t^4 + 50*t^2 - 1; k=3")
print("c_(0,5) of T_10:", cd.quadrature_coefficients(t10, 5, 0)[0])

#%%
# The same effect folds ``T_3`` onto index ``2n - 3``.
t3 = cd.parse("on [-1,1]: 4*t^3 - 3*t; k=3")
c = cd.quadrature_coefficients(t3, 10, 19)
print("c_(17,10) of T_3:", c[17])

#%%
# For a function with infinitely many nonzero coefficients the residual
# sum converges as more aliased terms are included.
g = cd.builtin_example("example51")
ref = cd.reference_coefficients(g, 7 * 2 * 20 + 5)
actual = cd.quadrature_coefficients(g, 20, 5)[5] - ref[5]
print(f"c_(5,20) - c_5 = {actual:+.3e}")
for terms in range(1, 8):
    r = cd.aliasing_residual(ref, 5, 20, terms)
    print(f"  {terms} aliased pairs: residual {r:+.3e}, mismatch {abs(actual - r):.1e}")
