"""
Describing a function and computing its Chebyshev coefficients
==============================================================

A piecewise-smooth function is written as text: an interval, a list of
pieces and the regularity order ``k``.  The order says that ``f`` and its
first ``k-1`` derivatives are absolutely continuous; ``f^(k)`` may jump.
"""
from __future__ import annotations

import numpy as np

import chebdecay as cd

#%%
# The running example is ``g(t) = |t| / (t + 2)`` on ``[-1, 1]``.  Its
# derivative jumps at 0, so ``k = 1``.  The kink has to be declared as a
# breakpoint; ``abs`` is then resolved on each side.
g = cd.parse("on [-1,1]: piece [-1,0): abs(t)/(t+2); piece [0,1]: abs(t)/(t+2); k=1")
print(g)
print("breakpoints:", g.breakpoints)
print("g(-0.5), g(0.5) =", g(-0.5), g(0.5))

#%%
# The same function ships as a built-in example.
assert str(cd.builtin_example("example51")(0.25)) == str(g(0.25))

#%%
# Symbolic derivatives are exact per piece.  The derivative one order
# above ``k`` is a weak derivative: a piecewise function plus point masses
# at the jumps of ``g'``.
d2 = cd.derivative(g, 2)
x = np.array([-0.5, 0.5])
print("g''(x)        :", d2.spec(x))
print("+-4/(x+2)^3   :", -np.sign(x) * 4 / (x + 2) ** 3)
for jump in d2.jumps:
    print(f"g' jumps by {jump.size:+.3f} at x = {jump.x}")

#%%
# Coefficients from ``n`` Chebyshev points converge to the reference
# coefficients (computed by refining until stable) as ``n`` grows.
ref = cd.reference_coefficients(g, 12)
print(f"reference table: stabilised to {ref.delta:.1e} with {ref.nodes} nodes")
for n in (16, 64, 256):
    q = cd.quadrature_coefficients(g, n, 12)
    print(f"n = {n:4d}: max |c_(j,n) - c_j| = {np.max(np.abs(q.values - ref.values)):.2e}")

#%%
# A truncated series evaluates with the Clenshaw recurrence.  The
# leading coefficient is halved at evaluation time.
series = cd.ChebSeries(g.interval, ref.values)
x = np.linspace(-1, 1, 5)
print(np.column_stack([x, g(x), series(x)]))
