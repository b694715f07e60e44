"""Chebyshev coefficients by Gauss-Chebyshev quadrature, reference coefficients and aliasing.

The quadrature coefficients are

    c_{k,n} = (2/n) sum_{l=1}^{n} f(G(t_l)) T_k(t_l),   t_l = cos((2l-1) pi / (2n)),

which reproduce the exact coefficients for integrands of total degree up to
``2n - 1`` and otherwise absorb the coefficients at indices ``2jn +- k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .core import chebyshev_angles, map_interval, Interval
from .errors import ConvergenceError, PreconditionError
from .funcspec import FunctionSpec, derivative

DEFAULT_TOL = 1e-10
DEFAULT_JMAX = 64
MAX_DOUBLINGS = 20

# Gauss-Legendre order of each panel of the split reference rule
_PANEL_POINTS = 20
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_PANEL_POINTS)

# bound on the size of one block of cosine evaluations
_BLOCK = 1 << 22


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """Coefficients ``c_0 .. c_J`` of a function on ``interval``.

    Attributes
    ----------
    n_quadrature : int
        Number of Gauss-Chebyshev nodes, or 0 for reference coefficients.
    values : ndarray
        The coefficients (unhalved), read-only.
    tolerance : float or None
        Requested stabilisation tolerance (reference mode only).
    delta : float or None
        Largest change in the last refinement step (reference mode only).
    nodes : int
        Function evaluations behind the final table.
    """

    interval: Interval
    n_quadrature: int
    values: NDArray[np.float64] = field(repr=False)
    tolerance: float | None = None
    delta: float | None = None
    nodes: int = 0

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.n_quadrature > 0 and v.size > 2 * self.n_quadrature:
            raise PreconditionError(
                f"quadrature table with n={self.n_quadrature} may hold at most {2 * self.n_quadrature} entries"
            )

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, j):
        return self.values[j]

    @property
    def j_max(self) -> int:
        return self.values.size - 1


def _weighted_cosine_sums(fvals, theta, weights, k_max: int) -> NDArray[np.float64]:
    """``fsum_l w_l f_l cos(k theta_l)`` for ``k = 0..k_max`` with compensated summation."""
    wf = weights * fvals
    out = np.empty(k_max + 1)
    rows = max(1, _BLOCK // max(theta.size, 1))
    for k0 in range(0, k_max + 1, rows):
        ks = np.arange(k0, min(k0 + rows, k_max + 1))
        block = np.cos(np.multiply.outer(ks, theta)) * wf
        for i, k in enumerate(ks):
            out[k] = math.fsum(block[i])
    return out


def quadrature_coefficients(spec: FunctionSpec, n: int, k_max: int) -> CoefficientTable:
    """Approximate coefficients ``c_{k,n}`` for ``k = 0..k_max`` from ``n`` Chebyshev points.

    Raises
    ------
    PreconditionError
        If ``n < 1`` or ``k_max >= 2n`` (outside the range where the
        aliasing identity holds).
    """
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    if not 0 <= k_max < 2 * n:
        raise PreconditionError(f"k_max must satisfy 0 <= k_max < 2n = {2 * n}, got {k_max}")
    theta = chebyshev_angles(n)
    x = map_interval(spec.interval, np.cos(theta))
    fvals = spec(x)
    sums = _weighted_cosine_sums(fvals, theta, np.ones_like(theta), k_max)
    return CoefficientTable(spec.interval, n, (2.0 / n) * sums, nodes=n)


def _split_theta_coefficients(spec: FunctionSpec, panels: int, j_max: int) -> NDArray[np.float64]:
    """Composite Gauss-Legendre rule in theta, split at the breakpoint angles."""
    iv = spec.interval
    cuts = [math.acos((2.0 * x - iv.a - iv.b) / iv.width) for x in spec.breakpoints]
    edges = np.array(sorted({0.0, math.pi, *cuts}))
    thetas, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        grid = np.linspace(lo, hi, panels + 1)
        half = 0.5 * np.diff(grid)
        mid = 0.5 * (grid[1:] + grid[:-1])
        thetas.append((mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel())
        weights.append((half[:, None] * _GL_WEIGHTS[None, :]).ravel())
    theta = np.concatenate(thetas)
    w = np.concatenate(weights)
    fvals = spec(map_interval(iv, np.cos(theta)))
    return (2.0 / math.pi) * _weighted_cosine_sums(fvals, theta, w, j_max), theta.size


def reference_coefficients(spec: FunctionSpec, j_max: int = DEFAULT_JMAX, tol: float = DEFAULT_TOL) -> CoefficientTable:
    """High-accuracy coefficients ``c_0 .. c_{j_max}`` by refinement until stabilised.

    Without breakpoints the Gauss-Chebyshev rule is doubled from
    ``n = max(64, 2 j_max)``.  With breakpoints the integral over theta is
    split at the breakpoint angles and integrated with composite
    Gauss-Legendre panels whose count is doubled instead, since a jump in
    ``f`` would otherwise stall the Gauss-Chebyshev refinement at ``O(1/n)``.

    Raises
    ------
    ConvergenceError
        If the largest change still exceeds ``tol`` after 20 doublings.
    """
    if not tol > 0:
        raise PreconditionError(f"tol must be positive, got {tol}")
    if j_max < 0:
        raise PreconditionError(f"j_max must be nonnegative, got {j_max}")

    if spec.breakpoints:
        size = max(2, math.ceil((j_max + 1) / 4))

        def compute(m):
            return _split_theta_coefficients(spec, m, j_max)

    else:
        size = max(64, 2 * j_max)

        def compute(m):
            table = quadrature_coefficients(spec, m, j_max)
            return table.values, m

    prev, _ = compute(size)
    delta = math.inf
    for _ in range(MAX_DOUBLINGS):
        size *= 2
        cur, used = compute(size)
        delta = float(np.max(np.abs(cur - prev)))
        if delta <= tol:
            return CoefficientTable(spec.interval, 0, cur, tolerance=tol, delta=delta, nodes=used)
        prev = cur
    raise ConvergenceError(f"reference coefficients did not stabilise to {tol:g} after {MAX_DOUBLINGS} doublings", delta)


def derivative_coefficients(
    spec: FunctionSpec, r: int, j_max: int = DEFAULT_JMAX, tol: float = DEFAULT_TOL
) -> CoefficientTable:
    """Reference coefficients of ``f^(r)`` on the same interval (``r <= k``)."""
    if r > spec.k:
        raise PreconditionError(f"derivative coefficients need r <= k={spec.k}, got r={r}")
    return reference_coefficients(derivative(spec, r).spec, j_max, tol)


def aliasing_residual(reference: CoefficientTable, k: int, n: int, terms: int) -> float:
    """``sum_{j=1}^{terms} (-1)^j (c_{2jn-k} + c_{2jn+k})`` from a reference table.

    With all terms this equals ``c_{k,n} - c_k``; truncation leaves the
    alternating tail beyond ``terms``.
    """
    if n < 1 or terms < 1:
        raise PreconditionError("n and terms must be positive")
    if not 0 <= k < 2 * n:
        raise PreconditionError(f"k must satisfy 0 <= k < 2n = {2 * n}, got {k}")
    need = 2 * terms * n + k
    if need > reference.j_max:
        raise PreconditionError(f"reference table holds c_0..c_{reference.j_max}; c_{need} is required")
    c = reference.values
    terms_ = [(-1) ** j * (c[2 * j * n - k] + c[2 * j * n + k]) for j in range(1, terms + 1)]
    return math.fsum(terms_)
