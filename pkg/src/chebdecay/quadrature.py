"""Adaptive integration by bisection with a fixed 15-point Gauss-Legendre kernel.

Every sub-interval is integrated once as a whole and once as two halves;
the difference is the local error estimate.  A sub-interval is accepted
when its estimate is below its share ``tol * width / total_width`` of the
absolute tolerance, otherwise both halves are refined.  Intervals are
processed in vectorised batches, so the integrand must accept and return
numpy arrays.

Integrable endpoint singularities are handled by repeated bisection towards
the endpoint (depth capped at ``max_depth``).  If the error left behind at
the depth cap is large the integral is declared divergent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from .errors import DivergenceError, EvaluationError

KERNEL_POINTS = 15
DEFAULT_TOL = 1e-10
MAX_DEPTH = 60
# evaluation faults first met beyond this depth are treated as singularities
SINGULAR_DEPTH = 30

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(KERNEL_POINTS)

Integrand = Callable[[NDArray[np.float64]], NDArray[np.float64]]


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    intervals: int


def _gauss(f: Integrand, lo: NDArray, hi: NDArray) -> NDArray:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pts = mid[:, None] + half[:, None] * _NODES[None, :]
    vals = np.asarray(f(pts.ravel()), dtype=np.float64).reshape(pts.shape)
    return half * (vals @ _WEIGHTS)


def integrate(
    f: Integrand,
    lo: float,
    hi: float,
    *,
    breakpoints: Sequence[float] = (),
    tol: float = DEFAULT_TOL,
    max_depth: int = MAX_DEPTH,
    initial_panels: int = 1,
) -> QuadResult:
    """Integrate ``f`` over ``[lo, hi]`` to absolute tolerance ``tol``.

    Parameters
    ----------
    f : callable
        Vectorised integrand.  It is never evaluated at ``lo``, ``hi`` or
        at any breakpoint.
    breakpoints : sequence of float
        Interior points where ``f`` may be non-smooth; the integration is
        split there a priori.
    initial_panels : int
        Number of equal panels each a-priori segment starts from.  Useful
        for oscillatory integrands with many kinks.

    Raises
    ------
    DivergenceError
        If the integrand produces non-finite values, fails to evaluate only
        after deep refinement, or the error left unresolved at
        ``max_depth`` exceeds ``1e-6 * max(1, |value|)``.
    """
    if not hi > lo:
        raise ValueError(f"integration requires lo < hi, got [{lo}, {hi}]")
    edges = sorted({lo, hi, *(x for x in breakpoints if lo < x < hi)})
    panels = max(int(initial_panels), 1)
    los, his = [], []
    for a, b in zip(edges, edges[1:]):
        grid = np.linspace(a, b, panels + 1)
        grid[0], grid[-1] = a, b
        los.append(grid[:-1])
        his.append(grid[1:])
    cur_lo = np.concatenate(los)
    cur_hi = np.concatenate(his)
    total_width = hi - lo

    value, error, unresolved = 0.0, 0.0, 0.0
    whole = _gauss(f, cur_lo, cur_hi)
    accepted = 0
    depth = 0
    while cur_lo.size:
        mid = 0.5 * (cur_lo + cur_hi)
        try:
            left = _gauss(f, cur_lo, mid)
            right = _gauss(f, mid, cur_hi)
        except EvaluationError as exc:
            if depth < SINGULAR_DEPTH:
                raise
            raise DivergenceError(f"integrand is singular near a refinement point: {exc}") from exc
        halves = left + right
        if not (np.all(np.isfinite(halves)) and np.all(np.isfinite(whole))):
            raise DivergenceError("integrand is not finite on the integration range")
        est = np.abs(whole - halves)
        ok = est <= tol * (cur_hi - cur_lo) / total_width
        if depth >= max_depth:
            unresolved += float(np.sum(est[~ok]))
            ok[:] = True
        value += float(np.sum(halves[ok]))
        error += float(np.sum(est[ok]))
        accepted += int(np.count_nonzero(ok))
        keep = ~ok
        cur_lo = np.concatenate([cur_lo[keep], mid[keep]])
        cur_hi = np.concatenate([mid[keep], cur_hi[keep]])
        whole = np.concatenate([left[keep], right[keep]])
        depth += 1
    if unresolved > 1e-6 * max(1.0, abs(value)):
        raise DivergenceError(
            f"integral did not converge within depth {max_depth}; unresolved error {unresolved:.3e}"
        )
    return QuadResult(value, error, accepted)
