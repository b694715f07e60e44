"""Variation functionals of ``f^(k)``, including weak-derivative jump terms.

Two functionals are provided:

* the Chebyshev-weighted variation
  ``||f^(k)||_T = int_0^pi |f^(k+1)(G(cos theta))| dtheta``, and
* the plain total variation ``Var(f^(k)) = int_a^b |f^(k+1)(x)| dx + sum |J_i|``.

A jump ``J_i`` of ``f^(k)`` at ``x_i`` is a Dirac mass in the weak
derivative.  Under ``x = G(cos theta)`` it contributes
``|J_i| / |dx/dtheta| = 2 |J_i| / ((b - a) sqrt(1 - t_i^2))`` to the weighted
functional, with ``t_i`` the reference coordinate of ``x_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import quadrature
from .core import map_interval, map_reference
from .errors import DivergenceError, EvaluationError
from .funcspec import FunctionSpec, derivative

Kind = Literal["cheb_weighted", "total_variation"]


@dataclass(frozen=True)
class VariationReport:
    """A variation value split into its smooth-integral and jump parts.

    ``total`` is computed as ``smooth_part + sum(contributions)``.
    """

    kind: Kind
    k: int
    smooth_part: float
    jump_parts: tuple[tuple[float, float], ...] = ()
    total: float = field(init=False)

    def __post_init__(self):
        parts = [self.smooth_part, *(c for _, c in self.jump_parts)]
        if not all(math.isfinite(p) and p >= 0.0 for p in parts):
            raise DivergenceError(f"variation parts must be finite and nonnegative, got {parts}")
        object.__setattr__(self, "total", self.smooth_part + sum(c for _, c in self.jump_parts))

    @property
    def jump_total(self) -> float:
        return sum(c for _, c in self.jump_parts)


def _weak_derivative(spec: FunctionSpec, k: int):
    """``f^(k+1)`` with its jump table; a one-sided value that cannot be
    evaluated at a breakpoint means ``f^(k)`` is unbounded there."""
    try:
        return derivative(spec, k + 1)
    except EvaluationError as exc:
        raise DivergenceError(f"f^({k}) has no finite one-sided limit at a breakpoint: {exc}") from exc


SIGN_SAMPLES = 1025


def _sign_changes(g, cuts: list[float], samples: int = SIGN_SAMPLES) -> list[float]:
    """Zeros of ``g`` where it changes sign, located to rounding by bisection.

    ``|g|`` has a kink at each such zero. Adaptive error estimates cannot see
    a kink that falls between the last node of a panel and its end, so the
    zeros are handed to the integrator as breakpoints. ``cuts`` lists the
    sub-interval ends; samples stay just inside them so each one-sided
    branch is used. An integrand that cannot be sampled yields no extra cuts
    and is left to the integrator's own divergence checks.
    """
    lo_all, hi_all = [], []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        w = hi - lo
        u = lo + w * np.linspace(0.0, 1.0, samples)
        u[0], u[-1] = lo + 1e-13 * w, hi - 1e-13 * w
        try:
            with np.errstate(all="ignore"):
                v = np.asarray(g(u), dtype=float)
        except EvaluationError:
            continue
        sign = np.sign(np.where(np.isfinite(v), v, 0.0))
        idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
        lo_all.extend(u[idx])
        hi_all.extend(u[idx + 1])
    if not lo_all:
        return []
    a, b = np.array(lo_all), np.array(hi_all)
    with np.errstate(all="ignore"):
        sa = np.sign(g(a))
        for _ in range(100):
            m = 0.5 * (a + b)
            if not np.any((m > a) & (m < b)):
                break
            same = np.sign(g(m)) == sa
            a = np.where(same, m, a)
            b = np.where(same, b, m)
    return [float(x) for x in 0.5 * (a + b)]


def cheb_weighted_variation(spec: FunctionSpec, k: int, tol: float = quadrature.DEFAULT_TOL) -> VariationReport:
    """Chebyshev-weighted variation ``||f^(k)||_T`` with jump contributions.

    Raises
    ------
    UnsupportedOrderError
        If ``k > spec.k`` (``f^(k+1)`` is then not available).
    DivergenceError
        If the smooth integral diverges or a jump sits at ``t = +-1``.
    """
    d = _weak_derivative(spec, k)
    iv = spec.interval
    fk1 = d.spec

    def integrand(theta):
        return np.abs(fk1(map_interval(iv, np.cos(theta))))

    cuts = sorted(math.acos(map_reference(iv, x)) for x in spec.breakpoints)
    cuts += _sign_changes(lambda th: fk1(map_interval(iv, np.cos(th))), [0.0, *cuts, math.pi])
    smooth = quadrature.integrate(integrand, 0.0, math.pi, breakpoints=sorted(cuts), tol=tol).value

    parts = []
    for jump in d.jumps:
        t = map_reference(iv, jump.x)
        s = 1.0 - t * t
        if s <= 0.0:
            if jump.size != 0.0:
                raise DivergenceError(f"jump of size {jump.size:g} at the endpoint x={jump.x!r} has infinite weight")
            parts.append((jump.x, 0.0))
            continue
        parts.append((jump.x, 2.0 * abs(jump.size) / (iv.width * math.sqrt(s))))
    return VariationReport("cheb_weighted", k, smooth, tuple(parts))


def total_variation(spec: FunctionSpec, k: int, tol: float = quadrature.DEFAULT_TOL) -> VariationReport:
    """Total variation ``Var(f^(k))``: integral of ``|f^(k+1)|`` plus jump magnitudes."""
    d = _weak_derivative(spec, k)
    iv = spec.interval
    fk1 = d.spec
    cuts = sorted(spec.breakpoints)
    cuts += _sign_changes(fk1, [iv.a, *cuts, iv.b])
    smooth = quadrature.integrate(
        lambda x: np.abs(fk1(x)), iv.a, iv.b, breakpoints=sorted(cuts), tol=tol
    ).value
    parts = tuple((j.x, abs(j.size)) for j in d.jumps)
    return VariationReport("total_variation", k, smooth, parts)
