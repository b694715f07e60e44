"""Truncated quadrature approximations ``C_{d,n}[f]`` and their measured L1 error."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import quadrature
from .bounds import BoundParams, BoundResult, error_bound_majidian, error_bound_xiang
from .coefficients import quadrature_coefficients
from .core import ChebSeries
from .errors import ChebDecayError, PreconditionError
from .funcspec import FunctionSpec


def build_approximation(spec: FunctionSpec, d: int, n: int) -> ChebSeries:
    """Degree-``d`` series with coefficients ``c_{j,n}`` from ``n`` Chebyshev points."""
    if not 0 <= d < 2 * n:
        raise PreconditionError(f"approximation needs 0 <= d < 2n = {2 * n}, got d={d}, n={n}")
    table = quadrature_coefficients(spec, n, d)
    return ChebSeries(spec.interval, table.values)


def l1_error(spec: FunctionSpec, series: ChebSeries, tol: float = quadrature.DEFAULT_TOL) -> float:
    """``int_a^b |f(x) - series(x)| dx`` by adaptive quadrature split at the breakpoints.

    The error curve of a degree-``d`` approximation has about ``d`` kinks, so
    the integration starts from ``d + 1`` panels per piece.
    """
    if series.interval != spec.interval:
        raise PreconditionError(f"series lives on {series.interval}, function on {spec.interval}")
    iv = spec.interval
    panels = max(1, (series.degree + 1) // max(1, len(spec.pieces)))
    res = quadrature.integrate(
        lambda x: np.abs(spec(x) - series(x)),
        iv.a,
        iv.b,
        breakpoints=spec.breakpoints,
        tol=tol,
        initial_panels=panels,
    )
    return max(res.value, 0.0)


@dataclass
class ApproximationRun:
    """A built approximation together with its measured error and attached bounds."""

    spec: FunctionSpec
    d: int
    n: int
    series: ChebSeries
    measured_l1: float | None = None
    bounds: list[BoundResult] = field(default_factory=list)

    def __post_init__(self):
        if not self.d < 2 * self.n or self.series.degree != self.d:
            raise PreconditionError("run needs d < 2n and a series of degree d")

    @property
    def certified(self) -> bool | None:
        """Whether the measured error respects every attached bound."""
        if self.measured_l1 is None or not self.bounds:
            return None
        return self.measured_l1 <= min(b.value for b in self.bounds)


def run_approximation(
    spec: FunctionSpec,
    d: int,
    n: int,
    *,
    weighted: BoundParams | None = None,
    bv: BoundParams | None = None,
    tol: float = quadrature.DEFAULT_TOL,
) -> ApproximationRun:
    """Build ``C_{d,n}[f]``, measure its L1 error and attach the requested bounds."""
    series = build_approximation(spec, d, n)
    bounds = []
    if weighted is not None:
        bounds.append(error_bound_majidian(weighted, d, n))
    if bv is not None:
        bounds.append(error_bound_xiang(bv, d, n))
    return ApproximationRun(spec, d, n, series, l1_error(spec, series, tol), bounds)


@dataclass(frozen=True)
class ComparisonRow:
    d: int
    n: int
    measured_l1: float = math.nan
    bound_weighted: float = math.nan
    bound_bv: float = math.nan
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def comparison_table(
    spec: FunctionSpec | None,
    weighted: BoundParams | None,
    bv: BoundParams | None,
    pairs: Iterable[tuple[int, int]],
    *,
    measure: bool = True,
    tol: float = quadrature.DEFAULT_TOL,
) -> list[ComparisonRow]:
    """One row per ``(d, n)``: measured L1 error and both certified bounds.

    ``bound_weighted`` is the Chebyshev-weighted bound (:func:`error_bound_majidian`),
    ``bound_bv`` the total-variation bound (:func:`error_bound_xiang`).  A
    pair that fails (inadmissible parameters, evaluation fault) yields a row
    with ``error`` set; the remaining rows are still computed.  With
    ``measure=False`` or ``spec=None`` only the bounds are filled in.
    """
    rows = []
    for d, n in pairs:
        try:
            b_weighted = error_bound_majidian(weighted, d, n).value if weighted is not None else math.nan
            b_bv = error_bound_xiang(bv, d, n).value if bv is not None else math.nan
            measured = math.nan
            if measure and spec is not None:
                measured = l1_error(spec, build_approximation(spec, d, n), tol)
        except (ChebDecayError, ArithmeticError) as exc:
            rows.append(ComparisonRow(d, n, error=f"{type(exc).__name__}: {exc}"))
            continue
        rows.append(ComparisonRow(d, n, measured, b_weighted, b_bv))
    return rows
