"""Chebyshev basis, nodes, interval maps and series evaluation.

Series coefficients are stored unhalved; the leading coefficient is halved
only when a series is evaluated::

    S(x) = c_0 / 2 + sum_{j=1}^{d} c_j T_j(t),   t = (2x - a - b) / (b - a)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DomainError

# Inputs within this distance of the reference interval are clamped onto it.
CLAMP_EPS = 1e-12


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[a, b]`` with ``a < b``."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError(f"interval endpoints must be finite, got [{a}, {b}]")
        if not a < b:
            raise DomainError(f"interval requires a < b, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def half_width(self) -> float:
        return 0.5 * (self.b - self.a)

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.a - slack <= x <= self.b + slack

    def __str__(self) -> str:
        return f"[{self.a!r}, {self.b!r}]"


def _clamp_reference(t: NDArray[np.float64]) -> NDArray[np.float64]:
    if np.any(np.abs(t) > 1.0 + CLAMP_EPS) or np.any(np.isnan(t)):
        bad = t[(np.abs(t) > 1.0 + CLAMP_EPS) | np.isnan(t)][0]
        raise DomainError(f"reference variable must lie in [-1, 1], got {bad!r}")
    return np.clip(t, -1.0, 1.0)


def chebyshev_points(n: int) -> NDArray[np.float64]:
    """Roots of ``T_n``: ``t_l = cos((2l - 1) pi / (2n))`` for ``l = 1..n``.

    The points are returned in strictly decreasing order.
    """
    if n < 1:
        raise DomainError(f"number of Chebyshev points must be >= 1, got {n}")
    return np.cos(chebyshev_angles(n))


def chebyshev_angles(n: int) -> NDArray[np.float64]:
    """Angles ``theta_l = (2l - 1) pi / (2n)`` with ``cos(theta_l) = t_l``."""
    if n < 1:
        raise DomainError(f"number of Chebyshev points must be >= 1, got {n}")
    return (2.0 * np.arange(1, n + 1) - 1.0) * np.pi / (2.0 * n)


def eval_basis(j: int, t: ArrayLike) -> float | NDArray[np.float64]:
    """Evaluate ``T_j(t) = cos(j arccos t)``.

    Raises
    ------
    DomainError
        If ``j < 0`` or ``|t| > 1`` beyond the clamping slack.
    """
    if j < 0:
        raise DomainError(f"Chebyshev index must be nonnegative, got {j}")
    arr = np.asarray(t, dtype=np.float64)
    tt = _clamp_reference(np.atleast_1d(arr))
    out = np.cos(j * np.arccos(tt))
    if arr.ndim == 0:
        return float(out[0])
    return out


def basis_by_recurrence(j: int, t: ArrayLike) -> NDArray[np.float64]:
    """``T_j(t)`` via ``T_{k+1} = 2t T_k - T_{k-1}``; valid for any real ``t``."""
    t = np.asarray(t, dtype=np.float64)
    prev, cur = np.ones_like(t), t.copy()
    if j == 0:
        return prev
    for _ in range(j - 1):
        prev, cur = cur, 2.0 * t * cur - prev
    return cur


def map_interval(iv: Interval, t: ArrayLike) -> float | NDArray[np.float64]:
    """Affine map ``[-1, 1] -> [a, b]``, ``x = a + (b - a)(t + 1) / 2``."""
    arr = np.asarray(t, dtype=np.float64)
    tt = _clamp_reference(np.atleast_1d(arr))
    x = iv.a + iv.half_width * (tt + 1.0)
    x = np.clip(x, iv.a, iv.b)
    if arr.ndim == 0:
        return float(x[0])
    return x


def map_reference(iv: Interval, x: ArrayLike) -> float | NDArray[np.float64]:
    """Inverse of :func:`map_interval`, ``[a, b] -> [-1, 1]``."""
    arr = np.asarray(x, dtype=np.float64)
    xx = np.atleast_1d(arr)
    slack = CLAMP_EPS * max(1.0, abs(iv.a), abs(iv.b))
    outside = (xx < iv.a - slack) | (xx > iv.b + slack) | np.isnan(xx)
    if np.any(outside):
        raise DomainError(f"point {xx[outside][0]!r} lies outside {iv}")
    t = (2.0 * xx - (iv.a + iv.b)) / iv.width
    t = np.clip(t, -1.0, 1.0)
    if arr.ndim == 0:
        return float(t[0])
    return t


@dataclass(frozen=True, eq=False)
class ChebSeries:
    """Truncated Chebyshev series on an interval.

    Attributes
    ----------
    interval : Interval
        Domain of the series.
    coeffs : ndarray
        Unhalved coefficients ``c_0 .. c_d`` (read-only).
    """

    interval: Interval
    coeffs: NDArray[np.float64] = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.float64).ravel()
        if c.size == 0:
            raise DomainError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise DomainError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x: ArrayLike) -> float | NDArray[np.float64]:
        return eval_series(self, x)

    def __repr__(self) -> str:
        return f"ChebSeries(interval={self.interval}, degree={self.degree})"


def clenshaw(coeffs: NDArray[np.float64], t: NDArray[np.float64]) -> NDArray[np.float64]:
    """Backward recurrence for ``c_0/2 + sum_{j>=1} c_j T_j(t)``."""
    b1 = np.zeros_like(t)
    b2 = np.zeros_like(t)
    for c in coeffs[:0:-1]:
        b1, b2 = 2.0 * t * b1 - b2 + c, b1
    return t * b1 - b2 + 0.5 * coeffs[0]


def eval_series(s: ChebSeries, x: ArrayLike) -> float | NDArray[np.float64]:
    """Evaluate a primed-sum Chebyshev series at points of its interval."""
    arr = np.asarray(x, dtype=np.float64)
    t = np.atleast_1d(map_reference(s.interval, arr))
    out = clenshaw(s.coeffs, t)
    if arr.ndim == 0:
        return float(out[0])
    return out
