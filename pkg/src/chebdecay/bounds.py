"""Certified coefficient-decay and L1 truncation-error bounds on ``[a, b]``.

Notation: ``h = (b - a) / 2``, ``k`` the regularity order, ``V`` the
variation of ``f^(k)`` and ``s = k // 2``.  Two bound families exist and
each needs its own variation functional:

=====================  ======================================  ==================
bound                  form                                    ``V`` is
=====================  ======================================  ==================
decay_bound_smooth     ``h^(k+1) 2V / (pi prod(...))``         Chebyshev-weighted
error_bound_majidian   tail of ``decay_bound_smooth``          Chebyshev-weighted
decay_bound_bv         ``(2V/pi) ((b-a)/4)^k sum_i C(k,i)/..`` total variation
derivative_coeff_bound ``2V / (j pi)``                         total variation
error_bound_xiang      tail of ``decay_bound_bv``              total variation
=====================  ======================================  ==================

:class:`BoundParams` can carry a ``functional`` tag (set automatically by
:meth:`BoundParams.from_report`); a bound refuses parameters tagged with
the wrong functional.  Untagged parameters are accepted as given.

The error bounds parametrise the degree as ``d = n - l`` (``1 <= l <= n-k``)
or ``d = n + l`` (``0 <= l <= n-k-1``); any ``k <= d <= 2n-k-1`` falls in
exactly one case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Literal

from .coefficients import CoefficientTable
from .core import Interval
from .errors import PreconditionError
from .variation import Kind, VariationReport

Theorem = Literal["decay_smooth", "decay_bv", "derivative_coeff", "error_majidian", "error_xiang"]


@dataclass(frozen=True)
class BoundParams:
    """Interval, regularity order ``k`` and variation value ``V`` of ``f^(k)``."""

    interval: Interval
    k: int
    V: float
    functional: Kind | None = None

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 0:
            raise PreconditionError(f"k must be a nonnegative integer, got {self.k!r}")
        if not (math.isfinite(self.V) and self.V > 0):
            raise PreconditionError(f"V must be finite and positive, got {self.V!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "V", float(self.V))

    @classmethod
    def from_report(cls, interval: Interval, report: VariationReport) -> BoundParams:
        return cls(interval, report.k, report.total, report.kind)

    @property
    def h(self) -> float:
        return self.interval.half_width

    def require(self, kind: Kind, bound: str):
        if self.functional is not None and self.functional != kind:
            raise PreconditionError(f"{bound} needs V from the {kind} functional, got {self.functional}")


@dataclass(frozen=True)
class BoundResult:
    value: float
    theorem: Theorem
    params: dict[str, Any] = field(default_factory=dict)
    s: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value > 0):
            raise ArithmeticError(f"bound value must be finite and positive, got {self.value!r}")

    def __float__(self) -> float:
        return self.value


def _prod(factors) -> float:
    out = 1.0
    for f in factors:
        out *= float(f)
    return out


def _falling(top: int, count: int) -> float:
    """``top (top-1) ... (top-count+1)`` in floating point."""
    return _prod(top - m for m in range(count))


def decay_bound_smooth(p: BoundParams, j: int) -> BoundResult:
    """Upper bound on ``|c_j|`` from the Chebyshev-weighted variation, ``j >= k+1``."""
    p.require("cheb_weighted", "decay_bound_smooth")
    k = p.k
    if j < k + 1:
        raise PreconditionError(f"decay bound needs j >= k+1 = {k + 1}, got j={j}")
    s = k // 2
    if k % 2 == 0:
        den = _prod(j + 2 * i for i in range(-s, s + 1))
        value = p.h ** (2 * s + 1) * 2.0 * p.V / (math.pi * den)
    else:
        den = _prod(j + 2 * i - 1 for i in range(-s, s + 2))
        value = p.h ** (2 * s + 2) * 2.0 * p.V / (math.pi * den)
    return BoundResult(value, "decay_smooth", {"j": j, "k": k, "V": p.V}, s)


def decay_bound_bv(p: BoundParams, j: int) -> BoundResult:
    """Upper bound on ``|c_j|`` from the total variation of ``f^(k)``, ``j >= k+1``.

    For ``k = 0`` this is ``2V / (j pi)``.
    """
    p.require("total_variation", "decay_bound_bv")
    k = p.k
    if j < k + 1:
        raise PreconditionError(f"decay bound needs j >= k+1 = {k + 1}, got j={j}")
    total = 0.0
    for i in range(k + 1):
        total += math.comb(k, i) / _falling(j + i, k + 1)
    value = (2.0 * p.V / math.pi) * (p.interval.width / 4.0) ** k * total
    return BoundResult(value, "decay_bv", {"j": j, "k": k, "V": p.V})


def derivative_coeff_bound(p: BoundParams, j: int) -> BoundResult:
    """``|c_j^(k)| <= 2V / (j pi)`` for the coefficients of ``f^(k)``."""
    p.require("total_variation", "derivative_coeff_bound")
    if j < 1:
        raise PreconditionError(f"derivative coefficient bound needs j >= 1, got {j}")
    return BoundResult(2.0 * p.V / (j * math.pi), "derivative_coeff", {"j": j, "k": p.k, "V": p.V})


def reconstruct_coefficient(p_order: int, j: int, deriv_table: CoefficientTable, interval: Interval) -> float:
    """Recover ``c_j`` from coefficients of ``f^(p)``.

    ``c_j = ((b-a)/4)^p sum_{i=0}^{p} C(p,i) (-1)^i (j+2i-p) / ((j+i)...(j+i-p)) c^(p)_{j+2i-p}``

    For ``p = 1`` this is ``(b-a)/(4j) (c'_{j-1} - c'_{j+1})``.
    """
    if p_order < 1:
        raise PreconditionError(f"p must be >= 1, got {p_order}")
    if j < p_order + 1:
        raise PreconditionError(f"reconstruction needs j >= p+1 = {p_order + 1} (a zero factor occurs at j = p)")
    if j + p_order > deriv_table.j_max:
        raise PreconditionError(f"derivative table holds c_0..c_{deriv_table.j_max}; c_{j + p_order} is required")
    c = deriv_table.values
    terms = []
    for i in range(p_order + 1):
        m = j + 2 * i - p_order
        terms.append(math.comb(p_order, i) * (-1) ** i * m / _falling(j + i, p_order + 1) * c[m])
    return (interval.width / 4.0) ** p_order * math.fsum(terms)


def _split_degree(d: int, n: int) -> tuple[str, int]:
    if d < n:
        return "n-l", n - d
    return "n+l", d - n


def _check_error_range(k: int, d: int, n: int, n_min: int, bound: str):
    if k < 1:
        raise PreconditionError(f"{bound} needs k >= 1, got k={k}")
    if n < n_min:
        raise PreconditionError(f"{bound} needs n >= {n_min} (k={k}), got n={n}")
    if not k <= d <= 2 * n - k - 1:
        raise PreconditionError(f"{bound} needs k <= d <= 2n-k-1 = {2 * n - k - 1}, got d={d}")


def _pi_term(alpha: int, beta: int, s: int, eta: int) -> float:
    return 1.0 / _prod(eta + 2 * i + beta for i in range(-s, s - alpha + 1))


def error_bound_majidian(p: BoundParams, d: int, n: int) -> BoundResult:
    """L1 error bound for ``C_{d,n}[f]`` from the Chebyshev-weighted decay bound.

    Requires ``n - 1 >= k >= 1`` and ``k <= d <= 2n - k - 1``.
    """
    p.require("cheb_weighted", "error_bound_majidian")
    k = p.k
    _check_error_range(k, d, n, k + 1, "error_bound_majidian")
    case, l = _split_degree(d, n)
    s = k // 2
    eta = n - l
    if case == "n-l":
        coef = 4.0
        pairs = ((1, 1), (1, 2)) if k % 2 == 0 else ((0, 0), (0, 1))
    else:
        coef = 6.0
        pairs = ((1, 0), (1, 1)) if k % 2 == 0 else ((0, -1), (0, 0))
    total = _pi_term(*pairs[0], s, eta) + _pi_term(*pairs[1], s, eta)
    value = p.h ** (k + 2) * coef * p.V / (k * math.pi) * total
    return BoundResult(value, "error_majidian", {"d": d, "n": n, "l": l, "case": case, "k": k, "V": p.V}, s)


def error_bound_xiang(p: BoundParams, d: int, n: int) -> BoundResult:
    """L1 error bound for ``C_{d,n}[f]`` from the total-variation decay bound.

    Requires ``n >= k >= 1`` and ``k <= d <= 2n - k - 1``.
    """
    p.require("total_variation", "error_bound_xiang")
    k = p.k
    _check_error_range(k, d, n, k, "error_bound_xiang")
    case, l = _split_degree(d, n)
    eta = n - l
    total = 0.0
    if case == "n-l":
        coef = 4.0
        for j in range(k + 1):
            total += math.comb(k, j) / _falling(eta + j, k)
    else:
        coef = 6.0
        for j in range(k + 1):
            total += math.comb(k, j) / _falling(eta + j - 1, k)
    value = coef * p.V * p.interval.width ** (k + 1) / (4.0**k * k * math.pi) * total
    return BoundResult(value, "error_xiang", {"d": d, "n": n, "l": l, "case": case, "k": k, "V": p.V})

