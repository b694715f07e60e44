"""Piecewise function descriptions.

Text format (whitespace-insensitive)::

    on [a,b]: piece [a,x1): <expr>; piece [x1,b]: <expr>; k=<int>
    on [a,b]: <expr>; k=<int>

``k`` declares that ``f, f', ..., f^(k-1)`` are absolutely continuous on
``[a, b]``.  Piece boundaries become the breakpoints.  Bracket shapes are
accepted for readability; which piece owns a breakpoint is chosen at
evaluation time with the ``side`` argument.

``abs(u)`` is rewritten per piece into ``u`` or ``-u`` whenever ``u`` keeps
one sign inside the piece, so a kink placed on a declared breakpoint
differentiates cleanly.  A kink that is not declared stays as ``abs`` and
makes differentiation fail.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import expr as ex
from .core import Interval
from .errors import (
    ContinuityWarning,
    DomainError,
    EvaluationError,
    FunctionSpecError,
    ParseError,
    UnsupportedOrderError,
)

Side = Literal["left", "right", "auto"]

# relative tolerance of the continuity audit at breakpoints
CONTINUITY_TOL = 1e-9


@dataclass(frozen=True)
class Piece:
    lo: float
    hi: float
    expr: ex.Expr
    closed_left: bool = True
    closed_right: bool = False

    def __str__(self) -> str:
        lb = "[" if self.closed_left else "("
        rb = "]" if self.closed_right else ")"
        return f"piece {lb}{self.lo!r},{self.hi!r}{rb}: {self.expr}"


@dataclass(frozen=True)
class Jump:
    """Jump ``right - left`` of a derivative at a breakpoint."""

    x: float
    size: float
    left: float
    right: float


@dataclass(frozen=True, eq=False)
class FunctionSpec:
    """A piecewise-smooth function on an interval.

    Attributes
    ----------
    interval : Interval
    pieces : tuple of Piece
        Ordered pieces whose closures partition ``interval``.
    k : int
        Declared smoothness class.
    """

    interval: Interval
    pieces: tuple[Piece, ...]
    k: int
    breakpoints: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        pieces = tuple(self.pieces)
        object.__setattr__(self, "pieces", pieces)
        if not pieces:
            raise FunctionSpecError("a function needs at least one piece")
        if not isinstance(self.k, (int, np.integer)) or self.k < 0:
            raise FunctionSpecError(f"smoothness class k must be a nonnegative integer, got {self.k!r}")
        iv = self.interval
        for i, p in enumerate(pieces, 1):
            if not p.lo < p.hi:
                raise FunctionSpecError(f"piece {i} is empty or reversed: [{p.lo!r}, {p.hi!r}]")
        if pieces[0].lo != iv.a:
            raise FunctionSpecError(f"first piece starts at {pieces[0].lo!r}, not at a={iv.a!r}")
        if pieces[-1].hi != iv.b:
            raise FunctionSpecError(f"last piece ends at {pieces[-1].hi!r}, not at b={iv.b!r}")
        for i, (p, q) in enumerate(zip(pieces, pieces[1:]), 1):
            if q.lo < p.hi:
                raise FunctionSpecError(
                    f"overlapping pieces: piece {i + 1} starts at {q.lo!r} before piece {i} ends at {p.hi!r}"
                )
            if q.lo > p.hi:
                raise FunctionSpecError(f"gap between piece {i} (ends {p.hi!r}) and piece {i + 1} (starts {q.lo!r})")
        object.__setattr__(self, "breakpoints", tuple(p.lo for p in pieces[1:]))

    def __call__(self, x: ArrayLike, side: Side = "auto"):
        return evaluate_at(self, x, side)

    def __str__(self) -> str:
        head = f"on [{self.interval.a!r},{self.interval.b!r}]"
        if len(self.pieces) == 1:
            return f"{head}: {self.pieces[0].expr}; k={self.k}"
        body = "; ".join(str(p) for p in self.pieces)
        return f"{head}: {body}; k={self.k}"

    def __repr__(self) -> str:
        return f"FunctionSpec({self})"

    def piece_index(self, x: NDArray[np.float64], side: Side = "auto") -> NDArray[np.intp]:
        bps = np.asarray(self.breakpoints, dtype=np.float64)
        return np.searchsorted(bps, x, side="left" if side == "left" else "right")


def _eval_piece(spec: FunctionSpec, i: int, t: NDArray[np.float64], e: ex.Expr | None = None) -> NDArray[np.float64]:
    p = spec.pieces[i]
    e = p.expr if e is None else e
    try:
        with np.errstate(all="ignore"):
            out = e.evaluate(t)
    except EvaluationError as exc:
        raise EvaluationError(f"piece {i + 1} on [{p.lo!r}, {p.hi!r}]: {exc}") from None
    if not np.all(np.isfinite(out)):
        bad = t[~np.isfinite(out)][0]
        raise EvaluationError(f"piece {i + 1} on [{p.lo!r}, {p.hi!r}]: non-finite value at t={bad!r}")
    return out


def evaluate_at(spec: FunctionSpec, x: ArrayLike, side: Side = "auto"):
    """Evaluate ``spec`` at ``x``; ``side`` picks the piece at a breakpoint (``auto`` = right)."""
    if side not in ("left", "right", "auto"):
        raise ValueError(f"side must be 'left', 'right' or 'auto', got {side!r}")
    arr = np.asarray(x, dtype=np.float64)
    xx = np.atleast_1d(arr).ravel()
    iv = spec.interval
    outside = (xx < iv.a) | (xx > iv.b) | np.isnan(xx)
    if np.any(outside):
        raise DomainError(f"point {xx[outside][0]!r} lies outside {iv}")
    idx = spec.piece_index(xx, side)
    out = np.empty_like(xx)
    for i in np.unique(idx):
        mask = idx == i
        out[mask] = _eval_piece(spec, int(i), xx[mask])
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def _one_sided(spec: FunctionSpec, order: int) -> list[tuple[float, float, float]]:
    """(x_i, left value, right value) of the order-th derivative at each breakpoint."""
    rows = []
    for i, x in enumerate(spec.breakpoints):
        pt = np.array([x])
        lv = _eval_piece(spec, i, pt, ex.derivative(spec.pieces[i].expr, order))[0]
        rv = _eval_piece(spec, i + 1, pt, ex.derivative(spec.pieces[i + 1].expr, order))[0]
        rows.append((x, float(lv), float(rv)))
    return rows


def jumps(spec: FunctionSpec, order: int) -> tuple[Jump, ...]:
    """One-sided jumps of the ``order``-th derivative at every breakpoint."""
    return tuple(Jump(x, rv - lv, lv, rv) for x, lv, rv in _one_sided(spec, order))


def continuity_violations(spec: FunctionSpec, order: int, tol: float = CONTINUITY_TOL) -> list[Jump]:
    return [j for j in jumps(spec, order) if abs(j.size) > tol * (1.0 + max(abs(j.left), abs(j.right)))]


@dataclass(frozen=True)
class Derivative:
    """Piecewise ``order``-th derivative plus the jump table of the weak derivative.

    ``jumps`` is non-empty only for ``order == k + 1``, where it lists the
    jumps of ``f^(k)``; the weak derivative is ``spec`` plus Dirac masses
    of those sizes.
    """

    spec: FunctionSpec
    order: int
    jumps: tuple[Jump, ...] = ()


def derivative(spec: FunctionSpec, r: int) -> Derivative:
    """Symbolic ``r``-th derivative of each piece.

    Orders up to ``k + 1`` are allowed.  Continuity of ``f^(m)`` for
    ``m < min(r, k)`` is audited numerically and a :class:`ContinuityWarning`
    is issued when the declaration looks wrong.

    Raises
    ------
    UnsupportedOrderError
        If ``r > k + 1``.
    DifferentiationError
        If a piece still contains ``abs`` of a sign-changing argument.
    """
    if r < 0:
        raise UnsupportedOrderError(f"derivative order must be nonnegative, got {r}")
    if r > spec.k + 1:
        raise UnsupportedOrderError(
            f"order {r} exceeds k+1={spec.k + 1}; only derivatives up to the weak derivative of f^(k) are supported"
        )
    if r == 0:
        return Derivative(spec, 0)
    pieces = tuple(Piece(p.lo, p.hi, ex.derivative(p.expr, r), p.closed_left, p.closed_right) for p in spec.pieces)
    dspec = FunctionSpec(spec.interval, pieces, max(spec.k - r, 0))
    for m in range(min(r, spec.k)):
        bad = continuity_violations(spec, m)
        if bad:
            where = ", ".join(f"x={j.x!r} (jump {j.size:.3g})" for j in bad)
            warnings.warn(
                f"f^({m}) was declared absolutely continuous (k={spec.k}) but jumps at {where}",
                ContinuityWarning,
                stacklevel=2,
            )
    table = jumps(spec, spec.k) if r == spec.k + 1 else ()
    return Derivative(dspec, r, table)


# ---------------------------------------------------------------------------
# parsing


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        return ParseError(msg, self.pos if pos is None else pos, self.text)

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            found = self.text[self.pos : self.pos + 10] or "end of input"
            raise self.error(f"expected '{token}', found '{found}'")
        self.pos += len(token)

    def keyword(self, word: str) -> bool:
        self.skip_ws()
        m = re.compile(rf"{word}\b").match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return bool(m)

    def until(self, stops: str) -> tuple[int, str]:
        """Consume text up to a depth-0 character in ``stops``."""
        start, depth = self.pos, 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if depth == 0 and ch in stops:
                return start, self.text[start : self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            self.pos += 1
        raise self.error(f"expected one of {' '.join(repr(s) for s in stops)} before end of input")

    def constant(self, start: int, src: str) -> float:
        node = ex.parse_expression(src, text=self.text, offset=start)
        if any(isinstance(n, ex.Var) for n in ex.walk(node)):
            raise self.error("interval endpoints must be constants", start)
        try:
            return float(node.evaluate(np.zeros(1))[0])
        except EvaluationError as exc:
            raise self.error(f"cannot evaluate endpoint: {exc}", start) from None

    def interval(self) -> tuple[float, float, bool, bool]:
        self.skip_ws()
        opener = self.peek()
        if opener not in ("[", "("):
            raise self.error("expected '[' or '(' to open an interval")
        self.pos += 1
        s0, lo_src = self.until(",")
        self.pos += 1
        depth_close = self._closing()
        s1, hi_src = depth_close
        closer = self.text[self.pos]
        self.pos += 1
        lo, hi = self.constant(s0, lo_src), self.constant(s1, hi_src)
        return lo, hi, opener == "[", closer == "]"

    def _closing(self) -> tuple[int, str]:
        # a ')' at depth 0 closes a half-open interval
        start, depth = self.pos, 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "]" and depth == 0:
                return start, self.text[start : self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    return start, self.text[start : self.pos]
                depth -= 1
            self.pos += 1
        raise self.error("unterminated interval")


_K_RE = re.compile(r"\s*k\s*=\s*(\d+)\s*$")


def parse(text: str) -> FunctionSpec:
    """Parse a function description into a validated :class:`FunctionSpec`.

    Raises
    ------
    ParseError
        On a syntax error; the message carries the column.
    FunctionSpecError
        If the pieces do not partition the interval.

    Examples
    --------
    >>> g = parse("on [-1,1]: piece [-1,0): -t/(t+2); piece [0,1]: t/(t+2); k=1")
    >>> g.breakpoints
    (0.0,)
    """
    sc = _Scanner(text)
    if not sc.keyword("on"):
        raise sc.error("description must start with 'on [a,b]:'")
    a, b, _, _ = sc.interval()
    try:
        iv = Interval(a, b)
    except DomainError as exc:
        raise FunctionSpecError(str(exc)) from None
    sc.expect(":")

    segments: list[tuple[int, str]] = []
    while True:
        start = sc.pos
        end = text.find(";", start)
        if end < 0:
            segments.append((start, text[start:]))
            break
        segments.append((start, text[start:end]))
        sc.pos = end + 1
    segments = [(s, seg) for s, seg in segments if seg.strip()]
    if not segments:
        raise ParseError("missing function body", len(text), text)
    k_start, k_src = segments[-1]
    m = _K_RE.match(k_src)
    if m is None:
        raise ParseError("expected a final 'k=<int>' clause", k_start + len(k_src) - len(k_src.lstrip()), text)
    k = int(m.group(1))
    body = segments[:-1]
    if not body:
        raise ParseError("missing function body before 'k='", k_start, text)

    pieces: list[Piece] = []
    for start, seg in body:
        ps = _Scanner(text)
        ps.pos = start
        if ps.keyword("piece"):
            lo, hi, cl, cr = ps.interval()
            ps.expect(":")
            e = ex.parse_expression(text[ps.pos : start + len(seg)], text=text, offset=ps.pos)
            pieces.append(Piece(lo, hi, e, cl, cr))
        else:
            if len(body) > 1:
                raise ParseError("expected 'piece' (several segments given)", start + len(seg) - len(seg.lstrip()), text)
            pieces.append(Piece(iv.a, iv.b, ex.parse_expression(seg, text=text, offset=start), True, True))

    pieces = [Piece(p.lo, p.hi, ex.resolve_abs(p.expr, p.lo, p.hi), p.closed_left, p.closed_right) for p in pieces]
    return FunctionSpec(iv, tuple(pieces), k)


def from_pieces(a: float, b: float, exprs: list[tuple[float, float, str]], k: int) -> FunctionSpec:
    """Build a spec from ``(lo, hi, formula)`` triples."""
    pieces = []
    for lo, hi, src in exprs:
        e = ex.parse_expression(src)
        pieces.append(Piece(float(lo), float(hi), ex.resolve_abs(e, lo, hi)))
    return FunctionSpec(Interval(a, b), tuple(pieces), k)
