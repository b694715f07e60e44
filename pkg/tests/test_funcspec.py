import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebdecay import (
    ContinuityWarning,
    DifferentiationError,
    DomainError,
    EvaluationError,
    FunctionSpecError,
    ParseError,
    UnsupportedOrderError,
    derivative,
    evaluate_at,
    parse,
)
from chebdecay.expr import parse_expression

from .conftest import EXAMPLE51


class TestParse:
    def test_example51(self, g):
        assert g.breakpoints == (0.0,)
        assert len(g.pieces) == 2
        assert g.k == 1
        assert (g.interval.a, g.interval.b) == (-1.0, 1.0)

    def test_single_piece(self):
        f = parse("on [0,2]: exp(t); k=3")
        assert f.breakpoints == ()
        assert f.k == 3
        assert f(1.0) == pytest.approx(math.e)

    def test_whitespace_insensitive(self):
        f = parse("  on[ -1 , 1 ] :piece[-1,0):-t/(t+2);piece [0,1] :  t/(t+2) ;k = 1 ")
        assert f(0.5) == pytest.approx(0.2)

    def test_overlap(self):
        with pytest.raises(FunctionSpecError, match="overlapping"):
            parse("on [-1,1]: piece [-1,0.5): 1; piece [0,1]: 2; k=0")

    def test_gap(self):
        with pytest.raises(FunctionSpecError, match="gap"):
            parse("on [-1,1]: piece [-1,0): 1; piece [0.5,1]: 2; k=0")

    def test_empty_piece(self):
        with pytest.raises(FunctionSpecError, match="empty"):
            parse("on [-1,1]: piece [-1,0): 1; piece [0,0]: 3; piece [0,1]: 2; k=0")

    def test_not_covering(self):
        with pytest.raises(FunctionSpecError):
            parse("on [-1,1]: piece [-1,0): 1; piece [0,0.9]: 2; k=0")

    def test_reversed_interval(self):
        with pytest.raises(FunctionSpecError):
            parse("on [1,-1]: t; k=0")

    @pytest.mark.parametrize(
        "text,column",
        [
            ("on [-1,1]: t +* 2; k=0", 15),
            ("on [-1,1]: t; k=x", 15),
            ("on -1,1: t; k=0", 4),
            ("on [-1,1]: foo(t); k=0", 12),
        ],
    )
    def test_syntax_errors_carry_position(self, text, column):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.position == column - 1
        assert "column" in str(info.value)

    def test_fractional_power_rejected(self):
        with pytest.raises(ParseError, match="integer"):
            parse("on [0,1]: t^0.5; k=0")

    def test_constant_endpoints(self):
        f = parse("on [0, pi]: piece [0, pi/2): sin(t); piece [pi/2, pi]: 1; k=1")
        assert f.breakpoints == (math.pi / 2,)

    def test_variable_endpoint_rejected(self):
        with pytest.raises(ParseError, match="constant"):
            parse("on [0, t]: 1; k=0")


class TestEvaluate:
    def test_values(self, g):
        assert evaluate_at(g, 0.5) == pytest.approx(0.2, abs=1e-16)
        assert evaluate_at(g, -0.5) == pytest.approx(0.5 / 1.5, abs=1e-16)
        assert evaluate_at(g, 1.0) == pytest.approx(1 / 3, abs=1e-16)

    def test_sides_at_breakpoint(self, g):
        assert evaluate_at(g, 0.0, "left") == 0.0
        assert evaluate_at(g, 0.0, "right") == 0.0

    def test_side_selects_piece(self):
        f = parse("on [0,2]: piece [0,1): 1; piece [1,2]: 5; k=0")
        assert f(1.0, "left") == 1.0
        assert f(1.0, "right") == 5.0
        assert f(1.0) == 5.0

    def test_vectorised(self, g):
        x = np.array([[-1.0, 0.0], [0.5, 1.0]])
        out = g(x)
        assert out.shape == (2, 2)
        np.testing.assert_allclose(out, np.abs(x) / (x + 2))

    def test_outside(self, g):
        with pytest.raises(DomainError):
            g(1.5)

    def test_fault_names_piece(self):
        f = parse("on [-1,1]: piece [-1,0): 1/t; piece [0,1]: log(t); k=0")
        with pytest.raises(EvaluationError, match="piece 2"):
            f(0.0)
        with pytest.raises(EvaluationError, match="piece 1"):
            f(-1.0 + 1.0, "left")


class TestDerivative:
    def test_first(self, g):
        d = derivative(g, 1)
        x = np.array([-0.9, -0.3, -1e-3])
        np.testing.assert_allclose(d.spec(x), -2 / (x + 2) ** 2, rtol=1e-14)
        x = np.array([1e-3, 0.4, 1.0])
        np.testing.assert_allclose(d.spec(x), 2 / (x + 2) ** 2, rtol=1e-14)
        assert d.jumps == ()

    def test_weak_second(self, g):
        d = derivative(g, 2)
        x = np.array([-0.9, -0.3])
        np.testing.assert_allclose(d.spec(x), 4 / (x + 2) ** 3, rtol=1e-13)
        x = np.array([0.3, 0.9])
        np.testing.assert_allclose(d.spec(x), -4 / (x + 2) ** 3, rtol=1e-13)
        (jump,) = d.jumps
        assert jump.x == 0.0
        assert jump.size == pytest.approx(1.0, abs=1e-15)
        assert (jump.left, jump.right) == pytest.approx((-0.5, 0.5))

    def test_exp(self):
        f = parse("on [0,2]: exp(t); k=3")
        d = derivative(f, 3)
        assert d.spec(1.3) == pytest.approx(math.exp(1.3))
        assert d.jumps == ()

    def test_order_limit(self, g):
        with pytest.raises(UnsupportedOrderError):
            derivative(g, 3)

    def test_undeclared_kink(self):
        f = parse("on [-1,1]: abs(t)/(t+2); k=1")
        assert f(-0.5) == pytest.approx(1 / 3)
        with pytest.raises(DifferentiationError, match="breakpoint"):
            derivative(f, 1)

    def test_declared_kink_via_abs(self):
        f = parse("on [-1,1]: piece [-1,0): abs(t)/(t+2); piece [0,1]: abs(t)/(t+2); k=1")
        d = derivative(f, 2)
        assert d.jumps[0].size == pytest.approx(1.0)

    def test_shifted_kink(self):
        f = parse("on [0,3]: piece [0,1): abs(t-1); piece [1,3]: abs(t-1); k=1")
        (jump,) = derivative(f, 2).jumps
        assert jump.size == pytest.approx(2.0)

    def test_continuity_audit_warns(self):
        # declared k=1 but f itself jumps at 0
        f = parse("on [-1,1]: piece [-1,0): t; piece [0,1]: t+1; k=1")
        with pytest.warns(ContinuityWarning, match="jumps"):
            derivative(f, 1)

    def test_continuity_audit_quiet(self, g):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            derivative(g, 2)

    @pytest.mark.parametrize(
        "text",
        [
            EXAMPLE51,
            "on [0,2]: exp(t)*sin(3*t); k=3",
            "on [0.5,3]: log(t)/sqrt(t) + cos(t)^3; k=2",
            "on [-2,2]: piece [-2,0.25): t^3 - 2*t; piece [0.25,2]: exp(-t^2); k=0",
        ],
    )
    def test_against_finite_differences(self, text):
        f = parse(text)
        d = derivative(f, 1).spec
        h = 1e-6
        for p in f.pieces:
            x = np.linspace(p.lo, p.hi, 23)[1:-1]
            fd = (p.expr(x + h) - p.expr(x - h)) / (2 * h)
            exact = d(x)
            assert np.all(np.abs(exact - fd) <= 1e-6 * (1 + np.abs(exact)))


# random well-defined expression trees for the print/parse round trip
_leaf = st.one_of(
    st.just("t"),
    st.just("pi"),
    st.floats(-5, 5, allow_nan=False).map(repr),
    st.integers(-3, 9).map(str),
)


def _extend(inner):
    return st.one_of(
        st.tuples(inner, inner).map(lambda p: f"({p[0]}) + ({p[1]})"),
        st.tuples(inner, inner).map(lambda p: f"({p[0]}) - ({p[1]})"),
        st.tuples(inner, inner).map(lambda p: f"({p[0]})*({p[1]})"),
        st.tuples(inner, inner).map(lambda p: f"({p[0]})/(({p[1]})^2 + 1)"),
        st.tuples(inner, st.integers(-2, 4)).map(lambda p: f"(({p[0]})^2 + 1)^{p[1]}"),
        inner.map(lambda s: f"-({s})"),
        inner.map(lambda s: f"sin({s})"),
        inner.map(lambda s: f"cos({s})"),
        inner.map(lambda s: f"exp(sin({s}))"),
        inner.map(lambda s: f"sqrt(({s})^2 + 1)"),
        inner.map(lambda s: f"log(({s})^2 + 2)"),
    )


expressions = st.recursive(_leaf, _extend, max_leaves=10)


@settings(max_examples=150, deadline=None)
@given(expressions, expressions, st.floats(-0.9, 0.9))
def test_print_parse_round_trip(e1, e2, bp):
    spec = parse(f"on [-1,1]: piece [-1,{bp!r}): {e1}; piece [{bp!r},1]: {e2}; k=0")
    again = parse(str(spec))
    assert str(again) == str(spec)
    x = np.random.default_rng(0).uniform(-1, 1, 1000)
    a, b = spec(x), again(x)
    assert np.all(np.abs(a - b) <= 1e-14 * np.maximum(1.0, np.abs(a)))


def test_expression_printing_is_exact():
    e = parse_expression("t*(2/t) - (-3)^2 + -t^2")
    assert str(parse_expression(str(e))) == str(e)
