import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebdecay import (
    ConvergenceError,
    PreconditionError,
    aliasing_residual,
    build_approximation,
    derivative_coefficients,
    parse,
    quadrature_coefficients,
    reference_coefficients,
)
from chebdecay import coefficients
from chebdecay.core import ChebSeries

from .conftest import cheb_spec, cheb_text


def brute_force(fun, n, k):
    """(2/n) sum f(t_l) cos(k theta_l), written out independently of the library."""
    theta = (2 * np.arange(1, n + 1) - 1) * np.pi / (2 * n)
    return 2.0 / n * np.sum(fun(np.cos(theta)) * np.cos(k * theta))


class TestQuadratureCoefficients:
    def test_t3_exact_pattern(self):
        c = quadrature_coefficients(cheb_spec(3), 10, 16).values
        expect = np.zeros(17)
        expect[3] = 1.0
        np.testing.assert_allclose(c, expect, rtol=0, atol=1e-12)

    def test_constant(self):
        c = quadrature_coefficients(parse("on [3,5]: 1; k=0"), 7, 13).values
        assert c[0] == 2.0
        assert np.max(np.abs(c[1:])) < 1e-14

    def test_aliasing_examples(self):
        # T_17 with 10 nodes is exact at k=17; T_3 aliases onto index 2n-3 = 17
        c17 = quadrature_coefficients(cheb_spec(17), 10, 19).values
        c3 = quadrature_coefficients(cheb_spec(3), 10, 19).values
        assert c17[17] == pytest.approx(1.0, abs=1e-13)
        assert c3[17] == pytest.approx(-1.0, abs=1e-13)
        t17 = lambda t: np.cos(17 * np.arccos(t))  # noqa: E731
        assert c17[17] == pytest.approx(brute_force(t17, 10, 17), abs=1e-13)
        assert c3[17] == pytest.approx(brute_force(lambda t: 4 * t**3 - 3 * t, 10, 17), abs=1e-13)

    def test_t10_at_five_nodes(self):
        c = quadrature_coefficients(cheb_spec(10), 5, 0).values
        assert c[0] == pytest.approx(-2.0, abs=1e-12)

    def test_matches_brute_force_on_g(self, g):
        c = quadrature_coefficients(g, 37, 60).values
        for k in (0, 1, 5, 36, 60):
            assert c[k] == pytest.approx(brute_force(lambda t: np.abs(t) / (t + 2), 37, k), abs=1e-13)

    def test_mapped_interval(self):
        # f(x) = x on [2,6] is 4 + 2 T_1(t)
        c = quadrature_coefficients(parse("on [2,6]: t; k=1"), 4, 5).values
        np.testing.assert_allclose(c, [8, 2, 0, 0, 0, 0], atol=1e-14)

    @pytest.mark.parametrize("n,k_max", [(0, 0), (5, 10), (5, -1)])
    def test_range(self, n, k_max):
        with pytest.raises(PreconditionError):
            quadrature_coefficients(cheb_spec(1), n, k_max)

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.floats(-2, 2), min_size=1, max_size=9),
        st.integers(5, 30),
    )
    def test_polynomial_exactness(self, coeffs, n):
        # p = sum a_m T_m, exact whenever deg(p) + k <= 2n - 1
        deg = len(coeffs) - 1
        text = " + ".join(f"({a!r})*{cheb_text(m)}" for m, a in enumerate(coeffs))
        spec = parse(f"on [-1,1]: {text}; k=0")
        k_max = 2 * n - 1 - deg
        c = quadrature_coefficients(spec, n, k_max).values
        exact = np.zeros(k_max + 1)
        m = min(deg, k_max) + 1
        exact[:m] = coeffs[:m]
        exact[0] *= 2
        assert np.all(np.abs(c - exact) <= 1e-12 * (1 + np.abs(exact)))


class TestReferenceCoefficients:
    def test_linear(self):
        table = reference_coefficients(parse("on [-1,1]: t; k=1"), 10)
        expect = np.zeros(11)
        expect[1] = 1.0
        np.testing.assert_allclose(table.values, expect, atol=1e-10)
        assert table.delta <= table.tolerance == 1e-10
        assert table.n_quadrature == 0

    def test_abs(self):
        f = parse("on [-1,1]: piece [-1,0): -t; piece [0,1]: t; k=0")
        table = reference_coefficients(f, 8)
        assert table[0] == pytest.approx(4 / math.pi, abs=1e-10)
        # closed form for the even indices: -4 (-1)^(j/2) / (pi (j^2 - 1))
        for j in (2, 4, 6, 8):
            assert table[j] == pytest.approx(-4 * (-1) ** (j // 2) / (math.pi * (j * j - 1)), abs=1e-10)

    def test_abs_smooth_path(self):
        # without a declared breakpoint the n-doubling path is taken
        f = parse("on [-1,1]: abs(t); k=0")
        table = reference_coefficients(f, 4, tol=1e-8)
        assert table[0] == pytest.approx(4 / math.pi, abs=1e-8)

    def test_symmetry_even_function(self):
        f = parse("on [-2,2]: piece [-2,0): exp(t) + exp(-t) + abs(t); piece [0,2]: exp(t) + exp(-t) + abs(t); k=0")
        odd = reference_coefficients(f, 31).values[1::2]
        assert np.max(np.abs(odd)) <= 1e-10

    def test_symmetry_smooth_even(self):
        odd = reference_coefficients(parse("on [-1,1]: cos(3*t)*t^2; k=2"), 40).values[1::2]
        assert np.max(np.abs(odd)) <= 1e-10

    def test_quadrature_converges_to_reference(self, g):
        ref = reference_coefficients(g, 10).values
        for n in (200, 2000):
            err = np.max(np.abs(quadrature_coefficients(g, n, 10).values - ref))
            assert err < 1.0 / n**2

    def test_nonconvergence(self, monkeypatch):
        monkeypatch.setattr(coefficients, "MAX_DOUBLINGS", 3)
        with pytest.raises(ConvergenceError) as info:
            reference_coefficients(parse("on [-1,1]: sin(1000*t^2)*cos(700*t); k=0"), 2, tol=1e-12)
        assert info.value.delta > 1e-12

    def test_bad_tol(self, g):
        with pytest.raises(PreconditionError):
            reference_coefficients(g, 4, tol=0.0)


class TestDerivativeCoefficients:
    def test_order_zero(self, g):
        a = derivative_coefficients(g, 0, 20).values
        b = reference_coefficients(g, 20).values
        np.testing.assert_allclose(a, b, atol=1e-10)

    def test_square(self):
        c = derivative_coefficients(parse("on [-1,1]: t^2; k=2"), 1, 8).values
        expect = np.zeros(9)
        expect[1] = 2.0
        np.testing.assert_allclose(c, expect, atol=1e-10)

    def test_integration_by_parts_exp(self):
        f = parse("on [0,2]: exp(t); k=2")
        c = reference_coefficients(f, 12).values
        d = derivative_coefficients(f, 1, 12).values
        for j in range(1, 11):
            assert abs(c[j] - 2.0 / (4 * j) * (d[j - 1] - d[j + 1])) <= 1e-8

    def test_weak_order_rejected(self, g):
        with pytest.raises(PreconditionError):
            derivative_coefficients(g, 2)


class TestAliasingResidual:
    def test_t10(self):
        ref = reference_coefficients(cheb_spec(10), 12)
        assert aliasing_residual(ref, 0, 5, 1) == pytest.approx(-2.0, abs=1e-12)

    def test_t3_no_aliased_energy(self):
        ref = reference_coefficients(cheb_spec(3), 23)
        assert aliasing_residual(ref, 3, 10, 1) == pytest.approx(0.0, abs=1e-12)

    def test_example51(self, g):
        ref = reference_coefficients(g, 260)
        diff = quadrature_coefficients(g, 20, 5)[5] - ref[5]
        residuals = [aliasing_residual(ref, 5, 20, terms) for terms in range(1, 7)]
        assert abs(diff - residuals[2]) <= 1e-6
        errors = [abs(diff - r) for r in residuals]
        assert all(b <= a for a, b in zip(errors, errors[1:]))

    def test_table_too_short(self, g):
        ref = reference_coefficients(g, 30)
        with pytest.raises(PreconditionError, match="c_65"):
            aliasing_residual(ref, 5, 10, 3)

    def test_k_range(self, g):
        ref = reference_coefficients(g, 30)
        with pytest.raises(PreconditionError):
            aliasing_residual(ref, 10, 5, 1)


J_LONG = 1200


@pytest.fixture(scope="module")
def long_reference(g):
    return reference_coefficients(g, J_LONG).values


@pytest.mark.parametrize("d,n", [(9, 10), (15, 10), (30, 50), (4, 3)])
def test_truncation_vs_quadrature_series(g, long_reference, d, n):
    """L1 distance between C_d and C_{d,n} is controlled by the aliased reference coefficients."""
    from chebdecay.quadrature import integrate

    j_max = J_LONG
    ref = long_reference
    exact = ChebSeries(g.interval, ref[: d + 1])
    approx = build_approximation(g, d, n)
    measured = integrate(lambda x: np.abs(exact(x) - approx(x)), -1.0, 1.0, initial_panels=d + 1).value

    total = 0.0
    j = 1
    while 2 * j * n + d <= j_max:
        total += np.sum(np.abs(ref[2 * j * n - d : 2 * j * n + d + 1]))
        j += 1
    # indices beyond j_max: sum_{i > J} 2V/(pi (i-1)(i+1)) <= 2V/(pi (J-1)) with V < 4.63
    tail = 2.0 * 4.63 / math.pi / (j_max - 1)
    assert measured <= g.interval.width * (total + tail)
