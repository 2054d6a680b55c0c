import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from halflap.driver import apply_to_function
from halflap.extensions import Extension
from halflap.kernel import half_lap_mode_even, half_lap_mode_odd
from halflap.reference import (
    REFERENCES,
    argsinh,
    dawson,
    get_reference,
    oracle_mode_series,
    oracle_quadrature,
    ref_arctan,
    ref_erf,
    ref_inv_sqrt,
    ref_odd_sqrt,
    ref_quartic,
)

reals = st.floats(-1e3, 1e3)


def dawson_quad(x):
    # D(x) = int_0^x exp((t - x)(t + x)) dt, integrand peaks at t = x
    with mpmath.workdps(40):
        x = mpmath.mpf(x)
        pts = [0, x] if abs(x) < 6 else [0, x - 3 * mpmath.sign(x), x]
        return float(mpmath.quad(lambda t: mpmath.exp((t - x) * (t + x)), pts))


class TestArgsinh:
    @given(reals)
    def test_matches_numpy(self, x):
        assert argsinh(x) == pytest.approx(np.arcsinh(x), rel=1e-14, abs=1e-300)

    @given(reals)
    def test_odd(self, x):
        assert argsinh(-x) == -argsinh(x)

    def test_large(self):
        assert argsinh(-1e150) == pytest.approx(-np.log(2e150))


class TestDawson:
    def test_zero(self):
        assert dawson(0.0) == 0.0

    def test_asymptotic(self):
        assert abs(dawson(50.0) * 100 - 1) < 1e-3

    def test_half(self):
        assert abs(dawson(0.5) - dawson_quad(0.5)) < 1e-12

    @pytest.mark.parametrize("x", [1e-8, 0.1, 0.5, 1, 2, 3.3, 5, 7.5, 10, 20, 35, 50, -2, -50])
    def test_quadrature_oracle(self, x):
        ref = dawson_quad(x)
        assert abs(dawson(x) - ref) <= 1e-13 * abs(ref)

    def test_differential_identity(self):
        x = np.linspace(-5, 5, 201)
        h = 1e-3
        d = (-dawson(x + 2 * h) + 8 * dawson(x + h) - 8 * dawson(x - h) + dawson(x - 2 * h)) / (12 * h)
        assert np.max(np.abs(d - (1 - 2 * x * dawson(x)))) < 1e-10


class TestClosedForms:
    def test_quartic(self):
        assert ref_quartic(0.0) == pytest.approx(1 / np.sqrt(2))
        assert ref_quartic(1.0) == 0.0
        assert ref_quartic(2.0) == pytest.approx(-99 / (289 * np.sqrt(2)))

    def test_inv_sqrt(self):
        assert ref_inv_sqrt(0.0) == pytest.approx(2 / np.pi)

    @given(reals)
    def test_inv_sqrt_even(self, x):
        assert ref_inv_sqrt(-x) == pytest.approx(ref_inv_sqrt(x), rel=1e-14, abs=1e-300)

    def test_odd_sqrt(self):
        assert ref_odd_sqrt(0.0) == 0.0
        ref = (2 * np.sqrt(2) + 2 * np.log(1 + np.sqrt(2))) / (np.pi * 2 * np.sqrt(2))
        assert ref_odd_sqrt(1.0) == pytest.approx(ref)

    @given(reals)
    def test_odd_sqrt_odd(self, x):
        assert ref_odd_sqrt(-x) == -ref_odd_sqrt(x)

    def test_arctan(self):
        assert ref_arctan(0.0) == 0.0
        assert ref_arctan(1.0) == 0.5
        assert ref_arctan(1e8) * 1e8 == pytest.approx(1.0)

    @given(reals)
    def test_arctan_odd(self, x):
        assert ref_arctan(-x) == -ref_arctan(x)

    def test_erf(self):
        assert ref_erf(0.0) == 0.0
        assert ref_erf(1.0) == pytest.approx(4 / np.pi * dawson_quad(1.0), rel=1e-13)

    @given(reals)
    def test_erf_odd(self, x):
        assert ref_erf(-x) == -ref_erf(x)


class TestAgainstQuadrature:
    """Closed forms checked against the principal-value integral in s (L = 1)."""

    @pytest.mark.parametrize("x", [-2.0, 0.3, 3.0])
    def test_inv_sqrt(self, x):
        # (1 + x^2)^(-1/2) = sin(s)
        s = np.arctan2(1.0, x)
        assert abs(oracle_quadrature(np.cos, s) - ref_inv_sqrt(x)) < 1e-3

    @pytest.mark.parametrize("x", [-1.5, 0.0, 0.7, 4.0])
    def test_odd_sqrt(self, x):
        # x (1 + x^2)^(-1/2) = cos(s)
        s = np.arctan2(1.0, x)
        assert abs(oracle_quadrature(lambda e: -np.sin(e), s) - ref_odd_sqrt(x)) < 1e-3

    @pytest.mark.parametrize("x", [-3.0, -0.5, 0.0, 1.0, 2.5])
    def test_arctan(self, x):
        # arctan(cot s) = pi/2 - s
        s = np.arctan2(1.0, x)
        assert abs(oracle_quadrature(lambda e: -np.ones_like(e), s) - ref_arctan(x)) < 1e-3

    def test_arctan_vanishes_at_origin(self):
        # odd input, so the half Laplacian is zero at x = 0 (not 1)
        assert abs(oracle_quadrature(lambda e: -np.ones_like(e), np.pi / 2)) < 1e-12

    @pytest.mark.parametrize("x", [0.0, 0.8, -2.0])
    def test_quartic(self, x):
        L = 1.1
        s = np.arctan2(L, x)

        def u_s(e):
            xe = L / np.tan(e)
            return -4 * xe**3 / (1 + xe**4) ** 2 * (-L / np.sin(e) ** 2)

        assert abs(oracle_quadrature(u_s, s, L) - ref_quartic(x)) < 1e-3


class TestPairs:
    def test_names(self):
        assert set(REFERENCES) == {"quartic", "inv_sqrt", "arctan", "odd_sqrt", "erf"}

    def test_recommended(self):
        assert get_reference("arctan").recommended_extension is Extension.SMOOTH
        assert get_reference("inv_sqrt").recommended_extension is Extension.ODD

    def test_unknown(self):
        with pytest.raises(ValueError, match="unknown function"):
            get_reference("sinc")

    @pytest.mark.parametrize("name, n, L, tol", [
        ("quartic", 4096, 1.1, 1e-12),
        ("inv_sqrt", 16, 1.0, 1e-13),
        ("odd_sqrt", 16, 1.0, 1e-13),
        ("erf", 64, 5.0, 1e-13),
        ("arctan", 256, 1.0, 1e-12),
    ])
    def test_driver(self, name, n, L, tol):
        ref = get_reference(name)
        x, res = apply_to_function(ref.f, n, L, ref.recommended_extension)
        assert np.max(np.abs(res.values - ref.exact(x))) <= tol

    @pytest.mark.parametrize("name", sorted(REFERENCES))
    def test_exact_finite(self, name):
        x = np.array([-1e300, -1e8, -1.0, 0.0, 1e-300, 2.0, 1e8, 1e300])
        assert np.all(np.isfinite(REFERENCES[name].exact(x)))


class TestModeSeries:
    def test_centre(self):
        assert abs(oracle_mode_series(1, np.pi / 2, 1.0, 10**6) - 2j / np.pi) < 1e-9

    def test_conjugate(self):
        a = oracle_mode_series(1, 1.2, 1.0, 10**4)
        b = oracle_mode_series(-1, 1.2, 1.0, 10**4)
        assert abs(a - np.conj(b)) < 1e-14

    def test_truncation_rate(self):
        s, k = np.pi / 2, 3
        errs = [abs(oracle_mode_series(k, s, 1.0, n) - half_lap_mode_odd(k, s)) for n in (100, 200, 400, 800)]
        for a, b in zip(errs, errs[1:]):
            assert a / b > 3.5

    def test_array(self):
        s = np.array([0.5, 1.5])
        np.testing.assert_allclose(oracle_mode_series(5, s, 2.0, 10**5), half_lap_mode_odd(5, s, 2.0), atol=1e-8)

    @pytest.mark.parametrize("k, L, n_max", [(2, 1.0, 10), (1.5, 1.0, 10), (1, 0.0, 10), (1, 1.0, 0)])
    def test_invalid(self, k, L, n_max):
        with pytest.raises(ValueError):
            oracle_mode_series(k, 1.0, L, n_max)


class TestQuadrature:
    def test_even_mode(self):
        got = oracle_quadrature(lambda e: 2j * np.exp(2j * e), 1.0)
        assert abs(got - half_lap_mode_even(2, 1.0)) < 1e-3

    def test_constant(self):
        assert abs(oracle_quadrature(lambda e: np.zeros_like(e), 0.9)) < 1e-3

    def test_sin(self):
        assert abs(oracle_quadrature(np.cos, np.pi / 2) - 2 / np.pi) < 1e-3

    @pytest.mark.parametrize("m", [1000, 1001, 10**5])
    def test_never_nan(self, m):
        assert np.isfinite(oracle_quadrature(np.cos, np.pi / 2, 1.0, m))

    def test_odd_mode(self):
        got = oracle_quadrature(lambda e: 3j * np.exp(3j * e), 0.4, 1.7)
        assert abs(got - half_lap_mode_odd(3, 0.4, 1.7)) < 1e-3

    @pytest.mark.parametrize("s", [0.0, np.pi, 4.0])
    def test_outside(self, s):
        with pytest.raises(ValueError):
            oracle_quadrature(np.cos, s)
