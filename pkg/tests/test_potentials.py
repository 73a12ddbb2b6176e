import numpy as np
import pytest

from lcrp.errors import DimensionMismatch, DomainError
from lcrp.lct import ComplexGrid, Grid1D, LCTParams, make_matrix
from lcrp.potentials import (
    apply_lclo,
    apply_lcrp,
    gamma_norm,
    laplacian_symbol,
    lcrp_direct,
    log_potential_direct,
    riesz_symbol,
    symbol_multiply_in_lct_domain,
)

from .conftest import random_unimodular
from .oracles import square_indicator_potential


def _grids(n=64, s1=0.3, s2=0.5):
    return Grid1D(n, s1), Grid1D(n, s2)


class TestSymbols:
    def test_zero_order_is_all_ones(self):
        s = riesz_symbol(_grids(), 7.0, 20.0, 0.0)
        assert np.array_equal(s.values, np.ones((64, 64)))
        amp = laplacian_symbol(_grids(), 7.0, 20.0, 0.0)
        assert np.array_equal(amp.values, np.ones((64, 64)))

    def test_unit_radius_value(self):
        # at |u~| = 1 the attenuator equals (2 pi)^(-beta)
        g1, g2 = Grid1D(8, 1.0), Grid1D(8, 1.0)
        s = riesz_symbol((g1, g2), 1.0, 1.0, 1.0)
        # u = (1, 0) lives at index (5, 4)
        assert s.values[5, 4] == pytest.approx(1.0 / (2 * np.pi))

    def test_laplacian_plugin_value(self):
        g1, g2 = Grid1D(8, 2.0), Grid1D(8, 2.0)
        s = laplacian_symbol((g1, g2), 1.0, 1.0, 1.0)
        # |u~| = 2 at index (5, 4)
        assert s.values[5, 4] == pytest.approx(4 * np.pi)

    def test_dc_bin_regularized_to_one(self):
        s = riesz_symbol(_grids(), 7.0, 20.0, 1.3)
        assert s.values[32, 32] == 1.0
        s2 = laplacian_symbol(_grids(), 7.0, 20.0, 1.3)
        assert s2.values[32, 32] == 1.0

    def test_reciprocity_bin_by_bin(self):
        r = riesz_symbol(_grids(), 7.0, 20.0, 0.8)
        l = laplacian_symbol(_grids(), 7.0, 20.0, 0.8)
        assert np.max(np.abs(r.values * l.values - 1.0)) <= 1e-12

    def test_all_positive_finite(self):
        s = riesz_symbol(_grids(), -7.0, 20.0, 1.9)
        assert np.all(np.isfinite(s.values)) and np.all(s.values > 0)

    def test_small_order_tends_to_one(self):
        g1, g2 = _grids()
        for beta in (0.1, 0.01, 0.001):
            s = riesz_symbol((g1, g2), 7.0, 20.0, beta)
            off_dc = np.delete(s.values.ravel(), s.values.size // 2 + 32)
            assert np.max(np.abs(off_dc - 1.0)) <= 12.0 * beta

    def test_order_domain_checked(self):
        with pytest.raises(DomainError):
            riesz_symbol(_grids(), 7.0, 20.0, 2.0)
        with pytest.raises(DomainError):
            laplacian_symbol(_grids(), 7.0, 20.0, -0.1)


class TestSymbolMultiply:
    def test_identity_with_ones(self):
        g1, g2 = _grids(16)
        f = ComplexGrid(np.arange(256, dtype=complex).reshape(16, 16), g1, g2)
        s = riesz_symbol((g1, g2), 7.0, 20.0, 0.0)
        assert np.array_equal(symbol_multiply_in_lct_domain(f, s).values, f.values)

    def test_reciprocal_restores_exactly(self):
        g1, g2 = _grids(16)
        rng = np.random.default_rng(8)
        f = ComplexGrid(rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16)), g1, g2)
        r = riesz_symbol((g1, g2), 7.0, 20.0, 1.1)
        l = laplacian_symbol((g1, g2), 7.0, 20.0, 1.1)
        out = symbol_multiply_in_lct_domain(symbol_multiply_in_lct_domain(f, r), l)
        assert np.max(np.abs(out.values - f.values)) <= 1e-12 * np.max(np.abs(f.values))

    def test_commutes_with_scalar(self):
        g1, g2 = _grids(16)
        f = ComplexGrid(np.ones((16, 16), complex), g1, g2)
        s = riesz_symbol((g1, g2), 7.0, 20.0, 0.7)
        lhs = symbol_multiply_in_lct_domain(ComplexGrid(3j * f.values, g1, g2), s).values
        rhs = 3j * symbol_multiply_in_lct_domain(f, s).values
        assert np.array_equal(lhs, rhs)

    def test_dimension_mismatch(self):
        g1, g2 = _grids(16)
        f = ComplexGrid(np.ones((16, 16), complex), g1, g2)
        s = riesz_symbol((Grid1D(32, 0.3), Grid1D(32, 0.5)), 7.0, 20.0, 0.7)
        with pytest.raises(DimensionMismatch):
            symbol_multiply_in_lct_domain(f, s)


class TestOperatorPair:
    def test_zero_order_round_trip_is_identity(self):
        rng = np.random.default_rng(11)
        g = Grid1D(64, 1.0)
        f = ComplexGrid(rng.normal(size=(64, 64)).astype(complex), g, g)
        p = LCTParams(make_matrix(6, 7, 5, 6), make_matrix(1, 20, 0, 1))
        out = apply_lcrp(f, p, 0.0)
        assert np.max(np.abs(out.values - f.values)) <= 1e-8

    def test_inverse_pairing_random_parameters(self):
        rng = np.random.default_rng(12)
        g = Grid1D(128, 1.0)
        for _ in range(5):
            p = LCTParams(random_unimodular(rng), random_unimodular(rng))
            beta = rng.uniform(0.05, 1.95)
            f = ComplexGrid(
                rng.normal(size=(128, 128)) + 1j * rng.normal(size=(128, 128)), g, g
            )
            out = apply_lclo(apply_lcrp(f, p, beta), p, beta)
            assert np.max(np.abs(out.values - f.values)) <= 1e-6

    def test_zero_field(self):
        g = Grid1D(32, 1.0)
        zero = ComplexGrid(np.zeros((32, 32), complex), g, g)
        p = LCTParams(make_matrix(6, 7, 5, 6), make_matrix(1, 20, 0, 1))
        assert np.all(apply_lclo(zero, p, 0.9).values == 0)

    def test_small_order_near_identity(self):
        rng = np.random.default_rng(13)
        g = Grid1D(64, 1.0)
        f = ComplexGrid(rng.normal(size=(64, 64)).astype(complex), g, g)
        p = LCTParams(make_matrix(6, 7, 5, 6), make_matrix(1, 20, 0, 1))
        errs = [
            np.max(np.abs(apply_lclo(f, p, gamma).values - f.values)) for gamma in (0.1, 0.01)
        ]
        assert errs[1] < errs[0]

    def test_spatial_variance_ordered_in_order(self):
        # wide Gaussian, strongly scaling matrix pair: the amplitude variance
        # of the fractional integral grows monotonically with the order
        n = 256
        g = Grid1D(n, 1.0)
        c = g.coords()
        xx, yy = np.meshgrid(c, c, indexing="ij")
        gauss = np.exp(-(xx**2 + yy**2) / (2 * 50.0**2)).astype(complex)
        field = ComplexGrid(gauss, g, g)
        p = LCTParams(make_matrix(20, 399, 1, 20), make_matrix(40, 15.99, 100, 40))
        variances = [np.abs(apply_lcrp(field, p, b).values).var() for b in (0.5, 1.0, 1.5)]
        assert variances[0] < variances[1] < variances[2]


class TestGammaNorm:
    def test_half_integer_value(self):
        # Gamma(1/2) cancels at beta = 1, n = 2
        assert gamma_norm(1.0, 2) == pytest.approx(1.0 / (2 * np.pi), rel=1e-12)

    @pytest.mark.parametrize(
        "beta,n,expected",
        [
            # frozen from a 30-digit arbitrary-precision evaluation
            (0.5, 2, 0.076074279862467708),
            (1.5, 2, 0.33296793550170026),
            (0.01, 2, 0.0015897055519036196),
            (1.0, 3, 0.050660591821168886),
        ],
    )
    def test_high_precision_values(self, beta, n, expected):
        assert gamma_norm(beta, n) == pytest.approx(expected, rel=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            gamma_norm(0.0, 2)
        with pytest.raises(DomainError):
            gamma_norm(2.0, 2)


class TestDirectQuadrature:
    def test_zero_field_gives_zero(self):
        x = np.linspace(-1, 1, 33)
        v = lcrp_direct(np.zeros((33, 33)), x, x, 0.3, 2.0, 0.1, 3.0, 0.9, (0.1, 0.0))
        assert v == 0

    def test_zero_chirp_reduces_to_classical_kernel(self):
        x = np.linspace(-2, 2, 65)
        xx, yy = np.meshgrid(x, x, indexing="ij")
        f = np.exp(-(xx**2 + yy**2))
        with_b = lcrp_direct(f, x, x, 0.0, 5.0, 0.0, -3.0, 0.7, (0.2, -0.1))
        unit_b = lcrp_direct(f, x, x, 0.0, 1.0, 0.0, 1.0, 0.7, (0.2, -0.1))
        assert with_b == pytest.approx(unit_b, abs=1e-9)
        assert abs(with_b.imag) <= 1e-12

    def test_unit_square_indicator_matches_closed_form(self):
        # indicator of the unit square at its center, order 1, no chirp:
        # the integral is 4 asinh(1), normalized by 1/(2 pi)
        x = np.linspace(-0.5, 0.5, 129)
        v = lcrp_direct(np.ones((129, 129)), x, x, 0.0, 1.0, 0.0, 1.0, 1.0, (0.0, 0.0))
        assert v.real == pytest.approx(4.0 * np.arcsinh(1.0) / (2 * np.pi), abs=1e-8)

    def test_agrees_with_polygon_fan(self):
        from lcrp.limits import Polygon, riesz_indicator

        x = np.linspace(-0.5, 0.5, 129)
        v = lcrp_direct(np.ones((129, 129)), x, x, 0.0, 1.0, 0.0, 1.0, 1.0, (0.0, 0.0))
        square = Polygon(0.5 * np.array([[-1, -1], [1, -1], [1, 1], [-1, 1]], float))
        assert v.real == pytest.approx(riesz_indicator(square, (0.0, 0.0), 1.0), abs=1e-5)

    def test_point_must_be_interior(self):
        x = np.linspace(-1, 1, 33)
        with pytest.raises(DomainError):
            lcrp_direct(np.ones((33, 33)), x, x, 0.0, 1.0, 0.0, 1.0, 0.5, (2.0, 0.0))

    def test_grid_operator_matches_direct_on_coarse_field(self):
        # 16x16 sampled Gaussian: the fast multiplier sandwich agrees with
        # windowed quadrature at interior grid points to 5e-2 relative
        n, extent, sigma, beta = 16, 12.0, 2.4, 0.2
        b = 8.0
        a = 0.08 * b
        d = 4.0
        cc = (a * d - 1.0) / b
        grid = Grid1D(n, 2 * extent / n)
        co = grid.coords()
        xx, yy = np.meshgrid(co, co, indexing="ij")
        f = np.exp(-(xx**2 + yy**2) / (2 * sigma**2))
        p = LCTParams(make_matrix(a, b, cc, d), make_matrix(a, b, cc, d))
        fast = apply_lcrp(ComplexGrid(f.astype(complex), grid, grid), p, beta)
        fine = np.linspace(-extent, extent, 257)
        fx, fy = np.meshgrid(fine, fine, indexing="ij")
        ff = np.exp(-(fx**2 + fy**2) / (2 * sigma**2))
        for i, j in [(8, 8), (7, 9), (6, 8)]:
            direct = lcrp_direct(ff, fine, fine, a, b, a, b, beta, (co[i], co[j]))
            assert abs(fast.values[i, j] - direct) / abs(direct) <= 5e-2

    def test_log_potential_constant(self):
        # indicator of a disc of radius R at the center: the log potential is
        # (1/2pi) * 2pi * integral_0^R r ln(1/r) dr = R^2/2 (ln(1/R) + 1/2)
        x = np.linspace(-1, 1, 257)
        xx, yy = np.meshgrid(x, x, indexing="ij")
        disc = (xx**2 + yy**2 <= 0.8**2).astype(float)
        v = log_potential_direct(disc, x, x, 0.0, 1.0, 0.0, 1.0, (0.0, 0.0))
        expected = 0.8**2 / 2.0 * (np.log(1 / 0.8) + 0.5)
        # the sampled disc boundary is staircase-shaped; tolerance reflects it
        assert v.real == pytest.approx(expected, rel=2e-2)


def test_fan_matches_independent_polar_oracle():
    from lcrp.limits import Polygon, riesz_indicator

    square = Polygon(np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]))
    # frozen outputs of the 1D adaptive-quadrature oracle over ray lengths
    assert riesz_indicator(square, (0.3, -0.2), 0.5) == pytest.approx(
        0.9909256986579505, abs=1e-8
    )
    assert riesz_indicator(square, (0.3, -0.2), 0.25) == pytest.approx(
        0.9884908433454747, abs=1e-8
    )
    # and the oracle itself, recomputed live
    assert riesz_indicator(square, (0.1, 0.4), 0.4) == pytest.approx(
        square_indicator_potential((0.1, 0.4), 0.4), abs=1e-8
    )
