"""Channel model: noise law, transition density, capacity, input laws."""

import math

import numpy as np
import pytest
from scipy import integrate, stats

from aenshape import channel
from aenshape.channel import (
    ChannelParams,
    capacity,
    capacity_snr,
    capacity_snr_db,
    noise_pdf,
    optimal_input,
    sample_noise,
    surrogate_pdf,
    transition_log_density,
)


class FixedUniforms:
    """Generator stand-in yielding a prescribed uniform stream."""

    def __init__(self, values):
        self.values = np.asarray(values, dtype=float)

    def random(self, size=None):
        if size is None:
            return float(self.values[0])
        return self.values[:size]


class TestNoisePdf:
    def test_negative_support(self):
        assert noise_pdf(-1.0, 1.0) == 0.0
        assert noise_pdf(-1e-12, 0.3) == 0.0

    def test_at_zero(self):
        assert noise_pdf(0.0, 1.0) == 1.0
        assert noise_pdf(0.0, 0.25) == 4.0

    @pytest.mark.parametrize("mean", [0.1, 1.0, 7.0])
    def test_normalization(self, mean):
        total, _ = integrate.quad(lambda n: noise_pdf(n, mean), 0, np.inf)
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_rejects_bad_mean(self):
        with pytest.raises(ValueError):
            noise_pdf(1.0, 0.0)
        with pytest.raises(ValueError):
            noise_pdf(1.0, -2.0)


class TestSampleNoise:
    def test_inverse_cdf_points(self):
        assert sample_noise(FixedUniforms([0.0]), 1.0) == 0.0
        u = 1.0 - math.exp(-1.0)
        assert sample_noise(FixedUniforms([u]), 1.0) == pytest.approx(1.0, rel=1e-12)
        assert sample_noise(FixedUniforms([u]), 0.5) == pytest.approx(0.5, rel=1e-12)

    def test_law_of_large_numbers(self):
        rng = np.random.default_rng(7)
        draws = sample_noise(rng, 0.5, 10_000_000)
        se = draws.std(ddof=1) / math.sqrt(draws.size)
        assert abs(draws.mean() - 0.5) <= 4 * se
        assert draws.min() >= 0.0

    def test_kolmogorov_smirnov(self):
        # critical value at the 1e-3 level for n = 1e6
        rng = np.random.default_rng(123)
        draws = sample_noise(rng, 2.0, 1_000_000)
        stat = stats.kstest(draws, stats.expon(scale=2.0).cdf).statistic
        assert stat < 1.9495 / math.sqrt(draws.size)


class TestTransitionDensity:
    def test_zero_noise_point(self):
        assert transition_log_density(1.0, 1.0, 1.0) == 0.0

    def test_causality(self):
        assert transition_log_density(0.5, 1.0, 3.0) == -np.inf

    def test_direct_value(self):
        expected = math.log(3.0) - 6.0
        assert transition_log_density(3.0, 1.0, 3.0) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("x,gamma", [(0.0, 1.0), (1.5, 10.0), (0.2, 300.0)])
    def test_normalization(self, x, gamma):
        total, _ = integrate.quad(
            lambda y: math.exp(transition_log_density(y, x, gamma)),
            x, x + 80.0 / gamma)
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_rejects_bad_gamma(self):
        with pytest.raises(ValueError):
            transition_log_density(1.0, 0.0, 0.0)


class TestCapacity:
    def test_anchor_points(self):
        assert capacity(0.0) == 0.0
        assert capacity(1.0) == 1.0
        assert capacity(15.0) == 4.0

    def test_inverse_anchor_points(self):
        assert capacity_snr(0.0) == 0.0
        assert capacity_snr(1.0) == 1.0
        assert capacity_snr(4.0) == 15.0
        assert capacity_snr_db(4.0) == pytest.approx(11.760912590556813, rel=1e-14)

    def test_round_trip(self):
        rates = np.linspace(0.0, 12.0, 481)
        np.testing.assert_allclose(capacity(capacity_snr(rates)), rates, atol=1e-12)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            capacity(-0.1)
        with pytest.raises(ValueError):
            capacity_snr(-1.0)


class TestChannelParams:
    def test_db_conversion(self):
        params = ChannelParams.from_db(10.0)
        assert params.gamma == pytest.approx(10.0, rel=1e-14)
        assert params.noise_mean * params.gamma == 1.0
        assert params.snr_db == pytest.approx(10.0, rel=1e-14)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            ChannelParams(0.0)


class TestInputLaws:
    def test_point_mass(self):
        assert optimal_input(1.0).point_mass_at_zero == 0.5
        assert optimal_input(9.0).point_mass_at_zero == pytest.approx(0.1, rel=1e-14)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 20.0])
    def test_total_probability(self, gamma):
        dist = optimal_input(gamma)
        tail, _ = integrate.quad(dist.density, 0, np.inf)
        assert dist.point_mass_at_zero + tail == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 20.0])
    def test_unit_mean(self, gamma):
        dist = optimal_input(gamma)
        mean, _ = integrate.quad(lambda x: x * dist.density(x), 0, np.inf)
        assert mean == pytest.approx(1.0, abs=1e-9)

    def test_surrogate_even_and_normalized(self):
        xs = np.linspace(0.1, 30, 40)
        for gamma in (0.5, 3.0):
            np.testing.assert_allclose(surrogate_pdf(xs, gamma),
                                       surrogate_pdf(-xs, gamma), rtol=1e-15)
            total, _ = integrate.quad(lambda x: surrogate_pdf(x, gamma),
                                      -np.inf, np.inf)
            assert total == pytest.approx(1.0, abs=1e-9)

    def test_surrogate_at_zero(self):
        assert surrogate_pdf(0.0, 1.0) == 0.25

    def test_db_helpers(self):
        assert channel.db_to_linear(0.0) == 1.0
        assert channel.linear_to_db(100.0) == pytest.approx(20.0, rel=1e-14)
        with pytest.raises(ValueError):
            channel.linear_to_db(0.0)
