"""Constellation construction, breakpoints, labeling and serialization."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from aenshape import constellation
from aenshape.constellation import (
    BitLabeling,
    Constellation,
    alpha_breakpoints,
    from_csv,
    from_json,
    gen_log,
    gen_martinez,
    gen_uniform,
    gray_labels,
    tail_moment,
    tail_moment_full,
    to_csv,
    to_json,
)

# high-precision references for the power-law family at M=4, lam=1.618,
# computed by evaluating (i-1)**lam in 40-digit arithmetic and normalizing
MARTINEZ4_1618 = np.array([
    0.0,
    0.40060627967333748,
    1.2296578475241882,
    2.3697358728024743,
])

# ln(2/3), the unit-scale breakpoint magnitude for M=2
LN_2_3 = 0.40546510810816438


def unit_scale_density(t):
    return 0.5 * np.exp(-np.abs(t))


def centroid_symbols(m_symbols, scale=1.0):
    """Independent oracle: slice centroids of the shaping density by quadrature.

    scale > 0 stretches the density and its breakpoints; the normalized
    result must not depend on it.
    """
    alphas = scale * alpha_breakpoints(m_symbols)
    density = lambda t: unit_scale_density(t / scale) / scale
    kept = []
    for k in range(m_symbols - 1, 2 * m_symbols - 1):
        moment, _ = integrate.quad(lambda t: t * density(t), alphas[k], alphas[k + 1])
        kept.append((2 * m_symbols - 1) * moment)
    kept = np.asarray(kept)
    return kept / (math.fsum(kept.tolist()) / m_symbols)


class TestUniform:
    def test_m2(self):
        np.testing.assert_array_equal(gen_uniform(2).symbols, [0.0, 2.0])

    def test_m3(self):
        np.testing.assert_array_equal(gen_uniform(3).symbols, [0.0, 1.0, 2.0])

    def test_m4(self):
        np.testing.assert_allclose(gen_uniform(4).symbols,
                                   [0.0, 2 / 3, 4 / 3, 2.0], rtol=1e-15)

    def test_beta_is_spacing(self):
        for m in (2, 5, 17, 256):
            assert gen_uniform(m).beta == pytest.approx(2 / (m - 1), rel=1e-14)

    def test_too_small(self):
        with pytest.raises(ValueError):
            gen_uniform(1)


class TestMartinez:
    def test_lambda_one_is_uniform(self):
        np.testing.assert_allclose(gen_martinez(4, 1.0).symbols,
                                   gen_uniform(4).symbols, rtol=1e-15)

    def test_m2_any_lambda(self):
        for lam in (0.3, 1.618, 5.0):
            np.testing.assert_array_equal(gen_martinez(2, lam).symbols, [0.0, 2.0])

    def test_m4_golden_exponent(self):
        cons = gen_martinez(4, 1.618)
        np.testing.assert_allclose(cons.symbols, MARTINEZ4_1618, rtol=1e-14)
        assert cons.lam == 1.618
        assert cons.family == "martinez"

    def test_nonpositive_lambda(self):
        with pytest.raises(ValueError):
            gen_martinez(4, 0.0)
        with pytest.raises(ValueError):
            gen_martinez(4, -1.5)


class TestBreakpoints:
    def test_m2_values(self):
        alphas = alpha_breakpoints(2)
        assert alphas[0] == -np.inf and alphas[-1] == np.inf
        np.testing.assert_allclose(alphas[1:3], [-LN_2_3, LN_2_3], rtol=1e-15)

    @pytest.mark.parametrize("m", [2, 3, 4, 9, 64, 257])
    def test_antisymmetric(self, m):
        alphas = alpha_breakpoints(m)
        interior = alphas[1:-1]
        np.testing.assert_allclose(interior + interior[::-1], 0.0, atol=1e-12)
        assert np.all(np.diff(alphas) > 0)

    @pytest.mark.parametrize("m", [2, 3, 5, 16])
    def test_equal_mass_slices(self, m):
        alphas = alpha_breakpoints(m)
        for k in range(2 * m - 1):
            mass, _ = integrate.quad(unit_scale_density, alphas[k], alphas[k + 1])
            assert mass == pytest.approx(1.0 / (2 * m - 1), abs=1e-10)


class TestLogFamily:
    def test_m2(self):
        np.testing.assert_array_equal(gen_log(2).symbols, [0.0, 2.0])

    def test_m4_against_centroid_oracle(self):
        oracle = centroid_symbols(4)
        np.testing.assert_allclose(gen_log(4).symbols, oracle, rtol=1e-9, atol=1e-12)
        # frozen oracle digits for the record
        np.testing.assert_allclose(
            oracle, [0.0, 0.39650566673241121, 1.0009884295814381, 2.6025059036861506],
            rtol=1e-9, atol=1e-12)

    @pytest.mark.parametrize("m", [2, 3, 5, 8, 16, 33, 64])
    def test_closed_form_matches_centroids(self, m):
        np.testing.assert_allclose(gen_log(m).symbols, centroid_symbols(m),
                                   rtol=1e-9, atol=1e-12)

    def test_density_scale_does_not_matter(self):
        # the SNR-dependent prefactor of the shaping density rescales the
        # breakpoints and centroids but cancels in the normalization
        np.testing.assert_allclose(centroid_symbols(8, scale=3.7),
                                   centroid_symbols(8), rtol=1e-9, atol=1e-12)

    @pytest.mark.parametrize("m", [2, 4, 1024, 2048])
    def test_first_symbol_is_zero(self, m):
        assert gen_log(m).symbols[0] == 0.0

    @pytest.mark.parametrize("m", [2, 3, 7, 64])
    def test_reindex_identity(self, m):
        i = np.arange(2, m + 2)
        np.testing.assert_allclose(tail_moment(m, i),
                                   tail_moment_full(m, i + m - 1), atol=1e-12)

    def test_tail_moment_limit_is_zero(self):
        assert tail_moment(16, 17) == 0.0
        assert tail_moment_full(16, 32) == 0.0


class TestNormalization:
    @given(
        m=st.integers(min_value=2, max_value=300),
        family=st.sampled_from(["uniform", "martinez", "log"]),
        lam=st.floats(min_value=0.1, max_value=3.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_invariants(self, m, family, lam):
        if family == "uniform":
            cons = gen_uniform(m)
        elif family == "martinez":
            cons = gen_martinez(m, lam)
        else:
            cons = gen_log(m)
        symbols = cons.symbols
        assert symbols[0] == 0.0
        assert np.all(np.diff(symbols) > 0)
        assert abs(math.fsum(symbols.tolist()) / m - 1.0) <= 1e-12

    def test_unit_mean_at_largest_size(self):
        for cons in (gen_uniform(4096), gen_martinez(4096, 1.618), gen_log(4096)):
            mean = math.fsum(cons.symbols.tolist()) / 4096
            assert abs(mean - 1.0) <= 1e-12

    def test_size_limits(self):
        with pytest.raises(ValueError):
            gen_log(4097)
        with pytest.raises(ValueError):
            gen_martinez(1, 2.0)

    def test_prescale_invariance(self):
        # scaling the raw shape before normalization is a no-op afterwards
        raw = np.arange(16, dtype=float) ** 1.618
        for scale in (1e-6, 3.0, 1e8):
            scaled = raw * scale
            a = raw / (math.fsum(raw.tolist()) / raw.size)
            b = scaled / (math.fsum(scaled.tolist()) / scaled.size)
            np.testing.assert_allclose(a, b, rtol=1e-13)

    def test_constructor_rejects_bad_sets(self):
        with pytest.raises(ValueError):
            Constellation(family="uniform", symbols=np.array([0.0, 1.0, 1.0]), beta=1.0)
        with pytest.raises(ValueError):
            Constellation(family="uniform", symbols=np.array([0.1, 1.9]), beta=1.0)
        with pytest.raises(ValueError):
            Constellation(family="uniform", symbols=np.array([0.0, 2.5]), beta=1.0)
        with pytest.raises(ValueError):
            Constellation(family="log", symbols=np.array([0.0, 2.0]), beta=1.0, lam=2.0)


class TestGrayLabels:
    def test_m2(self):
        np.testing.assert_array_equal(gray_labels(2).codewords(), [0, 1])

    def test_m4(self):
        assert gray_labels(4).bitstrings() == ["00", "01", "11", "10"]

    def test_m8(self):
        assert gray_labels(8).bitstrings() == [
            "000", "001", "011", "010", "110", "111", "101", "100"]

    @pytest.mark.parametrize("m", [3, 6, 12, 100])
    def test_non_power_of_two_rejected(self, m):
        with pytest.raises(ValueError):
            gray_labels(m)

    @given(bits=st.integers(min_value=1, max_value=11))
    @settings(max_examples=11, deadline=None)
    def test_gray_structure(self, bits):
        labeling = gray_labels(2 ** bits)
        codes = labeling.codewords()
        assert sorted(codes.tolist()) == list(range(2 ** bits))
        hamming = (labeling.bits[1:] != labeling.bits[:-1]).sum(axis=1)
        np.testing.assert_array_equal(hamming, 1)

    def test_constructor_rejects_non_gray(self):
        bits = np.array([[0, 0], [0, 1], [1, 0], [1, 1]], dtype=np.uint8)
        with pytest.raises(ValueError):
            BitLabeling(bits=bits)
        dup = np.array([[0, 0], [0, 1], [0, 0], [0, 1]], dtype=np.uint8)
        with pytest.raises(ValueError):
            BitLabeling(bits=dup)


class TestSerialization:
    @pytest.mark.parametrize("family,m", [("uniform", 5), ("martinez", 8), ("log", 16)])
    def test_csv_round_trip(self, family, m):
        cons = {"uniform": gen_uniform,
                "martinez": lambda n: gen_martinez(n, 1.618),
                "log": gen_log}[family](m)
        symbols, labels = from_csv(to_csv(cons))
        np.testing.assert_array_equal(symbols, cons.symbols)
        assert labels is None

    def test_csv_round_trip_with_labels(self):
        cons = gen_log(8)
        labeling = gray_labels(8)
        symbols, labels = from_csv(to_csv(cons, labeling))
        np.testing.assert_array_equal(symbols, cons.symbols)
        np.testing.assert_array_equal(labels.bits, labeling.bits)

    def test_json_round_trip(self):
        cons = gen_martinez(16, 1.618)
        labeling = gray_labels(16)
        back, labels = from_json(to_json(cons, labeling))
        np.testing.assert_array_equal(back.symbols, cons.symbols)
        assert back.family == cons.family
        assert back.beta == cons.beta
        assert back.lam == cons.lam
        np.testing.assert_array_equal(labels.bits, labeling.bits)

    def test_csv_header_first(self):
        text = to_csv(gen_uniform(2))
        assert text.splitlines()[0] == "index,amplitude"

    def test_label_size_mismatch(self):
        with pytest.raises(ValueError):
            to_csv(gen_uniform(4), gray_labels(8))
