"""Constellation, power split, combining, two-hop transmission and error counting."""

import math

import numpy as np
import pytest

from dafsim.core.errors import ArgumentError, PreconditionError
from dafsim.core.scenarios import Scheme
from dafsim.modules.mathkernel import sample_complex_gaussian, stream
from dafsim.modules.phylink import (
    CombinerWeights,
    ConstellationSpec,
    FrameGains,
    FrameObservation,
    PowerAllocation,
    amplification_factor,
    ber_montecarlo,
    bits_to_indices,
    combine,
    combine_frame,
    count_bit_errors,
    detect_indices,
    detect_min_ed,
    differential_encode,
    differential_encode_indices,
    gray_label,
    indices_to_bits,
    scheme_weights,
    simulate_frame,
    transmit,
    weights_cdd,
    weights_optimum,
    weights_tvd,
)
from dafsim.modules.phylink.montecarlo import _batch_sizes, _bit_errors

SEED = 11


class TestConstellation:
    def test_dmin(self) -> None:
        assert ConstellationSpec(2).dmin2 == pytest.approx(4.0)
        assert ConstellationSpec(4).dmin2 == pytest.approx(2.0)
        assert ConstellationSpec(8).bits_per_symbol == 3

    def test_symbols_unit_modulus(self) -> None:
        np.testing.assert_allclose(np.abs(ConstellationSpec(8).symbols), 1.0)

    @pytest.mark.parametrize("M", [1, 3, 6])
    def test_rejects_non_power_of_two(self, M: int) -> None:
        with pytest.raises(ArgumentError):
            ConstellationSpec(M)

    def test_gray_labels(self) -> None:
        np.testing.assert_array_equal(gray_label(np.arange(8)), [0, 1, 3, 2, 6, 7, 5, 4])

    def test_bits_to_indices_msb_first(self) -> None:
        np.testing.assert_array_equal(bits_to_indices([0, 0, 0, 1, 1, 1, 1, 0], 2), [0, 1, 2, 3])

    def test_indices_to_bits_inverts(self) -> None:
        idx = np.array([3, 0, 7, 5, 2])
        np.testing.assert_array_equal(bits_to_indices(indices_to_bits(idx, 3), 3), idx)

    def test_bits_validation(self) -> None:
        with pytest.raises(ArgumentError):
            bits_to_indices([0, 1, 1], 2)
        with pytest.raises(ArgumentError):
            bits_to_indices([0, 2], 2)


class TestDifferentialEncoding:
    def test_examples(self) -> None:
        np.testing.assert_allclose(differential_encode([1, 1, 1]), [1, 1, 1, 1])
        np.testing.assert_allclose(differential_encode([-1, -1]), [1, -1, 1])
        np.testing.assert_allclose(differential_encode([1j, 1j, -1]), [1, 1j, -1, 1], atol=1e-15)

    def test_ratio_property(self) -> None:
        v = np.exp(2j * np.pi * stream(SEED).integers(0, 8, 50) / 8)
        s = differential_encode(v)
        assert s[0] == 1
        np.testing.assert_allclose(np.abs(s), 1.0)
        np.testing.assert_allclose(s[1:] / s[:-1], v, atol=1e-12)

    def test_index_form_agrees(self) -> None:
        idx = stream(SEED).integers(0, 4, 30)
        v = np.exp(2j * np.pi * idx / 4)
        np.testing.assert_allclose(differential_encode_indices(idx, 4), differential_encode(v), atol=1e-12)

    def test_non_unit_symbol(self) -> None:
        with pytest.raises(ArgumentError):
            differential_encode([1, 0.5])


class TestDetection:
    def test_dbpsk(self) -> None:
        assert detect_min_ed(0.9 - 0.1j, ConstellationSpec(2)) == 1
        assert detect_min_ed(-0.2 + 3j, ConstellationSpec(2)) == pytest.approx(-1.0, abs=1e-12)

    def test_tie_goes_to_smaller_index(self) -> None:
        spec = ConstellationSpec(4)
        assert detect_min_ed((1 + 1j) * 0.7, spec) == pytest.approx(1.0)
        assert int(detect_indices((-1 + 1j) * 2.0, 4)) == 1

    def test_agrees_with_exhaustive_scan(self) -> None:
        rng = stream(SEED)
        zeta = sample_complex_gaussian(rng, 4.0, 10_000)
        for M in (2, 4, 8):
            symbols = ConstellationSpec(M).symbols
            brute = np.argmin(np.abs(zeta[:, np.newaxis] - symbols[np.newaxis, :]), axis=1)
            np.testing.assert_array_equal(detect_indices(zeta, M), brute)


class TestPower:
    def test_amplification_examples(self) -> None:
        assert amplification_factor(51.0, 50.0) == pytest.approx(1.0)
        assert amplification_factor(25.0, 50.0) == pytest.approx(0.7001, abs=1e-4)
        assert amplification_factor(0.0, 50.0) == 0.0

    def test_negative_power(self) -> None:
        with pytest.raises(ArgumentError):
            amplification_factor(-1.0, 1.0)

    def test_default_split(self) -> None:
        alloc = PowerAllocation.from_db(20.0, 2)
        assert alloc.P0 == pytest.approx(50.0)
        assert alloc.Pi == pytest.approx((25.0, 25.0))
        assert alloc.amplification[0] == pytest.approx(math.sqrt(25 / 51))

    def test_no_relays_keep_everything(self) -> None:
        alloc = PowerAllocation.split(10.0, 0)
        assert alloc.P0 == 10.0 and alloc.Pi == ()

    def test_budget_must_balance(self) -> None:
        with pytest.raises(ArgumentError):
            PowerAllocation(total_P=10.0, P0=5.0, Pi=(4.0,))


class TestWeights:
    def test_cdd(self) -> None:
        w = weights_cdd([1.0, 0.7001])
        assert w.b0 == 0.5
        np.testing.assert_allclose(w.bi, [0.25, 0.33557], atol=1e-4)

    def test_tvd_reduces_to_cdd_for_static_links(self) -> None:
        A = [0.3, 0.9, 1.4]
        tvd, cdd = weights_tvd(1.0, [1.0, 1.0, 1.0], A, 123.0), weights_cdd(A)
        assert tvd.b0 == cdd.b0
        np.testing.assert_allclose(tvd.bi, cdd.bi, rtol=1e-15)

    def test_tvd_values(self) -> None:
        assert weights_tvd(0.0, [0.5], [1.0], 80.0).b0 == 0.0
        a, P0 = 0.99975, 50.0
        b0 = weights_tvd(a, [], [], P0).b0
        assert b0 == pytest.approx(a / (1 + a**2 + (1 - a**2) * P0), rel=1e-15)
        assert b0 == pytest.approx(0.49383, abs=1e-5)

    def test_optimum_limits(self) -> None:
        w = weights_optimum(1.0, [1.0], [1.0], 100.0, np.array([1.0 + 0j]))
        assert w.bi[0] == pytest.approx(0.25)
        dead = weights_optimum(0.9, [0.8], [1.0], 100.0, np.array([0j]))
        assert dead.bi[0] == pytest.approx(0.8 / (1 + 0.64))

    def test_optimum_needs_genie(self) -> None:
        with pytest.raises(PreconditionError):
            weights_optimum(0.9, [0.8], [1.0], 100.0, None)

    def test_optimum_per_symbol_axes(self) -> None:
        h = sample_complex_gaussian(stream(SEED), 1.0, (2, 5, 7))
        w = weights_optimum(0.9, [0.8, 0.7], [1.0, 0.5], 10.0, h)
        assert w.bi.shape == (2, 5, 7)
        assert np.all(w.bi > 0)


class TestCombining:
    def test_single_branch(self) -> None:
        obs = FrameObservation(y0=np.array([1.0 + 0j, 1j]), yi=np.zeros((0, 2), dtype=complex))
        w = CombinerWeights(scheme=Scheme.CDD, b0=1.0, bi=np.zeros(0))
        assert combine(obs, w, 1) == 1j

    def test_noiseless_static_channel(self, static_config) -> None:
        alloc = PowerAllocation.split(100.0, 2)
        bits = stream(SEED).integers(0, 2, 2 * 20)
        L = 21
        ones = FrameGains(h_sd=np.ones(L), h_sr=np.ones((2, L)), h_rd=np.ones((2, L)))
        obs = simulate_frame(static_config, alloc, bits, SEED, noise_variance=0.0, gains=ones)
        s = differential_encode_indices(bits_to_indices(bits, 2), 4)
        for i, A in enumerate(alloc.amplification):
            np.testing.assert_allclose(obs.yi[i], A * math.sqrt(alloc.P0) * s, atol=1e-12)

        w = weights_tvd(1.0, [1.0, 1.0], alloc.amplification, alloc.P0)
        gain = (w.b0 + sum(b * A**2 for b, A in zip(w.bi, alloc.amplification))) * alloc.P0
        v = s[1:] / s[:-1]
        for k in (1, 7, 20):
            assert combine(obs, w, k) == pytest.approx(gain * v[k - 1], abs=1e-9)
        detected = detect_indices(combine_frame(obs.y0, obs.yi, w), 4)
        np.testing.assert_array_equal(detected, bits_to_indices(bits, 2))

    def test_optimum_combine_uses_genie(self, static_config) -> None:
        alloc = PowerAllocation.split(100.0, 2)
        obs = simulate_frame(static_config, alloc, [0, 1, 1, 0], SEED)
        w = weights_optimum(1.0, [1.0, 1.0], alloc.amplification, alloc.P0, np.ones(2))
        assert isinstance(combine(obs, w, 2), complex)
        blind = FrameObservation(y0=obs.y0, yi=obs.yi)
        with pytest.raises(PreconditionError):
            combine(blind, w, 2)

    def test_tvd_and_cdd_differ_when_fading(self) -> None:
        alloc = PowerAllocation.split(1000.0, 1)
        tvd = weights_tvd(0.9, [0.8], alloc.amplification, alloc.P0)
        cdd = weights_cdd(alloc.amplification)
        y0 = np.array([1.0 + 0.5j, -0.3 + 1j])
        yi = np.array([[0.2 - 1j, 1.1 + 0.1j]])
        assert combine_frame(y0, yi, tvd)[0] != pytest.approx(combine_frame(y0, yi, cdd)[0])

    def test_index_out_of_range(self) -> None:
        obs = FrameObservation(y0=np.ones(3, dtype=complex), yi=np.ones((1, 3), dtype=complex))
        w = weights_cdd([1.0])
        with pytest.raises(ArgumentError):
            combine(obs, w, 0)
        with pytest.raises(ArgumentError):
            combine(obs, w, 3)


class TestTransmission:
    def test_frame_needs_a_data_symbol(self, static_config) -> None:
        with pytest.raises(ArgumentError):
            simulate_frame(static_config, PowerAllocation.split(10.0, 2), [], SEED)

    def test_reproducible(self, scenario_ii) -> None:
        alloc = PowerAllocation.split(100.0, 2)
        a = simulate_frame(scenario_ii, alloc, [1, 0, 1, 1], SEED)
        b = simulate_frame(scenario_ii, alloc, [1, 0, 1, 1], SEED)
        np.testing.assert_array_equal(a.yi, b.yi)
        assert a.length == 5

    def test_relay_noise_variance_given_relay_gain(self) -> None:
        N = 1_000_000
        alloc = PowerAllocation.split(100.0, 1)
        h_rd = 0.8 + 0.3j
        gains = FrameGains(h_sd=np.ones(N), h_sr=np.ones((1, N)), h_rd=np.full((1, N), h_rd))
        obs = transmit(np.zeros(N, dtype=complex), gains, alloc, stream(SEED))
        A = alloc.amplification[0]
        assert np.mean(np.abs(obs.yi[0]) ** 2) == pytest.approx(A**2 * abs(h_rd) ** 2 + 1.0, rel=0.01)

    def test_relay_snr_given_relay_gain(self) -> None:
        N = 1_000_000
        alloc = PowerAllocation.split(100.0, 1)
        h_rd = 0.8 + 0.3j
        gains = FrameGains(h_sd=np.ones(N), h_sr=np.ones((1, N)), h_rd=np.full((1, N), h_rd))
        obs = transmit(np.ones(N, dtype=complex), gains, alloc, stream(SEED))
        A = alloc.amplification[0]
        signal = A * h_rd * math.sqrt(alloc.P0)
        sigma2 = np.mean(np.abs(obs.yi[0] - signal) ** 2)
        rho = A**2 * alloc.P0 * abs(h_rd) ** 2 / (A**2 * abs(h_rd) ** 2 + 1.0)
        assert abs(signal) ** 2 / sigma2 == pytest.approx(rho, rel=0.01)


class TestMonteCarlo:
    def test_gray_bit_errors(self) -> None:
        assert _bit_errors(np.array([0, 0, 3]), np.array([2, 1, 3]), 2) == 3

    def test_batch_sizes(self) -> None:
        assert _batch_sizes(1000, 100, 3) == [3, 3, 3, 1]

    def test_noiseless_static_is_error_free(self, static_config) -> None:
        alloc = PowerAllocation.from_db(10.0, 2)
        counts = count_bit_errors(
            static_config, alloc, ["tvd", "cdd", "optimum"], 10_000, SEED, noise_variance=0.0
        )
        assert counts.bits >= 10_000
        assert all(e == 0 for e in counts.errors.values())

    def test_deterministic_and_worker_independent(self, short_frames) -> None:
        cfg = short_frames("scenario_II", 1, 2)
        alloc = PowerAllocation.from_db(5.0, 1)
        kwargs = dict(max_errors=0, frames_per_batch=5, key=(3,))
        one = count_bit_errors(cfg, alloc, [Scheme.TVD, Scheme.CDD], 20_000, SEED, workers=1, **kwargs)
        again = count_bit_errors(cfg, alloc, [Scheme.TVD, Scheme.CDD], 20_000, SEED, workers=1, **kwargs)
        three = count_bit_errors(cfg, alloc, [Scheme.TVD, Scheme.CDD], 20_000, SEED, workers=3, **kwargs)
        assert one == again == three
        assert one.batches == 40 and not one.stopped_early

    def test_early_stop_is_worker_independent(self, short_frames) -> None:
        cfg = short_frames("scenario_III", 1, 2)
        alloc = PowerAllocation.from_db(0.0, 1)
        kwargs = dict(max_errors=30, frames_per_batch=1)
        one = count_bit_errors(cfg, alloc, ["tvd", "cdd"], 100_000, SEED, workers=1, **kwargs)
        two = count_bit_errors(cfg, alloc, ["tvd", "cdd"], 100_000, SEED, workers=2, **kwargs)
        assert one == two
        assert one.stopped_early
        assert one.bits < 100_000
        assert all(e >= 30 for e in one.errors.values())

    def test_common_random_numbers(self, short_frames) -> None:
        cfg = short_frames("scenario_II", 2, 2)
        alloc = PowerAllocation.from_db(10.0, 2)
        both = count_bit_errors(cfg, alloc, ["tvd", "cdd"], 10_000, SEED, max_errors=0)
        alone = count_bit_errors(cfg, alloc, ["cdd"], 10_000, SEED, max_errors=0)
        assert both.errors[Scheme.CDD] == alone.errors[Scheme.CDD]

    def test_ber_montecarlo(self, short_frames) -> None:
        cfg = short_frames("scenario_I", 1, 4)
        ber = ber_montecarlo(cfg, PowerAllocation.from_db(5.0, 1), Scheme.TVD, 10_000, SEED)
        assert 0.0 < ber < 0.5

    def test_argument_checks(self, short_frames) -> None:
        cfg = short_frames("scenario_I", 2, 2)
        with pytest.raises(ArgumentError):
            count_bit_errors(cfg, PowerAllocation.from_db(5.0, 2), ["tvd"], 9_999, SEED)
        with pytest.raises(ArgumentError):
            count_bit_errors(cfg, PowerAllocation.from_db(5.0, 1), ["tvd"], 10_000, SEED)
        with pytest.raises(ValueError):
            count_bit_errors(cfg, PowerAllocation.from_db(5.0, 2), ["mrc"], 10_000, SEED)

    def test_scheme_weights(self, scenario_ii) -> None:
        alloc = PowerAllocation.from_db(30.0, 2)
        assert scheme_weights(scenario_ii, alloc, Scheme.CDD).b0 == 0.5
        tvd = scheme_weights(scenario_ii, alloc, Scheme.TVD)
        assert tvd.b0 < 0.5 and np.all(tvd.bi > 0)
        assert scheme_weights(scenario_ii, alloc, Scheme.OPTIMUM).scheme is Scheme.OPTIMUM
