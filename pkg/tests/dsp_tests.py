import numpy as np
import pytest
from scipy.fft import idct

from conftest import SAMPLE_RATE
from utilidades.audio_utils import AudioClip
from utilidades.dsp_utils import AMIN, DSPUtils, StftConfig, Window
from utilidades.errors import FeatureError


class TestFraming:

    def test_frame_count(self):
        frames = DSPUtils.frame_signal(np.arange(10.0), 4, 2)
        assert frames.shape == (4, 4)
        assert np.array_equal(frames[1], [2.0, 3.0, 4.0, 5.0])

    def test_single_frame(self):
        assert DSPUtils.frame_signal(np.arange(10.0), 10, 3).shape == (1, 10)

    def test_hop_larger_than_signal_follows_formula(self):
        assert DSPUtils.frame_signal(np.arange(10.0), 4, 50).shape == (1, 4)

    def test_too_short(self):
        with pytest.raises(FeatureError):
            DSPUtils.frame_signal(np.arange(3.0), 4, 1)


class TestStft:

    def test_bin_centred_sine_is_concentrated(self):
        n_fft, k = 256, 10
        samples = np.sin(2 * np.pi * k * np.arange(n_fft) / n_fft)
        cfg = StftConfig(n_fft=n_fft, hop=n_fft, window=Window.RECTANGULAR, center_pad=False)
        spec = DSPUtils.stft(AudioClip(samples=samples, sample_rate=SAMPLE_RATE), cfg)

        assert spec.magnitudes.shape == (1, n_fft // 2 + 1)
        peak = spec.magnitudes[0, k]
        others = np.delete(spec.magnitudes[0], k)
        assert np.all(others < 1e-9 * peak)
        assert spec.bin_freqs[k] == pytest.approx(k * SAMPLE_RATE / n_fft)

    def test_parseval(self):
        rng = np.random.default_rng(3)
        x = rng.uniform(-1, 1, 2048)
        cfg = StftConfig(n_fft=2048, hop=2048, window="rectangular", center_pad=False)
        mags = DSPUtils.stft(AudioClip(samples=x, sample_rate=SAMPLE_RATE), cfg).magnitudes[0]

        full = mags[0] ** 2 + mags[-1] ** 2 + 2 * np.sum(mags[1:-1] ** 2)
        energy = np.sum(x ** 2)
        assert abs(full / 2048 - energy) / energy < 1e-6

    def test_silence(self):
        spec = DSPUtils.stft(AudioClip(samples=np.zeros(5000), sample_rate=SAMPLE_RATE))
        assert not spec.magnitudes.any()

    def test_shape_and_bins(self):
        spec = DSPUtils.stft(AudioClip(samples=np.zeros(2 * SAMPLE_RATE), sample_rate=SAMPLE_RATE))
        assert spec.magnitudes.shape == (1 + 2 * SAMPLE_RATE // 512, 1025)
        assert spec.frame_times[1] == pytest.approx(512 / SAMPLE_RATE)

    def test_scaling_is_linear_in_magnitude(self):
        rng = np.random.default_rng(5)
        x = rng.uniform(-0.5, 0.5, 6000)
        base = DSPUtils.stft(AudioClip(samples=x, sample_rate=SAMPLE_RATE)).magnitudes
        scaled = DSPUtils.stft(AudioClip(samples=-1.5 * x, sample_rate=SAMPLE_RATE)).magnitudes
        assert np.allclose(scaled, 1.5 * base, rtol=1e-9, atol=1e-12)

    def test_hann_localizes_energy(self):
        n_fft, k = 2048, 100
        t = np.arange(4 * n_fft)
        samples = np.sin(2 * np.pi * k * t / n_fft)
        power = DSPUtils.stft(AudioClip(samples=samples, sample_rate=SAMPLE_RATE)).power
        middle = power[power.shape[0] // 2]
        assert middle[k - 2:k + 3].sum() >= 0.85 * middle.sum()

    def test_empty_clip(self):
        with pytest.raises(FeatureError):
            DSPUtils.stft(AudioClip(samples=np.zeros(0), sample_rate=SAMPLE_RATE))

    def test_invalid_config(self):
        with pytest.raises(FeatureError):
            StftConfig(n_fft=1000)
        with pytest.raises(FeatureError):
            StftConfig(n_fft=256, hop=512)


class TestMelFilterbank:

    def test_single_filter_spans_range(self):
        fb = DSPUtils.mel_filterbank(1, 2048, SAMPLE_RATE)
        assert fb.n_mels == 1
        assert fb.weights[0, 0] == 0.0
        assert fb.weights[0].max() > 0.0

    def test_default_bank_has_no_empty_rows(self):
        fb = DSPUtils.mel_filterbank(128, 2048, SAMPLE_RATE)
        assert fb.weights.shape == (128, 1025)
        assert np.all(fb.weights.sum(axis=1) > 0)
        assert np.all(fb.weights >= 0)
        assert np.all(np.diff(fb.center_freqs) > 0)

    def test_bins_between_first_and_last_center_are_covered(self):
        fb = DSPUtils.mel_filterbank(40, 2048, SAMPLE_RATE)
        bin_freqs = np.arange(1025) * SAMPLE_RATE / 2048
        inside = (bin_freqs >= fb.center_freqs[0]) & (bin_freqs <= fb.center_freqs[-1])
        assert np.all(fb.weights[:, inside].sum(axis=0) > 0)

    def test_too_many_filters(self):
        with pytest.raises(FeatureError):
            DSPUtils.mel_filterbank(128, 64, SAMPLE_RATE)

    def test_bad_range(self):
        with pytest.raises(FeatureError):
            DSPUtils.mel_filterbank(10, 2048, SAMPLE_RATE, f_min=5000, f_max=4000)


class TestDct:

    def test_constant_column(self):
        coeffs = DSPUtils.dct_ii(np.full((16, 3), 2.0), 16)
        assert np.allclose(coeffs[0], 2.0 * np.sqrt(16), atol=1e-9)
        assert np.allclose(coeffs[1:], 0.0, atol=1e-9)

    def test_orthonormal_matrix(self):
        basis = DSPUtils.dct_ii(np.eye(32), 32)
        assert np.allclose(basis @ basis.T, np.eye(32), atol=1e-9)

    def test_inverse_and_energy(self):
        rng = np.random.default_rng(0)
        v = rng.normal(size=24)
        assert np.allclose(DSPUtils.dct_ii(idct(v, type=2, norm="ortho"), 24), v, atol=1e-9)
        coeffs = DSPUtils.dct_ii(v, 24)
        assert abs(np.sum(coeffs ** 2) - np.sum(v ** 2)) / np.sum(v ** 2) < 1e-9

    def test_truncation(self):
        assert DSPUtils.dct_ii(np.ones((8, 2)), 3).shape == (3, 2)
        with pytest.raises(FeatureError):
            DSPUtils.dct_ii(np.ones((8, 2)), 9)


def test_power_to_db():
    assert DSPUtils.power_to_db(1.0) == 0.0
    assert DSPUtils.power_to_db(0.0) == pytest.approx(10 * np.log10(AMIN))
    assert DSPUtils.power_to_db(0.0) == pytest.approx(-100.0)
    assert DSPUtils.power_to_db(100.0) == pytest.approx(20.0)
    assert np.allclose(DSPUtils.power_to_db(np.array([1.0, 10.0])), [0.0, 10.0])
