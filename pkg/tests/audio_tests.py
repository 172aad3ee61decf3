import numpy as np
import pytest
import soundfile as sf

from conftest import SAMPLE_RATE, sine
from utilidades.audio_utils import AudioClip, AudioUtils
from utilidades.errors import AudioFormatError


def test_silence_roundtrip(tmp_path):
    path = tmp_path / "silence.wav"
    AudioUtils.write_wav(AudioClip(samples=np.zeros(SAMPLE_RATE), sample_rate=SAMPLE_RATE), path)

    clip = AudioUtils.read_wav(path)
    assert clip.sample_rate == SAMPLE_RATE
    assert len(clip) == SAMPLE_RATE
    assert not clip.samples.any()


def test_sine_roundtrip_within_quantization(tmp_path):
    path = tmp_path / "sine.wav"
    original = sine(440.0)
    AudioUtils.write_wav(original, path)

    clip = AudioUtils.read_wav(path)
    assert np.max(np.abs(clip.samples - original.samples)) < 2.0 ** -14


def test_write_is_pcm16_mono(tmp_path):
    path = tmp_path / "two_seconds.wav"
    AudioUtils.write_wav(sine(440.0, 2.0, amplitude=0.5), path)

    info = sf.info(str(path))
    assert info.subtype == "PCM_16"
    assert info.channels == 1
    #44100 frames x 2 bytes = 88200 data bytes
    assert info.frames * 2 == 88200


def test_stereo_is_downmixed_by_mean(tmp_path):
    path = tmp_path / "stereo.wav"
    x = np.sin(np.linspace(0, 40 * np.pi, 4000)).astype(np.float32) * 0.8
    sf.write(str(path), np.stack([x, -x], axis=1), SAMPLE_RATE, subtype="FLOAT")

    clip = AudioUtils.read_wav(path)
    assert len(clip) == 4000
    assert np.allclose(clip.samples, 0.0)


def test_empty_clip_cannot_be_written(tmp_path):
    with pytest.raises(AudioFormatError):
        AudioUtils.write_wav(AudioClip(samples=np.zeros(0), sample_rate=SAMPLE_RATE), tmp_path / "empty.wav")


def test_clipping_is_rejected_at_ingest():
    with pytest.raises(AudioFormatError):
        AudioClip(samples=np.array([0.0, 1.5]), sample_rate=SAMPLE_RATE)
    with pytest.raises(AudioFormatError):
        AudioClip(samples=np.array([0.0, np.nan]), sample_rate=SAMPLE_RATE)


def test_read_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        AudioUtils.read_wav(tmp_path / "missing.wav")

    garbage = tmp_path / "garbage.wav"
    garbage.write_bytes(b"this is not a riff file at all")
    with pytest.raises(AudioFormatError):
        AudioUtils.read_wav(garbage)


def test_resample_identity_copies_samples():
    clip = sine(300.0, 0.5)
    same = AudioUtils.resample(clip, SAMPLE_RATE)
    assert same.sample_rate == SAMPLE_RATE
    assert np.array_equal(same.samples, clip.samples)
    assert same.samples is not clip.samples


def test_resample_halves_rate_and_keeps_the_sine():
    clip = sine(100.0, 1.0, sample_rate=44100, amplitude=0.9)
    out = AudioUtils.resample(clip, 22050)

    assert out.sample_rate == 22050
    assert abs(len(out) - 22050) <= 1
    ideal = sine(100.0, len(out) / 22050, sample_rate=22050, amplitude=0.9).samples[:len(out)]
    assert np.corrcoef(out.samples, ideal)[0, 1] > 0.999


def test_resample_keeps_dc_level():
    clip = AudioClip(samples=np.full(16000, 0.25), sample_rate=16000)
    out = AudioUtils.resample(clip, SAMPLE_RATE)
    assert abs(len(out) - SAMPLE_RATE) <= 1
    assert np.allclose(out.samples, 0.25, atol=2.0 ** -15)


def test_resample_rejects_bad_rate():
    with pytest.raises(AudioFormatError):
        AudioUtils.resample(sine(100.0, 0.1), 0)
