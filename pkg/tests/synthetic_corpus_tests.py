import numpy as np
import pytest

from configs.label_config import Label
from extract.synthetic_corpus import SyntheticCorpusGenerator
from transform.feature_transform import FeatureTransformer
from utilidades.errors import SegmentationError


@pytest.fixture(scope="module")
def corpus():
    return SyntheticCorpusGenerator().generate(6, 6, seed=11)


def test_counts_and_layout(corpus):
    assert [s.label for s in corpus] == [Label.BEE] * 6 + [Label.NOBEE] * 6
    assert corpus[0].source_id == "synth_bee_00000"
    assert corpus[-1].source_id == "synth_nobee_00005"
    for segment in corpus:
        assert len(segment.clip) == 44100
        assert segment.clip.sample_rate == 22050
        assert 0.2 - 1e-12 <= np.max(np.abs(segment.clip.samples)) <= 0.9 + 1e-12


def test_same_seed_same_corpus(corpus):
    again = SyntheticCorpusGenerator().generate(6, 6, seed=11)
    assert all(np.array_equal(a.clip.samples, b.clip.samples) for a, b in zip(corpus, again))
    other = SyntheticCorpusGenerator().generate(6, 6, seed=12)
    assert not np.array_equal(corpus[0].clip.samples, other[0].clip.samples)


def test_prefix_is_stable_when_counts_grow(corpus):
    larger = SyntheticCorpusGenerator().generate(8, 2, seed=11)
    for i in range(6):
        assert np.array_equal(larger[i].clip.samples, corpus[i].clip.samples)
    assert np.array_equal(larger[8].clip.samples, corpus[6].clip.samples)


def test_nobee_is_brighter_on_average(corpus):
    table = FeatureTransformer(n_mfcc=20).build_table(corpus)
    centroid = table.column("spectral_centroid")
    y = table.y
    assert centroid[y == 1].mean() > centroid[y == 0].mean()


def test_counts_must_be_positive():
    with pytest.raises(SegmentationError):
        SyntheticCorpusGenerator().generate(0, 3, seed=0)
