import io
from contextlib import redirect_stdout
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from cli import main
from models import ModelKind, TrainedModel
from evaluate import MixedValidator
from read import ArtifactReader
from transform.feature_transform import FeatureTransformer

pytestmark = pytest.mark.slow

SEED = "42"
SPECTRAL_SHAPE = ["spectral_centroid", "spectral_bandwidth", "rolloff", "zero_crossing_rate"]
CSV_OUTPUTS = ["features_selected.csv", "selection_report.csv", "mlp_train.csv", "forest_train.csv",
               "mlp_eval.csv", "mixval.csv"]


def run(*argv) -> str:
    out = io.StringIO()
    with redirect_stdout(out):
        assert main([str(arg) for arg in argv]) == 0
    return out.getvalue()


def last_value(stdout: str) -> float:
    return float(stdout.strip().split("\t")[-1])


def run_pipeline(root: Path, corpus: Path, threads: int) -> dict:
    """select -> train mlp / forest -> evaluate -> mixval with every default setting and seed 42."""
    common = ["--quiet", "--seed", SEED, "--threads", threads, "--output-dir", root]
    selected = root / "features_selected.csv"
    run("select", "--features", corpus / "features.csv", *common)
    mlp = run("train", "--features", selected, "--out", root / "mlp.txt", "--report", root / "mlp_train.csv", *common)
    forest = run("train", "--features", selected, "--model", "forest", "--out", root / "forest.txt",
                 "--report", root / "forest_train.csv", *common)
    run("evaluate", "--model", root / "mlp.txt", "--features", selected, "--holdout",
        "--out", root / "mlp_eval.csv", *common)
    mixval = run("mixval", "--model", root / "mlp.txt", "--bee", corpus / "heldout" / "00000_synth_bee_00000.wav",
                 "--nobee", corpus / "heldout" / "00001_synth_nobee_00000.wav", "--out", root / "mixval.csv", *common)
    return {"mlp": last_value(mlp), "forest": last_value(forest), "mixval": last_value(mixval)}


@pytest.fixture(scope="module")
def corpus(tmp_path_factory) -> Path:
    """400 + 400 synthetic segments (seed 42), their 134-feature table and one held-out pair of sources."""
    root = tmp_path_factory.mktemp("corpus")
    common = ["--quiet", "--seed", SEED, "--output-dir", root]
    run("synth", "--n-bee", 400, "--n-nobee", 400, *common)
    run("extract", "--segments", root / "segments", *common)
    run("synth", "--n-bee", 1, "--n-nobee", 1, "--out", root / "heldout", "--quiet", "--seed", 43)
    return root


@pytest.fixture(scope="module")
def first_run(corpus, tmp_path_factory) -> tuple:
    root = tmp_path_factory.mktemp("run1")
    return root, run_pipeline(root, corpus, threads=1)


def test_holdout_accuracy(first_run):
    _, results = first_run
    assert results["mlp"] >= 0.95
    assert results["forest"] >= 0.95
    assert min(results["mlp"], results["forest"]) > 0.5


def test_selected_table(first_run):
    root, _ = first_run
    header = pd.read_csv(root / "features_selected.csv", nrows=0).columns.tolist()
    assert len(header) == 2 + 26
    assert "hyper activation str sigmoid" in (root / "mlp.txt").read_text(encoding="utf-8")
    assert "hyper optimizer str adamax" in (root / "mlp.txt").read_text(encoding="utf-8")


def test_spectral_shape_features_rank_in_the_top_26(first_run):
    root, _ = first_run
    report = pd.read_csv(root / "selection_report.csv")
    assert len(report) == 134
    top = report['feature'].tolist()[:26]
    for name in SPECTRAL_SHAPE:
        assert name in top, name


def test_mixed_validation(first_run, corpus):
    _, results = first_run
    assert results["mixval"] >= 0.8

    #a model that always says bee is right on the bee, don't-care and bee-majority waves only
    parameters = {"feature": np.array([-1]), "threshold": np.array([0.0]), "left": np.array([-1]),
                  "right": np.array([-1]), "value": np.array([0.0]), "n_samples": np.array([1])}
    always_bee = TrainedModel(kind=ModelKind.TREE, hyperparams={}, feature_names=("rmse", "mfcc1"),
                              parameters=parameters)
    bee_src, nobee_src = ArtifactReader().read_segments(corpus / "heldout")
    report = MixedValidator(FeatureTransformer()).run_mixed_validation(always_bee, bee_src, nobee_src)
    assert report.matching_accuracy == 0.6


def test_repeated_run_is_byte_identical(first_run, corpus, tmp_path):
    root, results = first_run
    again = run_pipeline(tmp_path, corpus, threads=2)
    assert again == results
    for name in CSV_OUTPUTS + ["mlp.txt", "forest.txt"]:
        assert (tmp_path / name).read_bytes() == (root / name).read_bytes(), name
