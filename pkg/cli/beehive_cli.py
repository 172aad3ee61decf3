"""
Command-line entry point for the beehive sound pipeline.

    segment -> extract -> select -> train -> evaluate -> predict / mixval
    sweep, featcount, compare: model-selection experiments
    synth: synthetic bee / nobee corpus

Settings resolve as defaults < ``--config`` file < flags. Primary results go to stdout, status
lines and progress bars to stderr. Exit status: 0 success, 1 usage or configuration error,
2 data error (bad or missing input, training failure).
"""

__all__ = ['BeehiveArgumentParser', 'BeehiveCLI', 'build_parser', 'main']

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.append(str(PROJECT_ROOT))

from configs.label_config import Label, PREFERRED_FEATURES
from configs.pipeline_config import PipelineConfig
from evaluate import DataSplitter, Evaluator, ExperimentRunner, MixedValidator
from evaluate.experiments import DEFAULT_ACTIVATIONS, DEFAULT_OPTIMIZERS
from extract.segment_extractor import Segment, SegmentExtractor
from extract.synthetic_corpus import SyntheticCorpusGenerator
from load import LocalArtifactLoader
from models import CLASSIFIERS, MlpSpec, build_classifier, predict
from read import ArtifactReader
from transform.feature_selection import FeatureSelector, SelectionMethod
from transform.feature_transform import FeatureTransformer
from utilidades.audio_utils import AudioUtils
from utilidades.errors import BeehiveError, ConfigError
from utilidades.progress_utils import log_status, log_step

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
USAGE_CODE = "E_USAGE"


class BeehiveArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors print ``E_USAGE: <message>`` and exit 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{USAGE_CODE}: {message}\n")


def _csv_list(raw: str) -> List[str]:
    return [part.strip().lower() for part in raw.split(",") if part.strip()]


def build_parser() -> BeehiveArgumentParser:
    common = BeehiveArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file; flags override its values")
    common.add_argument("--seed", type=int, help="seed for every random stream (config default 0)")
    common.add_argument("--threads", type=int, help="worker threads, 0 = auto (config default 0)")
    common.add_argument("--quiet", action="store_true", default=None, help="hide status lines and progress bars")
    common.add_argument("--output-dir", dest="output_dir", help="directory for default output paths (config default ./output)")

    parser = BeehiveArgumentParser(prog="beehive", description="Beehive bee / nobee sound classification pipeline.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=BeehiveArgumentParser)
    defaults = dict(parents=[common], formatter_class=argparse.ArgumentDefaultsHelpFormatter)

    p = sub.add_parser("segment", help="cut annotated recordings into labeled 2 s segments", **defaults)
    p.add_argument("--wav", action="append", required=True, help="recording; repeat for several files")
    p.add_argument("--annotations", action="append", required=True, help="annotation TSV, one per --wav, same order")
    p.add_argument("--out", help="segment directory (default <output-dir>/segments)")
    p.add_argument("--sample-rate", dest="sample_rate", type=int, help="pipeline sample rate (config default 22050)")
    p.add_argument("--block-seconds", dest="block_seconds", type=float, help="block length (config default 2.0)")

    p = sub.add_parser("extract", help="segments -> feature table CSV", **defaults)
    p.add_argument("--segments", required=True, help="segment directory or its manifest.csv")
    p.add_argument("--out", help="feature CSV (default <output-dir>/features.csv)")

    p = sub.add_parser("select", help="rank features and write a reduced table", **defaults)
    p.add_argument("--features", required=True, help="feature table CSV")
    p.add_argument("--k", dest="k_features", type=int, help="features to keep (config default 26)")
    p.add_argument("--by-score", dest="select_by_name", action="store_false", default=None,
                   help="keep the k best-scoring features instead of the preferred named set")
    p.add_argument("--method", dest="selection_method", choices=[m.value for m in SelectionMethod],
                   help="ranking statistic (config default anova_f)")
    p.add_argument("--report", help="selection report CSV (default <output-dir>/selection_report.csv)")
    p.add_argument("--out", help="reduced feature CSV (default <output-dir>/features_selected.csv)")

    for name, help_text in (("train", "train a model on the stratified training split"),
                            ("compare", "holdout and k-fold accuracy of several model kinds")):
        p = sub.add_parser(name, help=help_text, **defaults)
        p.add_argument("--features", required=True, help="feature table CSV")
        p.add_argument("--activation", help="mlp activation (config default sigmoid)")
        p.add_argument("--optimizer", help="mlp optimizer (config default adamax)")
        p.add_argument("--epochs", type=int, help="mlp training epochs (config default 1000)")
        p.add_argument("--batch-size", dest="batch_size", type=int, help="mlp batch size (config default 128)")
        p.add_argument("--learning-rate", dest="learning_rate", type=float, help="mlp learning rate (config default 0.001)")
        p.add_argument("--n-trees", dest="n_trees", type=int, help="forest size (config default 100)")
        p.add_argument("--criterion", choices=["gini", "entropy"], help="tree split criterion (config default gini)")
        p.add_argument("--max-depth", dest="max_depth", help="tree depth limit or none (config default none)")
        p.add_argument("--test-fraction", dest="test_fraction", type=float, help="holdout fraction (config default 0.2)")
        if name == "train":
            p.add_argument("--model", choices=[k.value for k in CLASSIFIERS], help="model kind (config default mlp)")
            p.add_argument("--out", help="model file (default <output-dir>/model.txt)")
            p.add_argument("--report", help="holdout report CSV (default <output-dir>/train_report.csv)")
        else:
            p.add_argument("--models", type=_csv_list, default=[k.value for k in CLASSIFIERS],
                           help="comma-separated model kinds")
            p.add_argument("--kfold", type=int, help="cross-validation folds, 0 skips (config default 10)")
            p.add_argument("--out", help="comparison CSV (default <output-dir>/comparison.csv)")

    p = sub.add_parser("evaluate", help="score a trained model on a feature table", **defaults)
    p.add_argument("--model", dest="model_path", required=True, help="model file")
    p.add_argument("--features", required=True, help="feature table CSV")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--holdout", action="store_true", help="score only the held-out split of the table")
    mode.add_argument("--kfold", dest="cv_folds", type=int, nargs="?", const=10, default=None,
                      help="stratified k-fold cross-validation of the model's settings")
    p.add_argument("--test-fraction", dest="test_fraction", type=float, help="holdout fraction (config default 0.2)")
    p.add_argument("--out", help="report CSV (default <output-dir>/eval_report.csv)")

    p = sub.add_parser("predict", help="label every block of a recording", **defaults)
    p.add_argument("--model", dest="model_path", required=True, help="model file")
    p.add_argument("--wav", required=True, help="recording")

    p = sub.add_parser("mixval", help="validate on mixed bee / nobee waves", **defaults)
    p.add_argument("--model", dest="model_path", required=True, help="model file")
    p.add_argument("--bee", required=True, help="bee source wav (first block is used)")
    p.add_argument("--nobee", required=True, help="nobee source wav (first block is used)")
    p.add_argument("--out", help="per-case CSV (default <output-dir>/mixed_validation.csv)")

    p = sub.add_parser("sweep", help="mlp accuracy per activation x optimizer", **defaults)
    p.add_argument("--features", required=True, help="feature table CSV")
    p.add_argument("--activations", type=_csv_list, default=list(DEFAULT_ACTIVATIONS), help="comma-separated activations")
    p.add_argument("--optimizers", type=_csv_list, default=list(DEFAULT_OPTIMIZERS), help="comma-separated optimizers")
    p.add_argument("--epochs", type=int, help="epochs per cell (config default 1000)")
    p.add_argument("--out", help="grid CSV (default <output-dir>/sweep_grid.csv)")

    p = sub.add_parser("featcount", help="mlp accuracy on 26, 27 and 28 features", **defaults)
    p.add_argument("--features", required=True, help="full feature table CSV")
    p.add_argument("--epochs", type=int, help="mlp training epochs (config default 1000)")
    p.add_argument("--out", help="CSV (default <output-dir>/feature_count.csv)")

    p = sub.add_parser("synth", help="generate a synthetic bee / nobee corpus", **defaults)
    p.add_argument("--n-bee", dest="n_bee", type=int, default=400, help="bee segments")
    p.add_argument("--n-nobee", dest="n_nobee", type=int, default=400, help="nobee segments")
    p.add_argument("--out", help="segment directory (default <output-dir>/segments)")

    return parser


class BeehiveCLI:
    """Runs one subcommand with a resolved PipelineConfig."""

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.quiet = config.quiet
        self.loader = LocalArtifactLoader(config.output_dir, quiet=config.quiet)
        self.reader = ArtifactReader(quiet=config.quiet)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "BeehiveCLI":
        config = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
        overrides = {key: getattr(args, key) for key in PipelineConfig.field_names() if hasattr(args, key)}
        return cls(config.merged(overrides))

    def _out(self, path: Optional[str], artifact_type: str, suffix: str = ".csv") -> Path:
        return Path(path) if path else self.loader.default_path(artifact_type, suffix)

    def _transformer(self) -> FeatureTransformer:
        cfg = self.config
        return FeatureTransformer(sample_rate=cfg.sample_rate, stft_config=cfg.stft_config(), n_mels=cfg.n_mels,
                                  n_mfcc=cfg.n_mfcc, rolloff_pct=cfg.rolloff_pct, threads=cfg.threads,
                                  quiet=self.quiet)

    def _first_block(self, wav: str, label: Label) -> Segment:
        clip = AudioUtils.read_wav(wav)
        if clip.sample_rate != self.config.sample_rate:
            clip = AudioUtils.resample(clip, self.config.sample_rate)
        offset, block, n_real = SegmentExtractor.blocks(clip, self.config.block_seconds)[0]
        return Segment(clip=block, label=label, source_id=Path(wav).stem, offset=offset, n_source_samples=n_real)

    def run(self, args: argparse.Namespace) -> int:
        return getattr(self, f"cmd_{args.command}")(args)

    def cmd_segment(self, args: argparse.Namespace) -> int:
        if len(args.wav) != len(args.annotations):
            raise ConfigError(f"got {len(args.wav)} --wav but {len(args.annotations)} --annotations")
        extractor = SegmentExtractor(self.config.sample_rate, self.config.block_seconds, quiet=self.quiet)
        segments = []
        for step, (wav, annotations) in enumerate(zip(args.wav, args.annotations), start=1):
            log_step(step, len(args.wav), f"segment {Path(wav).name}", self.quiet)
            segments.extend(extractor.extract_file(wav, annotations))
        manifest = self.loader.write_segments(segments, self._out(args.out, 'segments', ""))
        print(manifest)
        return EXIT_OK

    def cmd_synth(self, args: argparse.Namespace) -> int:
        generator = SyntheticCorpusGenerator(self.config.sample_rate, self.config.block_seconds, quiet=self.quiet)
        segments = generator.generate(args.n_bee, args.n_nobee, self.config.seed)
        manifest = self.loader.write_segments(segments, self._out(args.out, 'segments', ""))
        print(manifest)
        return EXIT_OK

    def cmd_extract(self, args: argparse.Namespace) -> int:
        segments = self.reader.read_segments(args.segments)
        table = self._transformer().build_table(segments)
        print(self.loader.save_feature_table(table, self._out(args.out, 'features')))
        return EXIT_OK

    def cmd_select(self, args: argparse.Namespace) -> int:
        cfg = self.config
        table = self.reader.read_feature_table(args.features)
        selector = FeatureSelector(threads=cfg.threads, quiet=self.quiet)
        report = selector.rank_features(table, SelectionMethod(cfg.selection_method))

        if cfg.select_by_name:
            if cfg.k_features > len(PREFERRED_FEATURES):
                raise ConfigError(f"the preferred set holds {len(PREFERRED_FEATURES)} features; "
                                  f"use --by-score for k={cfg.k_features}")
            reduced = selector.select_by_name(table, PREFERRED_FEATURES[:cfg.k_features])
        else:
            reduced = selector.select_k_best(table, cfg.k_features, report.method, report=report)

        self.loader.save_selection_report(report, self._out(args.report, 'selection_report'))
        print(self.loader.save_feature_table(reduced, self._out(args.out, 'features', "_selected.csv")))
        return EXIT_OK

    def cmd_train(self, args: argparse.Namespace) -> int:
        cfg = self.config
        table = self.reader.read_feature_table(args.features)
        train, test = DataSplitter(quiet=self.quiet).stratified_split(table, cfg.test_fraction, cfg.seed)
        log_status(f"🏋️  Training {cfg.model} on {len(train)} rows, holding out {len(test)}", self.quiet)
        model = build_classifier(cfg.model, cfg.hyperparams_for(), threads=cfg.threads, quiet=self.quiet).fit(train)
        report = Evaluator(threads=cfg.threads, quiet=self.quiet).evaluate(model, test, seed=cfg.seed)

        self.loader.save_model(model, self._out(args.out, 'model', ".txt"))
        self.loader.save_eval_report(report, self._out(args.report, 'train_report'))
        print(f"{model.kind.value}\tholdout_accuracy\t{report.accuracy:.6f}")
        return EXIT_OK

    def cmd_evaluate(self, args: argparse.Namespace) -> int:
        cfg = self.config
        model = self.reader.read_model(args.model_path)
        table = self.reader.read_feature_table(args.features, model.feature_names)
        evaluator = Evaluator(threads=cfg.threads, quiet=self.quiet)

        if args.cv_folds is not None:
            hyperparams = dict(model.hyperparams)
            report = evaluator.cross_validate(model.kind, hyperparams, table, args.cv_folds, cfg.seed)
        elif args.holdout:
            _, test = DataSplitter(quiet=self.quiet).stratified_split(table, cfg.test_fraction, cfg.seed)
            report = evaluator.evaluate(model, test, seed=cfg.seed, protocol="holdout")
        else:
            report = evaluator.evaluate(model, table, seed=cfg.seed, protocol="all")

        self.loader.save_eval_report(report, self._out(args.out, 'eval_report'))
        print(f"{report.model_kind}\t{report.protocol}\taccuracy\t{report.accuracy:.6f}")
        return EXIT_OK

    def cmd_predict(self, args: argparse.Namespace) -> int:
        cfg = self.config
        model = self.reader.read_model(args.model_path)
        clip = AudioUtils.read_wav(args.wav)
        if clip.sample_rate != cfg.sample_rate:
            clip = AudioUtils.resample(clip, cfg.sample_rate)
        transformer = self._transformer()
        for offset, block, _ in SegmentExtractor.blocks(clip, cfg.block_seconds):
            #the label is a placeholder, predictions never read it
            segment = Segment(clip=block, label=Label.BEE, source_id=Path(args.wav).stem, offset=offset)
            prediction = predict(model, transformer.extract_features(segment).subset(model.feature_names))
            print(f"{offset:.3f}\t{prediction.label.value}\t{prediction.score:.6f}")
        return EXIT_OK

    def cmd_mixval(self, args: argparse.Namespace) -> int:
        model = self.reader.read_model(args.model_path)
        bee_src = self._first_block(args.bee, Label.BEE)
        nobee_src = self._first_block(args.nobee, Label.NOBEE)
        validator = MixedValidator(self._transformer(), self.config.block_seconds, quiet=self.quiet)
        report = validator.run_mixed_validation(model, bee_src, nobee_src)
        self.loader.save_mixed_validation(report, self._out(args.out, 'mixed_validation'))
        print(f"{report.model_kind}\tmatching_accuracy\t{report.matching_accuracy:.6f}")
        return EXIT_OK

    def _mlp_spec(self) -> MlpSpec:
        return MlpSpec(**self.config.hyperparams_for("mlp"))

    def cmd_sweep(self, args: argparse.Namespace) -> int:
        cfg = self.config
        table = self.reader.read_feature_table(args.features)
        runner = ExperimentRunner(cfg.test_fraction, cfg.threads, quiet=self.quiet)
        result = runner.activation_optimizer_sweep(table, args.activations, args.optimizers, cfg.seed,
                                                   self._mlp_spec())
        print(self.loader.save_sweep(result, self._out(args.out, 'sweep_grid')))
        return EXIT_OK

    def cmd_featcount(self, args: argparse.Namespace) -> int:
        cfg = self.config
        table = self.reader.read_feature_table(args.features)
        runner = ExperimentRunner(cfg.test_fraction, cfg.threads, quiet=self.quiet)
        frame = runner.feature_count_experiment(table, cfg.seed, self._mlp_spec())
        print(self.loader.save_table(frame, self._out(args.out, 'feature_count'), 'feature_count'))
        return EXIT_OK

    def cmd_compare(self, args: argparse.Namespace) -> int:
        cfg = self.config
        table = self.reader.read_feature_table(args.features)
        hyperparams: Dict[str, Dict[str, Any]] = {kind: cfg.hyperparams_for(kind) for kind in args.models}
        runner = ExperimentRunner(cfg.test_fraction, cfg.threads, quiet=self.quiet)
        frame = runner.compare_classifiers(table, hyperparams, cfg.seed, cfg.kfold or None)
        print(self.loader.save_table(frame, self._out(args.out, 'comparison'), 'comparison'))
        return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parses ``argv`` and runs the subcommand.

    Returns:
        int: 0 on success, 1 on usage / configuration errors, 2 on data errors.
    """
    args = build_parser().parse_args(argv)
    try:
        return BeehiveCLI.from_args(args).run(args)
    except ConfigError as e:
        print(f"{e.code}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BeehiveError as e:
        log_status(f"❌ {args.command} failed", quiet=False)
        print(f"{e.code}: {e}", file=sys.stderr)
        return EXIT_DATA
    except OSError as e:
        print(f"E_IO: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
