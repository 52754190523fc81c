"""Command-line entry point.

Subcommands wire the generator, the feature pipeline, and the evaluation
harness into reproducible runs: gen, extract, eval, compare, rank, bench,
plagiarism.  Every run that writes files also writes a JSON manifest next
to its primary output.

Exit codes: 0 success, 1 runtime failure, 2 usage error.  Seeds are always
explicit flags, never drawn from the clock.
"""

import argparse
import csv
import os
import shlex
import sys
import time
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .classify import CvResult, Knn, Tree, Vote, ZeroR, evaluate, rank_features
from .dataset import load_pairs, save_pairs
from .features import (
    FEATURES,
    GROUP_NAMES,
    FeatureVector,
    PairContext,
    extract_stream,
    group_features,
)
from .generator import GenConfig, generate_pairs
from .manifest import RunManifest, manifest_path, write_manifest
from .strings import SymbolString
from .tabular import load_csv, save_csv, write_arff
from .bench import time_features
from .textprep import load_plagiarism_corpus


class UsageError(Exception):
    """Flag-semantics problem detected after argparse; maps to exit code 2."""


# ---------------------------------------------------------------------------
# flag types

def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _unit_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {value}")
    return value


def _string_flag(text: str) -> str:
    # literal text, or @path to read a long input from a file
    if text.startswith("@"):
        try:
            with open(text[1:], "r", encoding="utf-8") as handle:
                return handle.read().rstrip("\n")
        except OSError as exc:
            raise argparse.ArgumentTypeError(f"cannot read {text[1:]!r}: {exc}")
    return text


def _resolve_threads(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("SIMSTRING_THREADS")
    if env:
        try:
            parsed = int(env)
        except ValueError:
            raise UsageError(f"SIMSTRING_THREADS is not an integer: {env!r}")
        if parsed < 1:
            raise UsageError(f"SIMSTRING_THREADS must be >= 1, got {parsed}")
        return parsed
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# shared plumbing

def _emit_manifest(args: argparse.Namespace, inputs: Sequence[str], outputs: Sequence[str]) -> None:
    """One manifest per run, written next to the primary output."""
    if not outputs:
        return
    config = {
        k: v for k, v in vars(args).items() if not k.startswith("_") and k != "func"
    }
    man = RunManifest(
        command="simstring " + " ".join(shlex.quote(str(a)) for a in args._argv),
        config=config,
        seed=getattr(args, "seed", None),
    )
    for path in inputs:
        man.add_input(path)
    for path in outputs:
        man.add_output(path)
    man.wall_time_s = time.perf_counter() - args._started
    write_manifest(man, manifest_path(outputs[0]))


_CLASSIFIER_NAMES = ("zeror", "knn", "tree", "vote")


def _build_classifier(name: str, args: argparse.Namespace):
    if name == "zeror":
        return ZeroR()
    if name == "knn":
        return Knn(k=args.k, standardize=not args.no_standardize, weighting=args.weighting)
    if name == "tree":
        return Tree(max_depth=args.max_depth, min_leaf=args.min_leaf)
    if name == "vote":
        children = [c.strip() for c in args.children.split(",") if c.strip()]
        if len(children) < 2:
            raise UsageError("--children needs at least two comma-separated classifiers")
        for child in children:
            if child == "vote":
                raise UsageError("vote children cannot be vote")
            if child not in _CLASSIFIER_NAMES:
                raise UsageError(
                    f"unknown child classifier {child!r}; valid: zeror, knn, tree"
                )
        return Vote(tuple(_build_classifier(c, args) for c in children))
    raise UsageError(f"unknown classifier {name!r}")


def _infer_group(names: Tuple[str, ...]) -> str:
    for group in GROUP_NAMES:
        if names == group_features(group):
            return group
    return "custom"


def _require_labels(rows: Sequence[FeatureVector]) -> None:
    missing = [i for i, r in enumerate(rows) if r.label is None]
    if missing:
        raise ValueError(f"{len(missing)} rows have no label (first at row {missing[0]})")


def _print_report(spec, group: str, folds: int, seed: int, result: CvResult) -> None:
    print(f"classifier: {spec!r}")
    print(f"group: {group}")
    print(f"folds: {folds}  seed: {seed}")
    print("fold accuracies: " + " ".join(f"{a:.4f}" for a in result.fold_accuracies))
    print(f"mean accuracy: {result.mean_accuracy:.4f}")
    print(f"overall accuracy: {result.accuracy:.4f}")
    width = max(len(c) for c in result.classes) + 2
    print("confusion (rows true, cols predicted):")
    print(" " * width + "".join(f"{c:>{width}}" for c in result.classes))
    for i, c in enumerate(result.classes):
        cells = "".join(f"{int(n):>{width}}" for n in result.confusion[i])
        print(f"{c:>{width}}" + cells)
    print("class        tp_rate  precision  recall")
    for c, (rate, precision, recall) in result.per_class().items():
        print(f"{c:<12} {rate:7.4f}  {precision:9.4f}  {recall:6.4f}")


def _save_report(path: str, spec, group: str, folds: int, seed: int, result: CvResult) -> None:
    """Machine-readable long form: section,name,value rows."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["section", "name", "value"])
        writer.writerow(["meta", "spec", repr(spec)])
        writer.writerow(["meta", "group", group])
        writer.writerow(["meta", "folds", folds])
        writer.writerow(["meta", "seed", seed])
        for i, acc in enumerate(result.fold_accuracies):
            writer.writerow(["fold", i, repr(acc)])
        writer.writerow(["summary", "mean_accuracy", repr(result.mean_accuracy)])
        writer.writerow(["summary", "accuracy", repr(result.accuracy)])
        for i, true_class in enumerate(result.classes):
            for j, pred_class in enumerate(result.classes):
                writer.writerow(
                    ["confusion", f"{true_class}->{pred_class}", int(result.confusion[i, j])]
                )
        for c, (rate, precision, recall) in result.per_class().items():
            writer.writerow(["per_class", f"{c}.tp_rate", repr(rate)])
            writer.writerow(["per_class", f"{c}.precision", repr(precision)])
            writer.writerow(["per_class", f"{c}.recall", repr(recall)])


# ---------------------------------------------------------------------------
# subcommands

def cmd_gen(args: argparse.Namespace) -> int:
    cfg = GenConfig(max_len=args.m, randomness=args.r, count=args.count, seed=args.seed)
    n = save_pairs(args.out, generate_pairs(cfg))
    _emit_manifest(args, inputs=[], outputs=[args.out])
    print(f"wrote {n} pairs to {args.out}")
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    pairs = load_pairs(args.infile)
    # map pair index -> 1-based input line (header is line 1, blanks skipped)
    with open(args.infile, "r", encoding="utf-8") as handle:
        handle.readline()
        lines = [no for no, text in enumerate(handle, start=2) if text.strip()]
    vectors: List[FeatureVector] = []
    skipped = 0
    for i, vector, error in extract_stream(pairs, args.group):
        if error is not None:
            print(f"skipped: line {lines[i]}: {error}", file=sys.stderr)
            skipped += 1
        else:
            vectors.append(vector)
    if skipped:
        print(f"skipped {skipped} of {len(pairs)} pairs", file=sys.stderr)
    names = group_features(args.group)
    if args.format == "arff":
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            write_arff(handle, names, vectors)
    else:
        save_csv(args.out, names, vectors)
    _emit_manifest(args, inputs=[args.infile], outputs=[args.out])
    print(f"wrote {len(vectors)} rows ({len(names)} features + label) to {args.out}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    names, rows = load_csv(args.infile)
    _require_labels(rows)
    spec = _build_classifier(args.classifier, args)
    group = _infer_group(names)
    result = evaluate(rows, spec, k=args.k_folds, seed=args.seed)
    _print_report(spec, group, args.k_folds, args.seed, result)
    if args.out:
        _save_report(args.out, spec, group, args.k_folds, args.seed, result)
        _emit_manifest(args, inputs=[args.infile], outputs=[args.out])
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    if not args.w1 or not args.w2:
        raise UsageError("--w1 and --w2 must be non-empty")
    ctx = PairContext(SymbolString.from_text(args.w1), SymbolString.from_text(args.w2))
    names = group_features(args.group)
    width = max(len(name) for name in names)
    for name in names:
        print(f"{name:<{width}} = {float(FEATURES[name](ctx))!r}")
    return 0


def cmd_rank(args: argparse.Namespace) -> int:
    names, rows = load_csv(args.infile)
    _require_labels(rows)
    spec = _build_classifier(args.classifier, args)
    ranking = rank_features(rows, spec, k=args.k_folds, seed=args.seed)
    width = max(len(name) for name, _ in ranking)
    print(f"classifier: {spec!r}  folds: {args.k_folds}  seed: {args.seed}")
    for rank, (name, acc) in enumerate(ranking, start=1):
        print(f"{rank:>3}  {name:<{width}}  {acc:.4f}")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["rank", "feature", "mean_accuracy"])
            for rank, (name, acc) in enumerate(ranking, start=1):
                writer.writerow([rank, name, repr(acc)])
        _emit_manifest(args, inputs=[args.infile], outputs=[args.out])
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    groups = [g.strip() for g in args.groups.split(",") if g.strip()]
    for g in groups:
        if g not in GROUP_NAMES:
            raise UsageError(f"unknown group {g!r}; valid: {', '.join(GROUP_NAMES)}")
    pairs = load_pairs(args.infile)
    report = time_features(pairs, groups)
    width = max(len(name) for name in report.feature_ns)
    print(f"pairs: {report.pairs}")
    print("feature timings (mean ns per pair):")
    for name, ns in report.feature_ns.items():
        print(f"  {name:<{width}}  {ns:12.1f}")
    for group, ns in report.build_ns.items():
        print(f"build surcharge {group}: {ns:.1f} ns per pair")
    for group in groups:
        print(f"group total {group}: {report.group_total_ns(group):.1f} ns per pair")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["kind", "name", "ns"])
            for name, ns in report.feature_ns.items():
                writer.writerow(["feature", name, repr(ns)])
            for group, ns in report.build_ns.items():
                writer.writerow(["build", group, repr(ns)])
            for group in groups:
                writer.writerow(["group_total", group, repr(report.group_total_ns(group))])
        _emit_manifest(args, inputs=[args.infile], outputs=[args.out])
    return 0


def cmd_plagiarism(args: argparse.Namespace) -> int:
    feature_names = [f.strip() for f in args.features.split(",") if f.strip()]
    if not feature_names:
        raise UsageError("--features must name at least one feature")
    for name in feature_names:
        if name not in FEATURES:
            raise UsageError(
                f"unknown feature {name!r}; valid: {', '.join(sorted(FEATURES))}"
            )
    if not os.path.isdir(args.corpus) or not os.path.isfile(args.index):
        print(
            f"error: corpus not found (dir {args.corpus!r}, index {args.index!r})\n"
            "expected layout:\n"
            "  <corpus>/   document files; paths in the index resolve against it\n"
            "  <index>     tab-separated lines: answerPath, taskId, sourcePath, label\n"
            "  labels: near, light, heavy, non (case-insensitive prefixes)",
            file=sys.stderr,
        )
        return 1
    instances, errors = load_plagiarism_corpus(args.corpus, args.index, args.keep_case)
    for message in errors:
        print(f"warning: {message}", file=sys.stderr)
    rows = []
    names = tuple(feature_names)
    for inst in instances:
        ctx = PairContext(inst.answer, inst.source)
        values = tuple(float(FEATURES[f](ctx)) for f in names)
        rows.append(FeatureVector(names, values, inst.label))
    spec = _build_classifier(args.classifier, args)
    result = evaluate(rows, spec, k=args.k_folds, seed=args.seed)
    baseline = evaluate(rows, ZeroR(), k=args.k_folds, seed=args.seed)
    print(f"instances: {len(rows)}  features: {', '.join(names)}")
    _print_report(spec, "plagiarism", args.k_folds, args.seed, result)
    print(f"zeror baseline accuracy: {baseline.accuracy:.4f}")
    if args.out:
        _save_report(args.out, spec, "plagiarism", args.k_folds, args.seed, result)
        _emit_manifest(args, inputs=[args.index], outputs=[args.out])
    return 0


# ---------------------------------------------------------------------------
# parser

def _add_classifier_flags(parser: argparse.ArgumentParser, default: str) -> None:
    parser.add_argument("--classifier", choices=_CLASSIFIER_NAMES, default=default)
    parser.add_argument("--k", type=_positive_int, default=5, help="knn neighbour count")
    parser.add_argument(
        "--weighting", choices=("uniform", "inverse"), default="uniform",
        help="knn vote weighting",
    )
    parser.add_argument(
        "--no-standardize", action="store_true",
        help="disable train-statistics feature standardization in knn",
    )
    parser.add_argument("--max-depth", type=_positive_int, default=10, help="tree depth cap")
    parser.add_argument("--min-leaf", type=_positive_int, default=2, help="tree leaf minimum")
    parser.add_argument(
        "--children", default="knn,tree",
        help="vote children, comma-separated (e.g. knn,tree)",
    )
    parser.add_argument("--k-folds", type=_positive_int, default=10)
    parser.add_argument("--seed", type=int, required=True, help="fold shuffle seed")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads", type=_positive_int, default=None,
        help="cap on worker parallelism (default: SIMSTRING_THREADS or CPU count)",
    )

    parser = argparse.ArgumentParser(
        prog="simstring",
        description="String-similarity feature extraction and evaluation toolkit.",
    )
    parser.add_argument("--version", action="version", version=f"simstring {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a labelled pair dataset")
    p.add_argument("--m", type=_positive_int, required=True, help="maximum initial length")
    p.add_argument("--r", type=_unit_float, required=True, help="mutation intensity in [0, 1]")
    p.add_argument("--count", type=_positive_int, required=True, help="number of pairs")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output dataset path")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("extract", parents=[common], help="extract feature rows from a dataset")
    p.add_argument("--in", dest="infile", required=True, help="input dataset path")
    p.add_argument("--group", choices=GROUP_NAMES, required=True)
    p.add_argument("--format", choices=("csv", "arff"), default="csv")
    p.add_argument("--out", required=True, help="output table path")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("eval", parents=[common], help="cross-validate a classifier on a CSV")
    p.add_argument("--in", dest="infile", required=True, help="feature CSV path")
    _add_classifier_flags(p, default="knn")
    p.add_argument("--out", default=None, help="optional machine-readable report CSV")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", parents=[common], help="print features for one string pair")
    p.add_argument("--w1", type=_string_flag, required=True, help="first string (or @file)")
    p.add_argument("--w2", type=_string_flag, required=True, help="second string (or @file)")
    p.add_argument("--group", choices=GROUP_NAMES, default="all")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("rank", parents=[common], help="rank features by solo CV accuracy")
    p.add_argument("--in", dest="infile", required=True, help="feature CSV path")
    _add_classifier_flags(p, default="knn")
    p.add_argument("--out", default=None, help="optional ranking CSV")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("bench", parents=[common], help="time feature extraction")
    p.add_argument("--in", dest="infile", required=True, help="input dataset path")
    p.add_argument("--groups", default="all", help="comma-separated group names")
    p.add_argument("--out", default=None, help="optional timing CSV")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser(
        "plagiarism", parents=[common], help="evaluate the document-pair pipeline on a corpus"
    )
    p.add_argument("--corpus", required=True, help="corpus root directory")
    p.add_argument("--index", required=True, help="tab-separated index file")
    p.add_argument(
        "--features", default="rlm_mclcs,morl,dice",
        help="comma-separated feature names",
    )
    p.add_argument("--keep-case", action="store_true", help="keep letter case distinct")
    _add_classifier_flags(p, default="vote")
    p.add_argument("--out", default=None, help="optional report CSV")
    p.set_defaults(func=cmd_plagiarism)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._argv = argv
    args._started = time.perf_counter()
    try:
        args.threads = _resolve_threads(args.threads)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
