"""Command-line entry point.

Subcommands mirror the pipeline stages: prepare (ingest + segment +
filter), generate (back-translation candidates), annotate (HTTP labeling
service), build (negatives + splits + TSV export + stats) and eval
(score a predictions file or the lexical baseline against a gold TSV).

Exit codes: 0 success, 1 failure, 2 usage/config error. Every stage
writes a manifest embedding the hash of the config that produced it, and
all sampling is seeded, so re-running a stage with the same inputs
reproduces its artifacts byte for byte.
"""

from __future__ import annotations

import argparse
import collections
import errno
import json
import logging
import random
import sys
from pathlib import Path

from . import stores
from .config import ConfigError, config_hash, load_config
from .corpus.documents import IngestError, load_documents
from .corpus.filters import FilterConfig, apply_selection_filters
from .corpus.segmenter import SegmenterConfig, segment_document
from .corpus.stopwords import default_stopwords, load_stopwords
from .corpus.tokenizer import tokenize
from .dataset.negatives import ShortfallError, consecutive_negative_pairs, random_negative_pairs
from .dataset.splits import (
    LABEL_NON_PARAPHRASE,
    LABEL_PARAPHRASE,
    DatasetSplit,
    LabeledPair,
    assemble_split,
    split_stats,
)
from .dataset.tsv import TsvFormatError, export_tsv, import_tsv
from .evaluation.baseline import jaccard_baseline, tune_threshold
from .evaluation.scoring import CoverageError, PredictionSet, evaluate
from .metrics import corpus_mean, diversity, jaccard
from .reports import eval_report_record, render_diversity, render_eval_report, render_split_stats
from .translate.cache import TranslationCache
from .translate.pipeline import PostFilterConfig, Translator, generate_batch
from .translate.providers import HttpProvider, IdentityProvider, ReversalProvider, TableProvider
from .translate.ratelimit import TokenBucket

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _stopwords(cfg: dict) -> frozenset[str]:
    path = cfg["stopwords"]["path"]
    return load_stopwords(path) if path else default_stopwords()


def _seeds(cfg: dict, master: int | None) -> dict:
    seeds = dict(cfg["seeds"])
    if master is not None:
        for offset, key in enumerate(sorted(seeds)):
            seeds[key] = master + offset
    return seeds


def _build_provider(cfg: dict):
    pcfg = cfg["provider"]
    pid = pcfg["id"]
    if pid == "identity":
        return IdentityProvider()
    if pid == "reversal":
        return ReversalProvider()
    if pid == "table":
        tables = {}
        for pair_key, table in pcfg["table"].items():
            src, _, dst = pair_key.partition(">")
            if not src or not dst:
                raise ConfigError(f"provider.table key must look like 'hy>en', got {pair_key!r}")
            tables[(src, dst)] = dict(table)
        return TableProvider(tables)
    if pid == "http":
        http = pcfg["http"]
        if not http["endpoint"]:
            raise ConfigError("provider.http.endpoint is required for the http provider")
        return HttpProvider(
            endpoint=http["endpoint"],
            request_template=http["request_template"],
            response_field=http["response_field"],
            headers=http["headers"],
            api_key_env=http["api_key_env"],
            timeout=http["timeout"],
        )
    raise ConfigError(f"unknown provider id {pcfg['id']!r}")


def _build_translator(cfg: dict, workspace: Path) -> Translator:
    pcfg = cfg["provider"]
    cache_dir = Path(pcfg["cache_dir"]) if pcfg["cache_dir"] else workspace / "cache"
    return Translator(
        provider=_build_provider(cfg),
        cache=TranslationCache(cache_dir),
        rate_limiter=TokenBucket(pcfg["rate"]) if pcfg["id"] == "http" else None,
        retries=pcfg["retries"],
        backoff=pcfg["backoff"],
    )


# ----------------------------------------------------------------- commands

def cmd_prepare(args, cfg: dict) -> int:
    workspace = Path(args.workspace)
    stop = _stopwords(cfg)
    seg_cfg = SegmenterConfig.from_dict(cfg["segmenter"])
    filter_cfg = FilterConfig.from_dict(cfg["filters"])
    input_path = args.input or cfg["ingest"]["path"]
    docs = load_documents(input_path, mode=cfg["ingest"]["mode"], source_name=cfg["ingest"]["source_name"])
    if not docs:
        print("warning: no documents found; wrote an empty sentence store", file=sys.stderr)
    kept_all = []
    decisions_all = []
    for doc in docs:
        sentences = segment_document(doc, seg_cfg, stop)
        kept, decisions = apply_selection_filters(sentences, filter_cfg)
        kept_all.extend(kept)
        decisions_all.extend(decisions)
    out = workspace / "prepared"
    stores.write_jsonl(out / "sentences.jsonl", (stores.sentence_to_dict(s) for s in kept_all))
    stores.write_jsonl(
        out / "decisions.jsonl",
        ({"sent_id": d.sent_id, "kept": d.kept, "reason": d.reason} for d in decisions_all),
    )
    reasons = collections.Counter(d.reason for d in decisions_all)
    stores.write_manifest(
        out,
        stage="prepare",
        cfg_hash=config_hash(cfg),
        documents=len(docs),
        sentences=len(decisions_all),
        kept=len(kept_all),
        rejected_by_reason={k: v for k, v in sorted(reasons.items()) if k != "kept"},
    )
    print(f"documents: {len(docs)}")
    print(f"sentences: {len(decisions_all)}  kept: {len(kept_all)}")
    for reason, count in sorted(reasons.items()):
        if reason != "kept":
            print(f"  rejected ({reason}): {count}")
    return EXIT_OK


def cmd_generate(args, cfg: dict) -> int:
    workspace = Path(args.workspace)
    stop = _stopwords(cfg)
    pcfg = cfg["provider"]
    sentences_path = workspace / "prepared" / "sentences.jsonl"
    if not sentences_path.exists():
        print(f"error: no prepared sentences at {sentences_path}; run prepare first", file=sys.stderr)
        return EXIT_FAILURE
    sentences = [stores.sentence_from_dict(rec, stop) for rec in stores.read_jsonl(sentences_path)]
    translator = _build_translator(cfg, workspace)
    post_cfg = PostFilterConfig(
        foreign_threshold=pcfg["foreign_threshold"],
        segmenter=SegmenterConfig.from_dict(cfg["segmenter"]),
    )
    pairs = generate_batch(
        translator,
        sentences,
        pivot=pcfg["pivot"],
        iterations=pcfg["iterations"],
        src=pcfg["source_lang"],
        post_config=post_cfg,
        in_flight=pcfg["in_flight"],
    )
    out = workspace / "generated"
    stores.write_jsonl(out / "pairs.jsonl", (stores.pair_to_dict(p) for p in pairs))
    histogram = collections.Counter(p.status for p in pairs)
    stores.write_manifest(
        out,
        stage="generate",
        cfg_hash=config_hash(cfg),
        pairs=len(pairs),
        status_histogram=dict(sorted(histogram.items())),
        provider_calls=translator.provider_calls,
    )
    print(f"pairs: {len(pairs)}  provider calls: {translator.provider_calls}")
    for status, count in sorted(histogram.items()):
        print(f"  {status}: {count}")
    return EXIT_OK


def cmd_annotate(args, cfg: dict) -> int:
    import uvicorn

    from .annotation.api import create_app
    from .annotation.service import AnnotationService

    workspace = Path(args.workspace)
    data_dir = Path(cfg["service"]["data_dir"])
    if not data_dir.is_absolute():
        data_dir = workspace / data_dir
    service = AnnotationService(data_dir=data_dir)
    if args.enqueue:
        if not args.annotators:
            print("error: --enqueue needs --annotators", file=sys.stderr)
            return EXIT_USAGE
        pairs_path = workspace / "generated" / "pairs.jsonl"
        candidates = [
            (rec["pair_id"], rec["source"]["text"], rec["candidate_text"])
            for rec in stores.read_jsonl(pairs_path)
            if rec["status"] == "candidate" and rec["pair_id"] not in service.pairs
        ]
        if candidates:
            tasks = service.enqueue(
                candidates,
                annotators=args.annotators.split(","),
                per_pair_count=args.per_pair,
                seed=_seeds(cfg, args.seed)["enqueue"],
            )
            print(f"enqueued {len(candidates)} pairs as {len(tasks)} tasks")
    port = args.port or cfg["service"]["port"]
    app = create_app(service)
    try:
        uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
    except (SystemExit, OSError) as exc:
        if isinstance(exc, OSError) and exc.errno not in (errno.EADDRINUSE, errno.EACCES):
            raise
        print(f"error: cannot bind port {port}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    finally:
        service.close()
    return EXIT_OK


def _load_positives(cfg: dict, args, workspace: Path) -> list[LabeledPair]:
    labels_path = args.labels or cfg["build"]["labels"]
    if labels_path:
        positives = []
        for rec in stores.read_jsonl(labels_path):
            positives.append(
                LabeledPair(
                    pair_id=rec["pair_id"],
                    sentence_1=rec["sentence_1"],
                    sentence_2=rec["sentence_2"],
                    label=rec["label"],
                    near_paraphrase=bool(rec.get("near_paraphrase", False)),
                    origin=rec.get("origin", "backtranslation"),
                )
            )
        return positives
    # Unreviewed mode: every surviving candidate counts as a paraphrase.
    pairs_path = workspace / "generated" / "pairs.jsonl"
    logger.warning("no labels file configured; treating all candidates as paraphrase (unreviewed)")
    return [
        LabeledPair(
            pair_id=rec["pair_id"],
            sentence_1=rec["source"]["text"],
            sentence_2=rec["candidate_text"],
            label=LABEL_PARAPHRASE,
        )
        for rec in stores.read_jsonl(pairs_path)
        if rec["status"] == "candidate"
    ]


def cmd_build(args, cfg: dict) -> int:
    workspace = Path(args.workspace)
    stop = _stopwords(cfg)
    seeds = _seeds(cfg, args.seed)
    cfg_hash = config_hash(cfg)
    sentences = [
        stores.sentence_from_dict(rec, stop)
        for rec in stores.read_jsonl(workspace / "prepared" / "sentences.jsonl")
    ]
    positives = _load_positives(cfg, args, workspace)
    rng = random.Random(seeds["split"])
    shuffled = list(positives)
    rng.shuffle(shuffled)
    n_test = round(len(shuffled) * cfg["split"]["test_fraction"])
    pos_by_split = {"test": shuffled[:n_test], "train": shuffled[n_test:]}

    taken: set[tuple[str, str]] = {p.text_key() for p in positives}
    negatives: dict[str, list[LabeledPair]] = {}
    offset = 0
    for split_name in ("train", "test"):
        quotas = cfg["negatives"][split_name]
        consec = consecutive_negative_pairs(sentences, quotas["consecutive"], seeds["negatives"] + offset)
        consec = [p for p in consec if p.text_key() not in taken]
        taken.update(p.text_key() for p in consec)
        rand = random_negative_pairs(sentences, quotas["random"], seeds["negatives"] + offset + 1, exclude=taken)
        taken.update(p.text_key() for p in rand)
        negatives[split_name] = consec + rand
        offset += 2

    out = workspace / "dataset"
    out.mkdir(parents=True, exist_ok=True)
    splits: dict[str, DatasetSplit] = {}
    for idx, split_name in enumerate(("train", "test")):
        split = assemble_split(
            pos_by_split[split_name],
            negatives[split_name],
            name=split_name,
            seed=seeds["shuffle"] + idx,
            provenance={"config_hash": cfg_hash},
        )
        splits[split_name] = split
        export_tsv(split, out / f"{split_name}.tsv")

    include_stop = cfg["metrics"]["jaccard_include_stopwords"]
    allow_sub = cfg["metrics"]["diversity_allow_substitution"]
    stats = {name: split_stats(split, stop, include_stop) for name, split in splits.items()}
    diversity_means: dict[str, dict[str, float | None]] = {}
    with open(out / "metrics.jsonl", "w", encoding="utf-8") as fh:
        for name, split in splits.items():
            edits_by_label: dict[str, list[int]] = {LABEL_PARAPHRASE: [], LABEL_NON_PARAPHRASE: []}
            for pair in split.pairs:
                ta = list(tokenize(pair.sentence_1, stop))
                tb = list(tokenize(pair.sentence_2, stop))
                j = jaccard(ta, tb, pair.pair_id, include_stop)
                d = diversity(ta, tb, pair.pair_id, allow_sub)
                edits_by_label[pair.label].append(d.edits)
                fh.write(
                    json.dumps(
                        {"split": name, "pair_id": pair.pair_id, "jaccard": j.value, "diversity": d.edits},
                        ensure_ascii=False,
                    )
                    + "\n"
                )
            diversity_means[name] = {
                label: corpus_mean([float(e) for e in edits]) if edits else None
                for label, edits in edits_by_label.items()
            }

    stats_text = render_split_stats(stats, cfg_hash) + "\n" + render_diversity(diversity_means, cfg_hash)
    (out / "stats.txt").write_text(stats_text, encoding="utf-8")
    stores.write_manifest(
        out,
        stage="build",
        cfg_hash=cfg_hash,
        seeds=seeds,
        counts={
            name: {"paraphrase": s.n_paraphrase, "non_paraphrase": s.n_non_paraphrase, "total": s.n_total}
            for name, s in stats.items()
        },
    )
    print(stats_text, end="")
    return EXIT_OK


def _read_predictions(path: str | Path, model_id: str) -> PredictionSet:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 2 or fields[1] not in ("0", "1"):
            raise TsvFormatError(path, lineno, "expected 'pair_id<TAB>label' with label 0 or 1")
        entries[fields[0]] = LABEL_PARAPHRASE if fields[1] == "1" else LABEL_NON_PARAPHRASE
    return PredictionSet(model_id=model_id, entries=entries)


def cmd_eval(args, cfg: dict) -> int:
    seeds = _seeds(cfg, args.seed)
    gold = import_tsv(args.gold)
    if args.baseline:
        if args.baseline != "jaccard":
            print(f"error: unknown baseline {args.baseline!r}", file=sys.stderr)
            return EXIT_USAGE
        include_stop = cfg["metrics"]["jaccard_include_stopwords"]
        if args.threshold is not None:
            threshold = args.threshold
        elif args.train:
            threshold = tune_threshold(import_tsv(args.train), include_stop)
            print(f"tuned threshold: {threshold:.4f}")
        else:
            print("error: --baseline needs --threshold or --train", file=sys.stderr)
            return EXIT_USAGE
        preds = jaccard_baseline(gold, threshold, include_stop)
    elif args.predictions:
        preds = _read_predictions(args.predictions, model_id=args.model_id or Path(args.predictions).stem)
    else:
        print("error: provide a predictions file or --baseline jaccard", file=sys.stderr)
        return EXIT_USAGE
    report = evaluate(
        preds,
        gold,
        n_resamples=cfg["eval"]["n_resamples"],
        seed=seeds["bootstrap"],
        alpha=cfg["eval"]["alpha"],
    )
    print(render_eval_report(report), end="")
    if args.out:
        Path(args.out).write_text(
            json.dumps(eval_report_record(report, config_hash(cfg)), ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
    return EXIT_OK


# ----------------------------------------------------------------- argparse

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paracorp", description=__doc__)
    parser.add_argument("--config", help="YAML run configuration")
    parser.add_argument("--seed", type=int, default=None, help="master seed overriding the seeds section")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="ingest, segment and filter the raw corpus")
    p.add_argument("--workspace", default="workspace")
    p.add_argument("--input", help="overrides ingest.path")

    p = sub.add_parser("generate", help="generate paraphrase candidates by back translation")
    p.add_argument("--workspace", default="workspace")
    p.add_argument("--provider", help="overrides provider.id")
    p.add_argument("--pivot", help="overrides provider.pivot")
    p.add_argument("--iterations", type=int, help="overrides provider.iterations")
    p.add_argument("--rate", type=float, help="overrides provider.rate")

    p = sub.add_parser("annotate", help="serve the annotation HTTP API")
    p.add_argument("--workspace", default="workspace")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--enqueue", action="store_true", help="enqueue unregistered candidates at startup")
    p.add_argument("--annotators", help="comma-separated annotator ids (with --enqueue)")
    p.add_argument("--per-pair", type=int, default=2, dest="per_pair")

    p = sub.add_parser("build", help="assemble labeled train/test splits and statistics")
    p.add_argument("--workspace", default="workspace")
    p.add_argument("--labels", help="adjudicated pairs JSONL (overrides build.labels)")

    p = sub.add_parser("eval", help="score predictions against a gold TSV")
    p.add_argument("gold", help="gold split TSV")
    p.add_argument("predictions", nargs="?", help="pair_id<TAB>{0,1} prediction file")
    p.add_argument("--baseline", help="score a built-in baseline instead (jaccard)")
    p.add_argument("--threshold", type=float, help="baseline decision threshold")
    p.add_argument("--train", help="train TSV to tune the baseline threshold on")
    p.add_argument("--model-id", dest="model_id")
    p.add_argument("--out", help="write the machine-readable report JSON here")

    return parser


def _config_overrides(args) -> dict:
    overrides: dict = {}
    provider_flags = {
        "provider": getattr(args, "provider", None),
        "pivot": getattr(args, "pivot", None),
        "iterations": getattr(args, "iterations", None),
        "rate": getattr(args, "rate", None),
    }
    mapping = {"provider": "id", "pivot": "pivot", "iterations": "iterations", "rate": "rate"}
    pcfg = {mapping[k]: v for k, v in provider_flags.items() if v is not None}
    if pcfg:
        overrides["provider"] = pcfg
    return overrides


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, overrides=_config_overrides(args))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    handlers = {
        "prepare": cmd_prepare,
        "generate": cmd_generate,
        "annotate": cmd_annotate,
        "build": cmd_build,
        "eval": cmd_eval,
    }
    try:
        return handlers[args.command](args, cfg)
    except (IngestError, TsvFormatError, ShortfallError, CoverageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
