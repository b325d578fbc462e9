"""Stage stores: a directory of line-delimited records plus a manifest.

Each pipeline command writes its outputs as JSONL files with a
manifest.json recording the stage name, the config hash that produced the
artifacts and summary counts, which makes stages resumable and
independently re-runnable.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path
from typing import Iterable, Iterator

from .corpus.segmenter import Sentence, build_sentence
from .translate.pipeline import GeneratedPair, TranslationRecord


def write_jsonl(path: str | Path, records: Iterable[dict]) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
            count += 1
    return count


def read_jsonl(path: str | Path) -> Iterator[dict]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)


def write_manifest(directory: str | Path, stage: str, cfg_hash: str, **extra) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = {"stage": stage, "config_hash": cfg_hash, **extra}
    (directory / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def read_manifest(directory: str | Path) -> dict:
    return json.loads((Path(directory) / "manifest.json").read_text(encoding="utf-8"))


# ------------------------------------------------------------- serialization

def sentence_to_dict(sentence: Sentence) -> dict:
    # Tokens are re-derivable from the text; store only the scalars.
    return {
        "sent_id": sentence.sent_id,
        "doc_id": sentence.doc_id,
        "index_in_doc": sentence.index_in_doc,
        "text": sentence.text,
        "content_token_count": sentence.content_token_count,
    }


def sentence_from_dict(rec: dict, stopwords: frozenset[str] | None = None) -> Sentence:
    return build_sentence(rec["doc_id"], rec["index_in_doc"], rec["text"], stopwords)


def pair_to_dict(pair: GeneratedPair) -> dict:
    return {
        "pair_id": pair.pair_id,
        "source": sentence_to_dict(pair.source),
        "candidate_text": pair.candidate_text,
        "pivot": pair.pivot,
        "iterations": pair.iterations,
        "status": pair.status,
        "diagnostics": pair.diagnostics,
        "provenance": [asdict(r) for r in pair.provenance],
    }


def pair_from_dict(rec: dict, stopwords: frozenset[str] | None = None) -> GeneratedPair:
    return GeneratedPair(
        pair_id=rec["pair_id"],
        source=sentence_from_dict(rec["source"], stopwords),
        candidate_text=rec["candidate_text"],
        pivot=rec["pivot"],
        iterations=rec["iterations"],
        status=rec["status"],
        diagnostics=rec.get("diagnostics", ""),
        provenance=tuple(TranslationRecord(**r) for r in rec["provenance"]),
    )
