"""Document ingestion from a directory of .txt files or a JSONL record file."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Document:
    doc_id: str
    source_name: str
    text: str


class IngestError(Exception):
    pass


def _load_from_dir(root: Path, source_name: str) -> list[Document]:
    docs: list[Document] = []
    seen: set[str] = set()
    for path in sorted(root.rglob("*.txt")):
        doc_id = path.relative_to(root).with_suffix("").as_posix()
        try:
            text = path.read_bytes().decode("utf-8")
        except UnicodeDecodeError as exc:
            logger.warning("skipping %s: invalid UTF-8 (%s)", path, exc)
            continue
        if not text.strip():
            logger.warning("skipping %s: empty document", path)
            continue
        if doc_id in seen:
            raise IngestError(f"duplicate doc_id {doc_id!r}")
        seen.add(doc_id)
        docs.append(Document(doc_id=doc_id, source_name=source_name, text=text))
    return docs


def _load_from_jsonl(path: Path) -> list[Document]:
    docs: list[Document] = []
    seen: set[str] = set()
    try:
        raw = path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        logger.warning("skipping %s: invalid UTF-8 (%s)", path, exc)
        return docs
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            doc = Document(doc_id=str(rec["doc_id"]), source_name=str(rec["source_name"]), text=str(rec["text"]))
        except (json.JSONDecodeError, KeyError) as exc:
            logger.warning("skipping %s line %d: %s", path, lineno, exc)
            continue
        if not doc.text.strip():
            logger.warning("skipping %s line %d: empty document", path, lineno)
            continue
        if doc.doc_id in seen:
            raise IngestError(f"duplicate doc_id {doc.doc_id!r} at {path} line {lineno}")
        seen.add(doc.doc_id)
        docs.append(doc)
    return docs


def load_documents(path: str | Path, mode: str = "dir", source_name: str = "local") -> list[Document]:
    """Load documents from ``path``.

    ``mode`` is ``dir`` (one UTF-8 .txt file per document, doc_id = relative
    path without extension) or ``jsonl`` (one record per line with doc_id,
    source_name, text). Files or records that fail to decode are skipped
    with a logged diagnostic; the run continues.
    """
    p = Path(path)
    if not p.exists():
        raise IngestError(f"input path does not exist: {p}")
    if mode == "dir":
        if not p.is_dir():
            raise IngestError(f"ingest mode 'dir' needs a directory, got {p}")
        return _load_from_dir(p, source_name)
    if mode == "jsonl":
        if not p.is_file():
            raise IngestError(f"ingest mode 'jsonl' needs a file, got {p}")
        return _load_from_jsonl(p)
    raise IngestError(f"unknown ingest mode {mode!r}")
