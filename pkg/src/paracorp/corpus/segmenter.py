"""Rule-based sentence segmentation.

A sentence ends at a run of terminator characters (followed by optional
closing quotes/brackets) when the next character is whitespace or end of
text. A ``.`` run is suppressed when the chunk it closes is a configured
abbreviation (``Եր.``). Boundary mistakes are expected and tolerated: the
length filters downstream discard fragments and run-ons.

Segmentation is lossless up to whitespace: joining the sentence texts with
single spaces and collapsing whitespace reproduces the collapsed document
text.
"""

from __future__ import annotations

from dataclasses import dataclass

from .documents import Document
from .tokenizer import Token, content_token_count, tokenize

DEFAULT_TERMINATORS = ("։", "?", "!", "…", ".")  # ։ ? ! … .
_CLOSERS = "»\"'”’)]"


@dataclass(frozen=True)
class SegmenterConfig:
    terminators: tuple[str, ...] = DEFAULT_TERMINATORS
    abbreviations: frozenset[str] = frozenset()

    @classmethod
    def from_dict(cls, data: dict) -> "SegmenterConfig":
        return cls(
            terminators=tuple(data.get("terminators", DEFAULT_TERMINATORS)),
            abbreviations=frozenset(data.get("abbreviations", ())),
        )


@dataclass(frozen=True)
class Sentence:
    sent_id: str
    doc_id: str
    index_in_doc: int
    text: str
    tokens: tuple[Token, ...]
    content_token_count: int


def build_sentence(
    doc_id: str,
    index_in_doc: int,
    text: str,
    stopwords: frozenset[str] | None = None,
) -> Sentence:
    tokens = tuple(tokenize(text, stopwords))
    return Sentence(
        sent_id=f"{doc_id}/s{index_in_doc:04d}",
        doc_id=doc_id,
        index_in_doc=index_in_doc,
        text=text,
        tokens=tokens,
        content_token_count=content_token_count(list(tokens)),
    )


def _chunk_before(text: str, pos: int) -> str:
    """The whitespace-delimited chunk ending at ``pos`` inclusive."""
    start = pos
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start : pos + 1]


def segment_text(text: str, config: SegmenterConfig | None = None) -> list[str]:
    """Split raw text into sentence strings (whitespace-trimmed)."""
    cfg = config or SegmenterConfig()
    terms = set(cfg.terminators)
    spans: list[str] = []
    buf_start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] not in terms:
            i += 1
            continue
        run_end = i
        while run_end + 1 < n and text[run_end + 1] in terms:
            run_end += 1
        if text[i : run_end + 1].strip(".") == "" and _chunk_before(text, run_end) in cfg.abbreviations:
            i = run_end + 1
            continue
        close_end = run_end
        while close_end + 1 < n and text[close_end + 1] in _CLOSERS:
            close_end += 1
        if close_end + 1 < n and not text[close_end + 1].isspace():
            # Mid-chunk terminator (decimal point, URL, inline dot): no boundary.
            i = run_end + 1
            continue
        span = text[buf_start : close_end + 1].strip()
        if span:
            spans.append(span)
        buf_start = close_end + 1
        i = close_end + 1
    tail = text[buf_start:].strip()
    if tail:
        spans.append(tail)
    return spans


def segment_document(
    doc: Document,
    config: SegmenterConfig | None = None,
    stopwords: frozenset[str] | None = None,
) -> list[Sentence]:
    return [
        build_sentence(doc.doc_id, idx, span, stopwords)
        for idx, span in enumerate(segment_text(doc.text, config))
    ]
