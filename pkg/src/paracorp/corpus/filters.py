"""Sentence selection filters applied after segmentation.

A sentence is kept iff its content-token count (tokens minus punctuation
and stopwords) lies in [min_content, max_content], it has no run of three
or more case-fold-identical word tokens, and it matches no metadata
pattern. Checks run in a fixed order (metadata, too short, too long,
repetition) so every rejection carries a single deterministic reason.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .segmenter import Sentence
from .tokenizer import KIND_WORD

REASON_KEPT = "kept"
REASON_TOO_SHORT = "too_short"
REASON_TOO_LONG = "too_long"
REASON_REPETITION = "repetition"
REASON_METADATA = "metadata_line"

DEFAULT_METADATA_PATTERNS = (r"էջ\s*\d+",)


@dataclass(frozen=True)
class FilterDecision:
    sent_id: str
    kept: bool
    reason: str


@dataclass(frozen=True)
class FilterConfig:
    min_content: int = 6
    max_content: int = 22
    metadata_patterns: tuple[str, ...] = DEFAULT_METADATA_PATTERNS
    repetition_window: int = 3

    @classmethod
    def from_dict(cls, data: dict) -> "FilterConfig":
        return cls(
            min_content=int(data.get("min_content_tokens", 6)),
            max_content=int(data.get("max_content_tokens", 22)),
            metadata_patterns=tuple(data.get("metadata_patterns", DEFAULT_METADATA_PATTERNS)),
        )


def has_word_repetition(sentence: Sentence, window: int = 3) -> bool:
    """True if ``window`` consecutive word tokens are case-fold-identical.

    Consecutive in the subsequence of word tokens: intervening punctuation
    does not break a run.
    """
    words = [t.surface.casefold() for t in sentence.tokens if t.kind == KIND_WORD]
    for i in range(len(words) - window + 1):
        if len(set(words[i : i + window])) == 1:
            return True
    return False


def _decide(sentence: Sentence, cfg: FilterConfig, patterns: list[re.Pattern]) -> str:
    if any(p.search(sentence.text) for p in patterns):
        return REASON_METADATA
    if sentence.content_token_count < cfg.min_content:
        return REASON_TOO_SHORT
    if sentence.content_token_count > cfg.max_content:
        return REASON_TOO_LONG
    if has_word_repetition(sentence, cfg.repetition_window):
        return REASON_REPETITION
    return REASON_KEPT


def apply_selection_filters(
    sentences: list[Sentence],
    config: FilterConfig | None = None,
) -> tuple[list[Sentence], list[FilterDecision]]:
    """Return (kept sentences, one FilterDecision per input)."""
    cfg = config or FilterConfig()
    patterns = [re.compile(p) for p in cfg.metadata_patterns]
    kept: list[Sentence] = []
    decisions: list[FilterDecision] = []
    for sent in sentences:
        reason = _decide(sent, cfg, patterns)
        ok = reason == REASON_KEPT
        decisions.append(FilterDecision(sent_id=sent.sent_id, kept=ok, reason=reason))
        if ok:
            kept.append(sent)
    return kept, decisions
