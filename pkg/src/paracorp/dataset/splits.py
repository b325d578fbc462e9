"""Labeled pairs, split assembly and per-split statistics."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..corpus.tokenizer import tokenize
from ..metrics import corpus_mean, jaccard

LABEL_PARAPHRASE = "paraphrase"
LABEL_NON_PARAPHRASE = "non_paraphrase"
LABELS = (LABEL_PARAPHRASE, LABEL_NON_PARAPHRASE)

ORIGIN_BACKTRANSLATION = "backtranslation"
ORIGIN_CONSECUTIVE = "consecutive"
ORIGIN_RANDOM = "random"
ORIGINS = (ORIGIN_BACKTRANSLATION, ORIGIN_CONSECUTIVE, ORIGIN_RANDOM)


@dataclass(frozen=True)
class LabeledPair:
    pair_id: str
    sentence_1: str
    sentence_2: str
    label: str
    near_paraphrase: bool = False
    origin: str = ORIGIN_BACKTRANSLATION

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"bad label {self.label!r}")
        if self.origin not in ORIGINS:
            raise ValueError(f"bad origin {self.origin!r}")
        if self.origin in (ORIGIN_CONSECUTIVE, ORIGIN_RANDOM) and self.label != LABEL_NON_PARAPHRASE:
            raise ValueError(f"synthetic negative {self.pair_id} must be labeled non_paraphrase")
        if self.near_paraphrase and self.label != LABEL_NON_PARAPHRASE:
            raise ValueError(f"near-paraphrase flag requires non_paraphrase label ({self.pair_id})")

    def text_key(self) -> tuple[str, str]:
        """Order-insensitive sentence-pair identity."""
        return (self.sentence_1, self.sentence_2) if self.sentence_1 <= self.sentence_2 else (self.sentence_2, self.sentence_1)


@dataclass(frozen=True)
class DatasetSplit:
    name: str
    pairs: tuple[LabeledPair, ...]
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        ids = [p.pair_id for p in self.pairs]
        if len(ids) != len(set(ids)):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate pair_ids in split {self.name!r}: {dupes[:5]}")
        keys = [p.text_key() for p in self.pairs]
        if len(keys) != len(set(keys)):
            raise ValueError(f"duplicate sentence pairs in split {self.name!r}")


@dataclass(frozen=True)
class SplitStats:
    n_paraphrase: int
    n_non_paraphrase: int
    n_total: int
    mean_jaccard_paraphrase: float | None
    mean_jaccard_non_paraphrase: float | None


def assemble_split(
    positives: list[LabeledPair],
    negatives: list[LabeledPair],
    name: str,
    seed: int = 0,
    provenance: dict | None = None,
) -> DatasetSplit:
    """Merge, drop duplicate sentence pairs (first wins), shuffle with seed.

    Duplicate pair_ids are an error; duplicated sentence pairs across the
    inputs are dropped silently since negatives are sampled against the
    positive pool.
    """
    seen_ids: set[str] = set()
    seen_keys: set[tuple[str, str]] = set()
    merged: list[LabeledPair] = []
    for pair in list(positives) + list(negatives):
        if pair.pair_id in seen_ids:
            raise ValueError(f"duplicate pair_id {pair.pair_id!r}")
        seen_ids.add(pair.pair_id)
        key = pair.text_key()
        if key in seen_keys:
            continue
        seen_keys.add(key)
        merged.append(pair)
    rng = random.Random(seed)
    rng.shuffle(merged)
    prov = dict(provenance or {})
    prov.setdefault("seed", seed)
    return DatasetSplit(name=name, pairs=tuple(merged), provenance=prov)


def split_stats(
    split: DatasetSplit,
    stopwords: frozenset[str] | None = None,
    include_stopwords: bool = True,
) -> SplitStats:
    """Label counts and per-label mean Jaccard similarity."""
    by_label: dict[str, list[float]] = {LABEL_PARAPHRASE: [], LABEL_NON_PARAPHRASE: []}
    for pair in split.pairs:
        score = jaccard(
            list(tokenize(pair.sentence_1, stopwords)),
            list(tokenize(pair.sentence_2, stopwords)),
            pair_id=pair.pair_id,
            include_stopwords=include_stopwords,
        )
        by_label[pair.label].append(score.value)
    para = by_label[LABEL_PARAPHRASE]
    non = by_label[LABEL_NON_PARAPHRASE]
    return SplitStats(
        n_paraphrase=len(para),
        n_non_paraphrase=len(non),
        n_total=len(split.pairs),
        mean_jaccard_paraphrase=corpus_mean(para) if para else None,
        mean_jaccard_non_paraphrase=corpus_mean(non) if non else None,
    )
