"""Synthetic non-paraphrase pair generation.

Consecutive negatives pair adjacent kept sentences from the same document
(adjacency is over the post-filter pool, since rejected sentences no
longer exist). Random negatives pair two uniformly drawn sentences,
excluding adjacent pairs, identical texts and anything already present in
the positive set. Both samplers are seeded and draw without replacement.
"""

from __future__ import annotations

import random
from collections import defaultdict

from ..corpus.segmenter import Sentence
from .splits import LABEL_NON_PARAPHRASE, ORIGIN_CONSECUTIVE, ORIGIN_RANDOM, LabeledPair


class ShortfallError(ValueError):
    """Not enough candidate pairs; carries the achievable count."""

    def __init__(self, requested: int, achievable: int, kind: str):
        super().__init__(f"requested {requested} {kind} negative pairs, only {achievable} available")
        self.requested = requested
        self.achievable = achievable


def _by_document(sentences: list[Sentence]) -> dict[str, list[Sentence]]:
    docs: dict[str, list[Sentence]] = defaultdict(list)
    for sent in sentences:
        docs[sent.doc_id].append(sent)
    for doc_sents in docs.values():
        doc_sents.sort(key=lambda s: s.index_in_doc)
    return docs


def _adjacent_pairs(sentences: list[Sentence]) -> list[tuple[Sentence, Sentence]]:
    pairs = []
    for doc_sents in _by_document(sentences).values():
        pairs.extend(zip(doc_sents, doc_sents[1:]))
    return pairs


def _norm_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def consecutive_negative_pairs(sentences: list[Sentence], n: int, seed: int) -> list[LabeledPair]:
    """Sample n adjacent-sentence pairs from the kept pool."""
    candidates = _adjacent_pairs(sentences)
    candidates = [(a, b) for a, b in candidates if a.text != b.text]
    if n > len(candidates):
        raise ShortfallError(n, len(candidates), "consecutive")
    rng = random.Random(seed)
    chosen = rng.sample(candidates, n)
    return [
        LabeledPair(
            pair_id=f"neg-c:{a.sent_id}|{b.sent_id}",
            sentence_1=a.text,
            sentence_2=b.text,
            label=LABEL_NON_PARAPHRASE,
            origin=ORIGIN_CONSECUTIVE,
        )
        for a, b in chosen
    ]


def random_negative_pairs(
    sentences: list[Sentence],
    n: int,
    seed: int,
    exclude: set[tuple[str, str]] | None = None,
) -> list[LabeledPair]:
    """Sample n random distinct-sentence pairs.

    ``exclude`` holds order-insensitive (text, text) keys (typically the
    positive pairs); adjacent-in-document pairs and equal-text pairs are
    always excluded. Rejection sampling with an exhaustive fallback when
    the pool nears exhaustion.
    """
    if len(sentences) < 2:
        raise ShortfallError(n, 0, "random")
    excluded: set[tuple[str, str]] = set(exclude or set())
    for a, b in _adjacent_pairs(sentences):
        excluded.add(_norm_key(a.text, b.text))
    rng = random.Random(seed)
    chosen: list[tuple[Sentence, Sentence]] = []
    used_keys: set[tuple[str, str]] = set()
    attempts = 0
    max_attempts = 100 * n + 10_000
    while len(chosen) < n and attempts < max_attempts:
        attempts += 1
        i, j = rng.sample(range(len(sentences)), 2)
        a, b = sentences[i], sentences[j]
        key = _norm_key(a.text, b.text)
        if a.text == b.text or key in excluded or key in used_keys:
            continue
        used_keys.add(key)
        chosen.append((a, b))
    if len(chosen) < n:
        # Rejections dominated: enumerate what is left so shortfall errors
        # can name the exact achievable count.
        remaining = []
        for i in range(len(sentences)):
            for j in range(i + 1, len(sentences)):
                a, b = sentences[i], sentences[j]
                key = _norm_key(a.text, b.text)
                if a.text == b.text or key in excluded or key in used_keys:
                    continue
                used_keys.add(key)
                remaining.append((a, b))
        rng.shuffle(remaining)
        missing = n - len(chosen)
        if len(remaining) < missing:
            raise ShortfallError(n, len(chosen) + len(remaining), "random")
        chosen.extend(remaining[:missing])
    return [
        LabeledPair(
            pair_id=f"neg-r:{a.sent_id}|{b.sent_id}",
            sentence_1=a.text,
            sentence_2=b.text,
            label=LABEL_NON_PARAPHRASE,
            origin=ORIGIN_RANDOM,
        )
        for a, b in chosen
    ]
