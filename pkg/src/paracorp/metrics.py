"""Sentence-pair and agreement metrics.

Jaccard similarity over token sets, word-level Levenshtein edit distance,
the content-word diversity score (edit distance after dropping punctuation
and stopwords), and pairwise Cohen's kappa. All functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus.tokenizer import KIND_PUNCTUATION, Token


@dataclass(frozen=True)
class JaccardScore:
    pair_id: str
    value: float


@dataclass(frozen=True)
class DiversityScore:
    pair_id: str
    edits: int


@dataclass(frozen=True)
class KappaReport:
    annotator_a: str
    annotator_b: str
    n_items: int
    observed_agreement: float
    expected_agreement: float
    kappa: float


class EmptyAggregateError(ValueError):
    pass


def _word_surfaces(tokens: list[Token], include_stopwords: bool) -> list[str]:
    return [
        t.surface.casefold()
        for t in tokens
        if t.kind != KIND_PUNCTUATION and (include_stopwords or not t.is_stopword)
    ]


def jaccard(
    tokens_a: list[Token],
    tokens_b: list[Token],
    pair_id: str = "",
    include_stopwords: bool = True,
) -> JaccardScore:
    """|A ∩ B| / |A ∪ B| over case-folded non-punctuation token sets.

    Both sets empty yields 1.0 by convention. Stopwords are included by
    default; pass include_stopwords=False to drop them.
    """
    set_a = set(_word_surfaces(tokens_a, include_stopwords))
    set_b = set(_word_surfaces(tokens_b, include_stopwords))
    union = set_a | set_b
    if not union:
        return JaccardScore(pair_id=pair_id, value=1.0)
    return JaccardScore(pair_id=pair_id, value=len(set_a & set_b) / len(union))


def word_edit_distance(seq_a: list[str], seq_b: list[str], allow_substitution: bool = True) -> int:
    """Minimum unit-cost insertions/deletions/substitutions turning seq_a into seq_b.

    With allow_substitution=False, a replacement costs a deletion plus an
    insertion (the distance becomes len_a + len_b − 2·LCS).
    """
    m, n = len(seq_a), len(seq_b)
    prev = list(range(n + 1))
    for i in range(1, m + 1):
        cur = [i] + [0] * n
        ai = seq_a[i - 1]
        for j in range(1, n + 1):
            if ai == seq_b[j - 1]:
                cur[j] = prev[j - 1]
            elif allow_substitution:
                cur[j] = 1 + min(prev[j - 1], prev[j], cur[j - 1])
            else:
                cur[j] = 1 + min(prev[j], cur[j - 1])
        prev = cur
    return prev[n]


def diversity(
    tokens_a: list[Token],
    tokens_b: list[Token],
    pair_id: str = "",
    allow_substitution: bool = True,
) -> DiversityScore:
    """Word-level edit distance over case-folded tokens, punctuation and
    stopwords removed, so the count reflects meaningful rewording only."""
    seq_a = _word_surfaces(tokens_a, include_stopwords=False)
    seq_b = _word_surfaces(tokens_b, include_stopwords=False)
    return DiversityScore(pair_id=pair_id, edits=word_edit_distance(seq_a, seq_b, allow_substitution))


def corpus_mean(scores: list[float]) -> float:
    if not scores:
        raise EmptyAggregateError("cannot aggregate an empty score list")
    return sum(scores) / len(scores)


def cohens_kappa(
    labels_a: list,
    labels_b: list,
    annotator_a: str = "a",
    annotator_b: str = "b",
) -> KappaReport:
    """Chance-corrected pairwise agreement.

    p_o is the fraction of items labeled identically; p_e is the chance
    agreement from the two annotators' marginal label distributions,
    sum_c p_a(c) * p_b(c); kappa = (p_o - p_e) / (1 - p_e). When p_e = 1
    both marginals are concentrated on one label, which forces p_o = 1,
    and kappa is 1 by convention.
    """
    if len(labels_a) != len(labels_b):
        raise ValueError(f"label lists differ in length: {len(labels_a)} vs {len(labels_b)}")
    n = len(labels_a)
    if n == 0:
        raise ValueError("cannot compute kappa on zero items")
    p_o = sum(1 for x, y in zip(labels_a, labels_b) if x == y) / n
    categories = set(labels_a) | set(labels_b)
    p_e = sum((labels_a.count(c) / n) * (labels_b.count(c) / n) for c in categories)
    kappa = 1.0 if p_e >= 1.0 else (p_o - p_e) / (1.0 - p_e)
    return KappaReport(
        annotator_a=annotator_a,
        annotator_b=annotator_b,
        n_items=n,
        observed_agreement=p_o,
        expected_agreement=p_e,
        kappa=kappa,
    )
