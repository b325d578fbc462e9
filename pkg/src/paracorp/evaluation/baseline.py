"""Lexical-overlap baseline: predict paraphrase when Jaccard >= threshold."""

from __future__ import annotations

from ..corpus.tokenizer import tokenize
from ..dataset.splits import LABEL_NON_PARAPHRASE, LABEL_PARAPHRASE, DatasetSplit
from ..metrics import jaccard
from .scoring import ConfusionCounts, PredictionSet, prf_accuracy


def _pair_jaccard(split: DatasetSplit, include_stopwords: bool = True) -> dict[str, float]:
    return {
        p.pair_id: jaccard(
            list(tokenize(p.sentence_1)),
            list(tokenize(p.sentence_2)),
            include_stopwords=include_stopwords,
        ).value
        for p in split.pairs
    }


def jaccard_baseline(split: DatasetSplit, threshold: float, include_stopwords: bool = True) -> PredictionSet:
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must be in [0, 1]")
    scores = _pair_jaccard(split, include_stopwords)
    entries = {
        pair_id: LABEL_PARAPHRASE if value >= threshold else LABEL_NON_PARAPHRASE
        for pair_id, value in scores.items()
    }
    return PredictionSet(model_id=f"jaccard>={threshold:g}", entries=entries)


def tune_threshold(train_split: DatasetSplit, include_stopwords: bool = True) -> float:
    """Grid-search the F1-maximizing threshold over observed Jaccard values.

    Ties break toward the lower threshold. A one-label train split is
    degenerate and yields 0.0 (predict everything paraphrase).
    """
    labels = {p.label for p in train_split.pairs}
    if len(labels) < 2:
        return 0.0
    scores = _pair_jaccard(train_split, include_stopwords)
    gold_pos = {p.pair_id: p.label == LABEL_PARAPHRASE for p in train_split.pairs}
    best_threshold = 0.0
    best_f1 = -1.0
    for threshold in sorted(set(scores.values())):
        tp = fp = fn = tn = 0
        for pair_id, value in scores.items():
            said_pos = value >= threshold
            if gold_pos[pair_id] and said_pos:
                tp += 1
            elif gold_pos[pair_id]:
                fn += 1
            elif said_pos:
                fp += 1
            else:
                tn += 1
        f1 = prf_accuracy(ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)).f1
        if f1 > best_f1:
            best_f1 = f1
            best_threshold = threshold
    return best_threshold
