"""Scoring of paraphrase-detection predictions against gold splits.

Paraphrase is the positive class throughout. Confidence intervals are
seeded percentile bootstrap over test pairs; every resample derives its
own generator from (seed, resample index), so parallel and serial
evaluation produce identical intervals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..dataset.splits import LABEL_PARAPHRASE, LABELS, DatasetSplit

METRICS = ("f1", "accuracy", "recall", "precision")


class CoverageError(ValueError):
    """Predictions do not cover the gold split exactly."""

    def __init__(self, missing: list[str], extra: list[str]):
        parts = []
        if missing:
            parts.append(f"missing {len(missing)} pair_ids (first: {missing[:5]})")
        if extra:
            parts.append(f"extra {len(extra)} pair_ids (first: {extra[:5]})")
        super().__init__("; ".join(parts))
        self.missing = missing
        self.extra = extra


@dataclass(frozen=True)
class PredictionSet:
    model_id: str
    entries: dict[str, str]  # pair_id -> label

    def __post_init__(self):
        bad = {l for l in self.entries.values() if l not in LABELS}
        if bad:
            raise ValueError(f"unknown prediction labels: {sorted(bad)}")


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricValues:
    precision: float
    recall: float
    f1: float
    accuracy: float
    degenerate: tuple[str, ...] = ()

    def get(self, metric: str) -> float:
        return getattr(self, metric)


@dataclass(frozen=True)
class EvalReport:
    model_id: str
    counts: ConfusionCounts
    values: MetricValues
    intervals: dict[str, tuple[float, float]]
    near_paraphrase_accuracy: float | None
    n_resamples: int
    seed: int
    provenance: dict = field(default_factory=dict)


def confusion(preds: PredictionSet, gold: DatasetSplit) -> ConfusionCounts:
    """Count tp/fp/fn/tn; predictions must cover the split exactly."""
    gold_ids = {p.pair_id for p in gold.pairs}
    pred_ids = set(preds.entries)
    if gold_ids != pred_ids:
        raise CoverageError(missing=sorted(gold_ids - pred_ids), extra=sorted(pred_ids - gold_ids))
    tp = fp = fn = tn = 0
    for pair in gold.pairs:
        is_pos = pair.label == LABEL_PARAPHRASE
        said_pos = preds.entries[pair.pair_id] == LABEL_PARAPHRASE
        if is_pos and said_pos:
            tp += 1
        elif is_pos:
            fn += 1
        elif said_pos:
            fp += 1
        else:
            tn += 1
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def prf_accuracy(c: ConfusionCounts) -> MetricValues:
    """Precision, recall, F1 and accuracy; zero denominators yield 0.0 and
    are reported in the ``degenerate`` tuple instead of raising."""
    degenerate = []
    if c.tp + c.fp > 0:
        precision = c.tp / (c.tp + c.fp)
    else:
        precision = 0.0
        degenerate.append("precision")
    if c.tp + c.fn > 0:
        recall = c.tp / (c.tp + c.fn)
    else:
        recall = 0.0
        degenerate.append("recall")
    if precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
        degenerate.append("f1")
    if c.total > 0:
        accuracy = (c.tp + c.tn) / c.total
    else:
        accuracy = 0.0
        degenerate.append("accuracy")
    return MetricValues(
        precision=precision, recall=recall, f1=f1, accuracy=accuracy, degenerate=tuple(degenerate)
    )


def _metric_from_arrays(gold_pos: np.ndarray, pred_pos: np.ndarray, metric: str) -> float:
    tp = int(np.count_nonzero(gold_pos & pred_pos))
    fp = int(np.count_nonzero(~gold_pos & pred_pos))
    fn = int(np.count_nonzero(gold_pos & ~pred_pos))
    tn = int(np.count_nonzero(~gold_pos & ~pred_pos))
    return prf_accuracy(ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)).get(metric)


def _aligned_arrays(preds: PredictionSet, gold: DatasetSplit) -> tuple[np.ndarray, np.ndarray]:
    # Canonical pair_id order makes seeded resampling invariant to the
    # order pairs happen to be stored in.
    ordered = sorted(gold.pairs, key=lambda p: p.pair_id)
    gold_pos = np.array([p.label == LABEL_PARAPHRASE for p in ordered], dtype=bool)
    pred_pos = np.array([preds.entries[p.pair_id] == LABEL_PARAPHRASE for p in ordered], dtype=bool)
    return gold_pos, pred_pos


def bootstrap_ci(
    preds: PredictionSet,
    gold: DatasetSplit,
    metric: str,
    n_resamples: int = 10_000,
    seed: int = 0,
    alpha: float = 0.05,
) -> tuple[float, float]:
    """Percentile bootstrap (resampling pairs with replacement)."""
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}")
    if not gold.pairs:
        raise ValueError("cannot bootstrap an empty split")
    confusion(preds, gold)  # enforce coverage
    gold_pos, pred_pos = _aligned_arrays(preds, gold)
    n = len(gold.pairs)
    stats = np.empty(n_resamples)
    for i in range(n_resamples):
        rng = np.random.default_rng((seed, i))
        idx = rng.integers(0, n, n)
        stats[i] = _metric_from_arrays(gold_pos[idx], pred_pos[idx], metric)
    low, high = np.quantile(stats, [alpha / 2, 1 - alpha / 2])
    return float(low), float(high)


def near_paraphrase_accuracy(preds: PredictionSet, gold: DatasetSplit) -> float:
    """Fraction of near-paraphrase pairs correctly predicted non-paraphrase."""
    subset = [p for p in gold.pairs if p.near_paraphrase]
    if not subset:
        raise ValueError("gold split contains no near-paraphrase pairs")
    correct = sum(1 for p in subset if preds.entries[p.pair_id] != LABEL_PARAPHRASE)
    return correct / len(subset)


def evaluate(
    preds: PredictionSet,
    gold: DatasetSplit,
    n_resamples: int = 10_000,
    seed: int = 0,
    alpha: float = 0.05,
) -> EvalReport:
    """Full report: confusion, point metrics, CIs, near-paraphrase accuracy."""
    counts = confusion(preds, gold)
    values = prf_accuracy(counts)
    intervals = {
        m: bootstrap_ci(preds, gold, m, n_resamples=n_resamples, seed=seed, alpha=alpha) for m in METRICS
    }
    has_near = any(p.near_paraphrase for p in gold.pairs)
    near = near_paraphrase_accuracy(preds, gold) if has_near else None
    return EvalReport(
        model_id=preds.model_id,
        counts=counts,
        values=values,
        intervals=intervals,
        near_paraphrase_accuracy=near,
        n_resamples=n_resamples,
        seed=seed,
    )
