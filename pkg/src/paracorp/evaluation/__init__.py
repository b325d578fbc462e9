from .baseline import jaccard_baseline, tune_threshold
from .scoring import (
    ConfusionCounts,
    CoverageError,
    EvalReport,
    MetricValues,
    PredictionSet,
    bootstrap_ci,
    confusion,
    evaluate,
    near_paraphrase_accuracy,
    prf_accuracy,
)

__all__ = [
    "ConfusionCounts",
    "CoverageError",
    "EvalReport",
    "MetricValues",
    "PredictionSet",
    "bootstrap_ci",
    "confusion",
    "evaluate",
    "jaccard_baseline",
    "near_paraphrase_accuracy",
    "prf_accuracy",
    "tune_threshold",
]
