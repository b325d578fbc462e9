"""Plain-text report rendering for split statistics and evaluation runs."""

from __future__ import annotations

from .dataset.splits import SplitStats
from .evaluation.scoring import EvalReport


def _fmt(value: float | None, digits: int = 3) -> str:
    return "-" if value is None else f"{value:.{digits}f}"


def render_split_stats(stats_by_split: dict[str, SplitStats], cfg_hash: str) -> str:
    lines = [
        f"# config={cfg_hash}",
        "split      paraphrase  jaccard(p)  non-paraphrase  jaccard(n)   total",
    ]
    for name, stats in stats_by_split.items():
        lines.append(
            f"{name:<10} {stats.n_paraphrase:>10}  {_fmt(stats.mean_jaccard_paraphrase):>10}"
            f"  {stats.n_non_paraphrase:>14}  {_fmt(stats.mean_jaccard_non_paraphrase):>10}"
            f"  {stats.n_total:>6}"
        )
    return "\n".join(lines) + "\n"


def render_diversity(means_by_split: dict[str, dict[str, float | None]], cfg_hash: str) -> str:
    lines = [
        f"# config={cfg_hash}",
        "split      mean-edits(paraphrase)  mean-edits(non-paraphrase)",
    ]
    for name, means in means_by_split.items():
        lines.append(
            f"{name:<10} {_fmt(means.get('paraphrase'), 2):>22}  {_fmt(means.get('non_paraphrase'), 2):>26}"
        )
    return "\n".join(lines) + "\n"


def render_eval_report(report: EvalReport) -> str:
    lines = [
        f"model: {report.model_id}",
        f"pairs: {report.counts.total}  (tp={report.counts.tp} fp={report.counts.fp} "
        f"fn={report.counts.fn} tn={report.counts.tn})",
        f"bootstrap: {report.n_resamples} resamples, seed {report.seed}",
        "",
        "metric     value   95% CI",
    ]
    for metric in ("f1", "accuracy", "recall", "precision"):
        low, high = report.intervals[metric]
        lines.append(f"{metric:<10} {report.values.get(metric):.3f}   ({low:.3f}, {high:.3f})")
    if report.values.degenerate:
        lines.append(f"degenerate metrics (zero denominator): {', '.join(report.values.degenerate)}")
    if report.near_paraphrase_accuracy is not None:
        lines.append(f"near-paraphrase accuracy: {report.near_paraphrase_accuracy:.4f}")
    return "\n".join(lines) + "\n"


def eval_report_record(report: EvalReport, cfg_hash: str) -> dict:
    return {
        "model_id": report.model_id,
        "config_hash": cfg_hash,
        "counts": {
            "tp": report.counts.tp,
            "fp": report.counts.fp,
            "fn": report.counts.fn,
            "tn": report.counts.tn,
        },
        "metrics": {
            m: {"value": report.values.get(m), "ci": list(report.intervals[m])}
            for m in ("f1", "accuracy", "recall", "precision")
        },
        "degenerate": list(report.values.degenerate),
        "near_paraphrase_accuracy": report.near_paraphrase_accuracy,
        "n_resamples": report.n_resamples,
        "seed": report.seed,
    }
