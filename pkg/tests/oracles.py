"""Independent brute-force reference implementations.

These deliberately avoid the algorithms used by the package: set overlap
by nested membership scans, edit distance by iterative-deepening search
over single edit operations, kappa by explicit contingency counting, and
classification metrics by recounting one pair at a time.
"""

from __future__ import annotations

import math


def jaccard_oracle(words_a: list[str], words_b: list[str]) -> float:
    uniq_a: list[str] = []
    for w in words_a:
        if w not in uniq_a:
            uniq_a.append(w)
    uniq_b: list[str] = []
    for w in words_b:
        if w not in uniq_b:
            uniq_b.append(w)
    inter = sum(1 for w in uniq_a if w in uniq_b)
    union = len(uniq_a) + sum(1 for w in uniq_b if w not in uniq_a)
    if union == 0:
        return 1.0
    return inter / union


def edit_distance_oracle(seq_a: list[str], seq_b: list[str]) -> int:
    """Iterative-deepening search over delete/insert/substitute edits."""

    a, b = tuple(seq_a), tuple(seq_b)

    def feasible(i: int, j: int, budget: int) -> bool:
        # Can a[:i] be turned into b[:j] within `budget` edits?
        while i > 0 and j > 0 and a[i - 1] == b[j - 1]:
            i -= 1
            j -= 1
        if i == 0:
            return j <= budget
        if j == 0:
            return i <= budget
        if budget == 0:
            return False
        return (
            feasible(i - 1, j - 1, budget - 1)  # substitute
            or feasible(i - 1, j, budget - 1)  # delete
            or feasible(i, j - 1, budget - 1)  # insert
        )

    limit = 0
    while not feasible(len(a), len(b), limit):
        limit += 1
    return limit


def kappa_oracle(labels_a: list, labels_b: list) -> tuple[float, float, float]:
    """(p_o, p_e, kappa) from an explicitly built contingency table."""
    n = len(labels_a)
    categories = sorted(set(labels_a) | set(labels_b), key=repr)
    table = {(x, y): 0 for x in categories for y in categories}
    for x, y in zip(labels_a, labels_b):
        table[(x, y)] += 1
    p_o = sum(table[(c, c)] for c in categories) / n
    p_e = 0.0
    for c in categories:
        row = sum(table[(c, y)] for y in categories) / n
        col = sum(table[(x, c)] for x in categories) / n
        p_e += row * col
    kappa = 1.0 if p_e >= 1.0 else (p_o - p_e) / (1.0 - p_e)
    return p_o, p_e, kappa


def confusion_oracle(gold_pos: list[bool], pred_pos: list[bool]) -> tuple[int, int, int, int]:
    tp = fp = fn = tn = 0
    for g, p in zip(gold_pos, pred_pos):
        if g and p:
            tp += 1
        elif g and not p:
            fn += 1
        elif not g and p:
            fp += 1
        else:
            tn += 1
    return tp, fp, fn, tn


def prf_oracle(tp: int, fp: int, fn: int, tn: int) -> dict[str, float]:
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    accuracy = (tp + tn) / (tp + fp + fn + tn) if tp + fp + fn + tn else 0.0
    return {"precision": precision, "recall": recall, "f1": f1, "accuracy": accuracy}


def mean_oracle(values: list[float]) -> float:
    return math.fsum(values) / len(values)


def binomial_ci_width_oracle(p: float, n: int, z: float = 1.96) -> float:
    """Width of the normal-approximation interval for a proportion."""
    return 2 * z * math.sqrt(p * (1 - p) / n)
