"""Friedman-gated pairwise Wilcoxon comparison of paired trial reports."""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import InsufficientDataError, PairingError
from ..stats import friedman_test, wilcoxon_signed_rank

OVERALL = "overall"


@dataclass
class PairOutcome:
    first: str
    second: str
    statistic: float
    p_value: float
    significant: bool


@dataclass
class DatasetComparison:
    dataset: str
    algorithms: list
    means: dict
    friedman_statistic: float
    friedman_p: float
    gate_passed: bool
    pairs: list = field(default_factory=list)
    best: list = field(default_factory=list)

    def pair(self, a, b):
        for p in self.pairs:
            if {p.first, p.second} == {a, b}:
                return p
        return None


@dataclass
class ComparisonSummary:
    alpha_friedman: float
    alpha_wilcoxon: float
    datasets: list = field(default_factory=list)

    def __getitem__(self, name):
        for d in self.datasets:
            if d.dataset == name:
                return d
        raise KeyError(name)


def paired_matrix(reports, dataset=None):
    """Score matrix with blocks as rows and algorithms as columns.

    Blocks are ``(dataset, trial_index)`` pairs. Blocks where any algorithm
    failed are dropped; a block missing for some algorithm raises
    ``PairingError``.
    """
    selected = [r for r in reports if dataset is None or r.dataset == dataset]
    algorithms = list(dict.fromkeys(r.algorithm for r in selected))
    table = {}
    for r in selected:
        key = (r.dataset, r.trial_index)
        cell = table.setdefault(key, {})
        if r.algorithm in cell:
            raise PairingError(f"duplicate report for {r.algorithm} on {key[0]} trial {key[1]}")
        cell[r.algorithm] = r
    for key, cell in table.items():
        missing = [a for a in algorithms if a not in cell]
        if missing:
            raise PairingError(
                f"{key[0]} trial {key[1]} has no report for {', '.join(missing)}; trials are unpaired"
            )
    blocks = [key for key, cell in table.items() if not any(r.failed for r in cell.values())]
    scores = np.array([[table[key][a].test_accuracy for a in algorithms] for key in blocks])
    return algorithms, blocks, scores.reshape(len(blocks), len(algorithms))


def compare_matrix(name, algorithms, scores, alpha_friedman=0.05, alpha_wilcoxon=0.01):
    means = {a: float(scores[:, j].mean()) if len(scores) else math.nan for j, a in enumerate(algorithms)}
    try:
        stat, p = friedman_test(scores)
    except InsufficientDataError:
        stat, p = math.nan, math.nan
    gate = bool(p <= alpha_friedman)
    result = DatasetComparison(name, algorithms, means, stat, p, gate)
    if not gate:
        result.best = list(algorithms)
        return result
    for i, j in itertools.combinations(range(len(algorithms)), 2):
        try:
            w = wilcoxon_signed_rank(scores[:, i], scores[:, j])
            outcome = PairOutcome(algorithms[i], algorithms[j], w.statistic, w.p_value, w.p_value <= alpha_wilcoxon)
        except InsufficientDataError:
            outcome = PairOutcome(algorithms[i], algorithms[j], math.nan, math.nan, False)
        result.pairs.append(outcome)
    top = max(algorithms, key=lambda a: means[a])
    result.best = [
        a for a in algorithms if a == top or not result.pair(a, top).significant
    ]
    return result


def compare(reports, alpha_friedman=0.05, alpha_wilcoxon=0.01):
    """Per-dataset comparison, plus an ``overall`` entry when several datasets are present.

    Each dataset gets a Friedman test; only if ``p <= alpha_friedman`` are
    all pairs tested with Wilcoxon at ``alpha_wilcoxon``. ``best`` lists
    the algorithms not significantly different from the highest mean.
    """
    summary = ComparisonSummary(alpha_friedman, alpha_wilcoxon)
    datasets = list(dict.fromkeys(r.dataset for r in reports))
    for name in datasets:
        algorithms, _, scores = paired_matrix(reports, name)
        if len(algorithms) < 2:
            continue
        summary.datasets.append(compare_matrix(name, algorithms, scores, alpha_friedman, alpha_wilcoxon))
    if len(datasets) > 1:
        algorithms, _, scores = paired_matrix(reports)
        if len(algorithms) >= 2:
            summary.datasets.append(compare_matrix(OVERALL, algorithms, scores, alpha_friedman, alpha_wilcoxon))
    return summary
