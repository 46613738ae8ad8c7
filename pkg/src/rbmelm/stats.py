"""Trial records, aggregation, and the Friedman / Wilcoxon significance tests."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special
from scipy.stats import rankdata

from .errors import InsufficientDataError


@dataclass
class TrialReport:
    algorithm: str
    dataset: str
    trial_index: int
    seed: int
    test_accuracy: float
    train_seconds: float
    input_weight_norm: float
    sweep_value: float = None
    error: str = None

    @property
    def failed(self):
        return self.error is not None


@dataclass
class AggregateRow:
    algorithm: str
    dataset: str
    mean_accuracy: float
    std_accuracy: float
    mean_time: float
    trial_count: int
    mean_norm: float = None
    std_time: float = None
    failures: int = 0
    sweep_value: float = None


def _std(values):
    return float(np.std(values, ddof=1)) if len(values) >= 2 else None


def aggregate(reports):
    """Group by ``(sweep_value, dataset, algorithm)`` in first-seen order.

    Failed trials are counted but excluded from the statistics. The sample
    standard deviation (``n - 1``) is ``None`` for groups of one.
    """
    if not reports:
        raise ValueError("no reports to aggregate")
    groups = {}
    for r in reports:
        groups.setdefault((r.sweep_value, r.dataset, r.algorithm), []).append(r)
    rows = []
    for (sweep, dataset, algorithm), group in groups.items():
        ok = [r for r in group if not r.failed]
        acc = [r.test_accuracy for r in ok]
        times = [r.train_seconds for r in ok]
        rows.append(
            AggregateRow(
                algorithm=algorithm,
                dataset=dataset,
                mean_accuracy=float(np.mean(acc)) if ok else math.nan,
                std_accuracy=_std(acc),
                mean_time=float(np.mean(times)) if ok else math.nan,
                trial_count=len(ok),
                mean_norm=float(np.mean([r.input_weight_norm for r in ok])) if ok else math.nan,
                std_time=_std(times),
                failures=len(group) - len(ok),
                sweep_value=sweep,
            )
        )
    return rows


def _chi2_sf(x, dof):
    return float(special.gammaincc(dof / 2.0, x / 2.0))


def _norm_sf(z):
    return float(0.5 * special.erfc(z / math.sqrt(2.0)))


def friedman_test(scores):
    """Friedman rank test over an ``(n_blocks, n_algorithms)`` score matrix.

    Ranks are taken within each block, ties sharing their average rank, and
    the statistic is tie-corrected and referred to chi-square with
    ``g - 1`` degrees of freedom. Returns ``(statistic, p_value)``.
    """
    scores = np.asarray(scores, dtype=np.float64)
    if scores.ndim != 2:
        raise ValueError("scores must be a 2-D (blocks x algorithms) matrix")
    n, g = scores.shape
    if n < 2 or g < 2:
        raise InsufficientDataError(f"need at least 2 blocks and 2 algorithms, got {n}x{g}")
    ranks = np.apply_along_axis(rankdata, 1, scores)
    rank_sums = ranks.sum(axis=0)
    ties = 0.0
    for row in scores:
        _, counts = np.unique(row, return_counts=True)
        ties += float(np.sum(counts**3 - counts))
    denom = 1.0 - ties / (n * g * (g * g - 1))
    if denom <= 1e-12:
        return 0.0, 1.0
    stat = (12.0 / (n * g * (g + 1)) * float(np.sum(rank_sums**2)) - 3.0 * n * (g + 1)) / denom
    stat = max(stat, 0.0)
    return stat, _chi2_sf(stat, g - 1)


@dataclass
class WilcoxonResult:
    statistic: float
    p_value: float
    w_plus: float
    w_minus: float
    n: int
    z: float = field(default=0.0)

    @property
    def direction(self):
        """+1 when ``x`` tends to exceed ``y``, -1 for the reverse, 0 when balanced."""
        return int(np.sign(self.w_plus - self.w_minus))


MIN_WILCOXON_PAIRS = 5


def wilcoxon_signed_rank(x, y):
    """Two-sided Wilcoxon signed-rank test with the normal approximation.

    Zero differences are dropped; tied absolute differences share their
    average rank and reduce the variance accordingly. A continuity
    correction of 0.5 is applied.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"x and y must be 1-D of equal length, got {x.shape} and {y.shape}")
    d = x - y
    d = d[d != 0]
    n = d.size
    if n == 0:
        return WilcoxonResult(0.0, 1.0, 0.0, 0.0, 0)
    if n < MIN_WILCOXON_PAIRS:
        raise InsufficientDataError(
            f"only {n} nonzero differences; need at least {MIN_WILCOXON_PAIRS}"
        )
    ranks = rankdata(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    w_minus = float(ranks[d < 0].sum())
    mean = n * (n + 1) / 4.0
    _, counts = np.unique(np.abs(d), return_counts=True)
    var = n * (n + 1) * (2 * n + 1) / 24.0 - float(np.sum(counts**3 - counts)) / 48.0
    dev = abs(w_plus - mean) - 0.5
    if var <= 0 or dev <= 0:
        return WilcoxonResult(min(w_plus, w_minus), 1.0, w_plus, w_minus, n, 0.0)
    z = dev / math.sqrt(var)
    p = min(1.0, 2.0 * _norm_sf(z))
    return WilcoxonResult(min(w_plus, w_minus), p, w_plus, w_minus, n, math.copysign(z, w_plus - mean))
