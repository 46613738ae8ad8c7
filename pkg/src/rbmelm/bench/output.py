"""Result files: trial and aggregate CSVs, significance outcomes, text tables."""

import csv
import dataclasses
import math

from ..stats import AggregateRow, TrialReport

__all__ = [
    "TrialReport",
    "failed_report",
    "read_reports",
    "render_sweep",
    "render_table",
    "write_aggregates",
    "write_reports",
    "write_significance",
]

_REPORT_FIELDS = [f.name for f in dataclasses.fields(TrialReport)]
_AGGREGATE_FIELDS = [f.name for f in dataclasses.fields(AggregateRow)]


def failed_report(algorithm, dataset, trial_index, seed, message, sweep_value=None):
    return TrialReport(algorithm, dataset, trial_index, seed, math.nan, math.nan, math.nan, sweep_value, message)


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write(rows, fields, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([_cell(getattr(row, f)) for f in fields])


def write_reports(reports, path):
    _write(reports, _REPORT_FIELDS, path)


def write_aggregates(rows, path):
    _write(rows, _AGGREGATE_FIELDS, path)


def read_reports(path):
    reports = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            reports.append(
                TrialReport(
                    algorithm=rec["algorithm"],
                    dataset=rec["dataset"],
                    trial_index=int(rec["trial_index"]),
                    seed=int(rec["seed"]),
                    test_accuracy=float(rec["test_accuracy"]),
                    train_seconds=float(rec["train_seconds"]),
                    input_weight_norm=float(rec["input_weight_norm"]),
                    sweep_value=float(rec["sweep_value"]) if rec.get("sweep_value") else None,
                    error=rec.get("error") or None,
                )
            )
    return reports


def write_significance(summary, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["dataset", "test", "first", "second", "statistic", "p_value", "significant", "alpha"])
        for d in summary.datasets:
            writer.writerow(
                [d.dataset, "friedman", "*", "*", _cell(d.friedman_statistic), _cell(d.friedman_p),
                 int(d.gate_passed), summary.alpha_friedman]
            )
            for p in d.pairs:
                writer.writerow(
                    [d.dataset, "wilcoxon", p.first, p.second, _cell(p.statistic), _cell(p.p_value),
                     int(p.significant), summary.alpha_wilcoxon]
                )
        writer.writerow([])
        writer.writerow(["dataset", "best"])
        for d in summary.datasets:
            writer.writerow([d.dataset, " ".join(d.best)])


def _acc(row):
    if row is None or math.isnan(row.mean_accuracy):
        return "-"
    std = "n/a" if row.std_accuracy is None else f"{100 * row.std_accuracy:.3f}"
    return f"{100 * row.mean_accuracy:.3f} ± {std}"


def render_table(rows, summary=None):
    """Plain-text accuracy/time table, one line per dataset.

    Entries in the best set of ``summary`` are wrapped in asterisks.
    """
    datasets = list(dict.fromkeys(r.dataset for r in rows))
    algorithms = list(dict.fromkeys(r.algorithm for r in rows))
    lookup = {(r.dataset, r.algorithm): r for r in rows}
    best = {}
    if summary is not None:
        for d in summary.datasets:
            if d.gate_passed:
                best[d.dataset] = set(d.best)
    cells = [["Database"] + [c for a in algorithms for c in (f"{a} Accuracy (%)", f"{a} Time (sec)")]]
    for ds in datasets:
        line = [ds]
        for a in algorithms:
            row = lookup.get((ds, a))
            text = _acc(row)
            if a in best.get(ds, ()):
                text = f"*{text}*"
            line += [text, "-" if row is None else f"{row.mean_time:.3f}"]
        cells.append(line)
    if len(datasets) > 1:
        line = ["Overall mean/Total time"]
        for a in algorithms:
            mine = [lookup[(ds, a)] for ds in datasets if (ds, a) in lookup]
            means = [r.mean_accuracy for r in mine]
            stds = [r.std_accuracy for r in mine if r.std_accuracy is not None]
            acc = f"{100 * sum(means) / len(means):.3f}"
            if stds:
                acc += f" ± {100 * sum(stds) / len(stds):.3f}"
            line += [acc, f"{sum(r.mean_time for r in mine):.3f}"]
        cells.append(line)
    widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
    out = []
    for n, row in enumerate(cells):
        out.append(" | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if n == 0:
            out.append("-+-".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def render_sweep(blocks, axis):
    label = "# of neurons" if axis == "neurons" else "# of iterations (it)"
    lines = []
    for value, rows in blocks.items():
        for r in rows:
            time_std = "" if r.std_time is None else f" ± {r.std_time:.3f}"
            lines.append(f"{r.algorithm:10s} {label} = {value:<6} {_acc(r):>20s}   {r.mean_time:.3f}{time_std} s")
    return "\n".join(lines) + "\n"
