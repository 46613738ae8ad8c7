"""Repeated paired trials of every configured algorithm on one dataset."""

import json
import logging
import os
import platform
import time
import zlib
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .. import kernels
from ..baselines import baseline_train
from ..datasets import concat, load_csv, load_feature_label_files, split_and_normalize, synth_vowels
from ..elm import accuracy, elm_train, input_weight_norm
from ..errors import ConfigError, NumericFailure
from ..numerics import make_rng
from ..rbm_elm import RbmElmConfig, rbm_elm_train
from ..stats import aggregate
from . import output
from .compare import compare
from .config import config_hash, dump_config, with_sweep_value

log = logging.getLogger(__name__)

SPLIT_STREAM = 0
ALGORITHM_STREAM = 1


def load_dataset(spec, seed=None):
    """Return ``(train_or_full, predefined_test_or_None)`` for a dataset spec."""
    if spec.synthetic == "vowels":
        rng = make_rng(spec.data_seed if seed is None else seed)
        return synth_vowels(rng, spec.per_class, spec.side), None
    name = spec.display_name()
    if spec.labels_path:
        data = load_feature_label_files(spec.path, spec.labels_path, name=name)
    else:
        data = load_csv(spec.path, spec.label_column, spec.delimiter, spec.skip_header, name=name)
    test = None
    if spec.test_path:
        if spec.test_labels_path:
            test = load_feature_label_files(spec.test_path, spec.test_labels_path, name=name)
        else:
            test = load_csv(spec.test_path, spec.label_column, spec.delimiter, spec.skip_header, name=name)
    return data, test


def trial_seed(config, trial_index):
    return config.base_seed + trial_index


def algorithm_rng(seed, label):
    return make_rng(seed, ALGORITHM_STREAM, zlib.crc32(label.encode()))


def make_split(config, data, test, seed):
    return split_and_normalize(data, config.dataset.train_fraction, make_rng(seed, SPLIT_STREAM), test)


def train_algorithm(alg, split, rng):
    if alg.kind == "elm":
        return elm_train(split, alg.k, rng, rcond=alg.rcond)
    if alg.kind == "rbm_elm":
        model, _ = rbm_elm_train(split, RbmElmConfig(alg.k, alg.cd, alg.rcond), rng)
        return model
    return baseline_train(split, alg.kind, alg.k, rng, alg.rcond)


def run_trial(config, data, test, trial_index, sweep_value=None):
    seed = trial_seed(config, trial_index)
    split = make_split(config, data, test, seed)
    name = config.dataset.display_name()
    reports = []
    for alg in config.algorithms:
        rng = algorithm_rng(seed, alg.label)
        try:
            t0 = time.perf_counter()
            model = train_algorithm(alg, split, rng)
            elapsed = time.perf_counter() - t0
        except (NumericFailure, FloatingPointError, np.linalg.LinAlgError) as exc:
            log.warning("trial %d, %s failed: %s", trial_index, alg.label, exc)
            reports.append(
                output.failed_report(alg.label, name, trial_index, seed, str(exc), sweep_value)
            )
            continue
        reports.append(
            output.TrialReport(
                algorithm=alg.label,
                dataset=name,
                trial_index=trial_index,
                seed=seed,
                test_accuracy=accuracy(model, split.test_X, split.test_Y),
                train_seconds=elapsed,
                input_weight_norm=input_weight_norm(model),
                sweep_value=sweep_value,
            )
        )
    return reports


def _run_trial_job(args):
    return run_trial(*args)


def collect_trials(config, data, test, sweep_value=None, jobs=None):
    jobs = config.jobs if jobs is None else jobs
    tasks = [(config, data, test, t, sweep_value) for t in range(config.trials)]
    if jobs <= 1:
        batches = [_run_trial_job(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_run_trial_job, tasks))
    return [r for batch in batches for r in batch]


def write_manifest(config, out_dir, extra=None):
    manifest = {
        "config_hash": config_hash(config),
        "config": dump_config(config),
        "seeds": [trial_seed(config, t) for t in range(config.trials)],
        "kernel_backend": kernels.BACKEND,
        "numpy": np.__version__,
        "python": platform.python_version(),
    }
    if extra:
        manifest.update(extra)
    with open(os.path.join(out_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2)


def run_experiment(config, write=True):
    """Run every algorithm for ``config.trials`` paired trials.

    Trial ``t`` uses seed ``base_seed + t``; all algorithms in a trial see
    the same split. Returns the list of trial reports and, when ``write``
    is set, regenerates the result files in ``config.out``.
    """
    config.validate()
    data, test = load_dataset(config.dataset)
    reports = collect_trials(config, data, test)
    if write:
        os.makedirs(config.out, exist_ok=True)
        rows = aggregate(reports)
        summary = compare(reports, config.alpha_friedman, config.alpha_wilcoxon)
        output.write_reports(reports, os.path.join(config.out, "trials.csv"))
        output.write_aggregates(rows, os.path.join(config.out, "aggregate.csv"))
        output.write_significance(summary, os.path.join(config.out, "significance.csv"))
        with open(os.path.join(config.out, "table.txt"), "w") as fh:
            fh.write(output.render_table(rows, summary))
        write_manifest(config, config.out)
    return reports


def run_sweep(config, write=True):
    """Repeat the experiment once per sweep value; returns ``{value: [AggregateRow]}``."""
    config.validate()
    if config.sweep_axis is None:
        raise ConfigError("run_sweep needs sweep_axis and sweep_values")
    data, test = load_dataset(config.dataset)
    blocks = {}
    all_reports = []
    for value in config.sweep_values:
        pinned = with_sweep_value(config, value)
        reports = collect_trials(pinned, data, test, sweep_value=value, jobs=config.jobs)
        all_reports.extend(reports)
        blocks[value] = aggregate(reports)
    if write:
        os.makedirs(config.out, exist_ok=True)
        output.write_reports(all_reports, os.path.join(config.out, "trials.csv"))
        output.write_aggregates(
            [row for rows in blocks.values() for row in rows], os.path.join(config.out, "sweep.csv")
        )
        with open(os.path.join(config.out, "sweep.txt"), "w") as fh:
            fh.write(output.render_sweep(blocks, config.sweep_axis))
        write_manifest(config, config.out, {"sweep_axis": config.sweep_axis})
    return blocks
