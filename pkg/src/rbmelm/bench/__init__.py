"""Benchmark harness: configs, repeated paired trials, significance tests, reports."""

from .compare import ComparisonSummary, DatasetComparison, compare
from .config import AlgorithmSpec, DatasetSpec, ExperimentConfig, dump_config, load_config, parse_config
from .runner import load_dataset, run_experiment, run_sweep, run_trial

__all__ = [
    "AlgorithmSpec",
    "ComparisonSummary",
    "DatasetComparison",
    "DatasetSpec",
    "ExperimentConfig",
    "compare",
    "dump_config",
    "load_config",
    "load_dataset",
    "parse_config",
    "run_experiment",
    "run_sweep",
    "run_trial",
]
