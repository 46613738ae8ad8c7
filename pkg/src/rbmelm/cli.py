"""Command-line entry point: ``rbmelm <verb> [options]``."""

import argparse
import dataclasses
import logging
import os
import sys

import numpy as np

from .bench.compare import compare
from .bench import output
from .bench.config import load_config
from .bench.runner import algorithm_rng, load_dataset, make_split, run_experiment, run_sweep, trial_seed
from .datasets import save_csv, synth_vowels
from .elm import random_input_weights
from .errors import ConfigError, RbmElmError
from .numerics import make_rng
from .rbm import rbm_train
from .stats import aggregate

log = logging.getLogger("rbmelm")


def _apply_overrides(config, args):
    changes = {}
    if args.seed is not None:
        changes["base_seed"] = args.seed
    if args.trials is not None:
        changes["trials"] = args.trials
    if args.out is not None:
        changes["out"] = args.out
    if args.jobs is not None:
        changes["jobs"] = args.jobs
    return dataclasses.replace(config, **changes).validate()


def _load(args):
    if not args.config:
        raise ConfigError("--config is required")
    return _apply_overrides(load_config(args.config), args)


def cmd_run(args):
    config = _load(args)
    reports = run_experiment(config)
    with open(os.path.join(config.out, "table.txt")) as fh:
        print(fh.read(), end="")
    failures = sum(r.failed for r in reports)
    if failures:
        print(f"{failures} trial(s) failed; see trials.csv", file=sys.stderr)
    return 0


def cmd_sweep(args):
    config = _load(args)
    run_sweep(config)
    with open(os.path.join(config.out, "sweep.txt")) as fh:
        print(fh.read(), end="")
    return 0


def cmd_compare(args):
    reports = [r for path in args.trials_csv for r in output.read_reports(path)]
    summary = compare(reports, args.alpha_friedman, args.alpha_wilcoxon)
    rows = aggregate(reports)
    table = output.render_table(rows, summary)
    print(table, end="")
    for d in summary.datasets:
        verdict = "differences found" if d.gate_passed else "no significant differences"
        print(f"{d.dataset}: Friedman p = {d.friedman_p:.4g} ({verdict}); best: {', '.join(d.best)}")
        for p in d.pairs:
            flag = "significant" if p.significant else "n.s."
            print(f"    {p.first} vs {p.second}: Wilcoxon p = {p.p_value:.4g} ({flag})")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        output.write_significance(summary, os.path.join(args.out, "significance.csv"))
        with open(os.path.join(args.out, "table.txt"), "w") as fh:
            fh.write(table)
    return 0


def _write_rows(matrix, path, delimiter=","):
    np.savetxt(path, matrix, delimiter=delimiter, fmt="%.10g")


def cmd_dump_filters(args):
    config = _load(args)
    algs = [a for a in config.algorithms if a.kind == "rbm_elm"]
    if args.algorithm:
        algs = [a for a in algs if a.label == args.algorithm]
    if not algs:
        raise ConfigError("dump-filters needs an rbm_elm algorithm in the config")
    alg = algs[0]
    checkpoints = sorted({int(e) for e in args.epochs.split(",")}) if args.epochs else [alg.cd.max_epochs]
    cd = dataclasses.replace(alg.cd, max_epochs=max(checkpoints))
    data, test = load_dataset(config.dataset)
    seed = trial_seed(config, args.trial)
    split = make_split(config, data, test, seed)
    os.makedirs(config.out, exist_ok=True)
    written = []

    def checkpoint(epoch, params):
        if epoch in checkpoints:
            path = os.path.join(config.out, f"filters_{alg.label}_epoch{epoch}.csv")
            # one hidden unit per row, its m incoming weights as columns
            _write_rows(params.W.T, path)
            written.append(path)

    rbm_train(split.train_X, alg.k, cd, algorithm_rng(seed, alg.label), callback=checkpoint)
    W = random_input_weights(algorithm_rng(seed, "elm"), split.train_X.shape[1], alg.k)
    path = os.path.join(config.out, "filters_elm.csv")
    _write_rows(W[:-1].T, path)
    written.append(path)
    for p in written:
        print(p)
    return 0


def cmd_synth_vowels(args):
    data = synth_vowels(make_rng(args.seed if args.seed is not None else 0), args.per_class, args.side)
    save_csv(data, args.out)
    print(f"wrote {data.n_samples} samples x {data.n_features} features ({data.n_classes} classes) to {args.out}")
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="experiment INI file")
    common.add_argument("--seed", type=int, help="base seed (trial t uses seed + t)")
    common.add_argument("--trials", type=int, help="number of trials")
    common.add_argument("--out", help="output directory")
    common.add_argument("--jobs", type=int, help="parallel worker processes")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="rbmelm", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("run", parents=[common], help="run a multi-algorithm experiment")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", parents=[common], help="repeat an experiment across neuron or epoch counts")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", parents=[common], help="significance tests on existing trials.csv files")
    p.add_argument("trials_csv", nargs="+")
    p.add_argument("--alpha-friedman", type=float, default=0.05)
    p.add_argument("--alpha-wilcoxon", type=float, default=0.01)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("dump-filters", parents=[common], help="write RBM and random ELM weights as rows")
    p.add_argument("--epochs", help="comma-separated checkpoint epochs")
    p.add_argument("--trial", type=int, default=0, help="trial whose split and seed to use")
    p.add_argument("--algorithm", help="rbm_elm algorithm label in the config")
    p.set_defaults(func=cmd_dump_filters)

    p = sub.add_parser("synth-vowels", parents=[common], help="write the synthetic vowels dataset")
    p.add_argument("--per-class", type=int, default=276)
    p.add_argument("--side", type=int, default=30)
    p.set_defaults(func=cmd_synth_vowels)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.verb == "synth-vowels" and not args.out:
        parser.error("synth-vowels needs --out <file>")
    try:
        return args.func(args)
    except RbmElmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
