"""Experiment configuration and its INI representation.

Example::

    [experiment]
    name = spam
    trials = 30
    base_seed = 0
    out = results/spam

    [dataset]
    path = data/spambase.data

    [algorithm elm]
    k = 150

    [algorithm rbm_elm]
    k = 150
    max_epochs = 50
    eta = 0.001
    rho = 0.0001
    batch_size = 100
"""

import configparser
import dataclasses
import hashlib
import io
import os
from dataclasses import dataclass, field

from ..errors import ConfigError
from ..rbm import CdConfig

ALGORITHMS = ("elm", "rbm_elm", "elm_ro", "elm_ae")
SWEEP_AXES = ("neurons", "epochs")
SYNTHETIC = ("vowels",)

_CD_FIELDS = {f.name: f.type for f in dataclasses.fields(CdConfig)}


@dataclass
class DatasetSpec:
    path: str = None
    synthetic: str = None
    label_column: int = -1
    delimiter: str = ","
    skip_header: bool = False
    test_path: str = None
    labels_path: str = None
    test_labels_path: str = None
    train_fraction: float = 0.7
    per_class: int = 276
    side: int = 30
    data_seed: int = 0
    name: str = None

    def display_name(self):
        if self.name:
            return self.name
        if self.synthetic:
            return self.synthetic
        return os.path.splitext(os.path.basename(self.path))[0]


@dataclass
class AlgorithmSpec:
    kind: str
    k: int
    label: str = None
    rcond: float = None
    cd: CdConfig = field(default_factory=CdConfig)

    def __post_init__(self):
        if self.label is None:
            self.label = self.kind


@dataclass
class ExperimentConfig:
    dataset: DatasetSpec
    algorithms: list
    name: str = "experiment"
    trials: int = 30
    base_seed: int = 0
    out: str = "results"
    jobs: int = 1
    sweep_axis: str = None
    sweep_values: list = field(default_factory=list)
    alpha_friedman: float = 0.05
    alpha_wilcoxon: float = 0.01

    def validate(self):
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        if not self.algorithms:
            raise ConfigError("no algorithms configured")
        ds = self.dataset
        if (ds.path is None) == (ds.synthetic is None):
            raise ConfigError("dataset needs exactly one of 'path' or 'synthetic'")
        if ds.synthetic is not None and ds.synthetic not in SYNTHETIC:
            raise ConfigError(f"unknown synthetic dataset {ds.synthetic!r}; expected one of {SYNTHETIC}")
        labels = set()
        for alg in self.algorithms:
            if alg.kind not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {alg.kind!r}; expected one of {ALGORITHMS}")
            if alg.k is None or alg.k < 1:
                raise ConfigError(f"algorithm {alg.label!r}: k must be a positive integer")
            if alg.label in labels:
                raise ConfigError(f"duplicate algorithm label {alg.label!r}")
            labels.add(alg.label)
        if self.sweep_axis is not None:
            if self.sweep_axis not in SWEEP_AXES:
                raise ConfigError(f"unknown sweep axis {self.sweep_axis!r}; expected one of {SWEEP_AXES}")
            if not self.sweep_values:
                raise ConfigError("sweep axis given but sweep_values is empty")
            if any(v < 1 for v in self.sweep_values):
                raise ConfigError("sweep values must be positive")
        return self


def _parse_bool(text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _coerce(name, text, kind):
    if text.strip().lower() in ("", "none"):
        return None
    try:
        if kind in (int, "int"):
            return int(text)
        if kind in (float, "float"):
            return float(text)
        if kind in (bool, "bool"):
            return _parse_bool(text)
    except ValueError:
        raise ConfigError(f"{name}: cannot parse {text!r} as {kind}") from None
    return text


def _fill(cls, section, where):
    types = {f.name: f.type for f in dataclasses.fields(cls)}
    kwargs = {}
    for key, raw in section.items():
        if key not in types:
            raise ConfigError(f"[{where}] unknown key {key!r}")
        kwargs[key] = _coerce(f"[{where}] {key}", raw, types[key])
    return kwargs


def _parser():
    # keep delimiter values such as ';' or a literal tab intact
    return configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))


def parse_config(text):
    cp = _parser()
    cp.read_string(text)
    if not cp.has_section("dataset"):
        raise ConfigError("missing [dataset] section")
    exp = dict(cp["experiment"]) if cp.has_section("experiment") else {}
    sweep_values = exp.pop("sweep_values", "")
    ds_section = dict(cp["dataset"])
    delimiter = ds_section.pop("delimiter", None)
    dataset = DatasetSpec(**_fill(DatasetSpec, ds_section, "dataset"))
    if delimiter is not None:
        # a tab or space delimiter must survive the blank-means-None rule
        dataset.delimiter = _unescape(delimiter)
    algorithms = []
    for sec in cp.sections():
        if not sec.startswith("algorithm"):
            continue
        label = sec[len("algorithm"):].strip() or None
        body = dict(cp[sec])
        kind = body.pop("kind", None) or label
        base = {k: body.pop(k) for k in ("k", "rcond") if k in body}
        cd_kwargs = {}
        for key, raw in body.items():
            if key not in _CD_FIELDS:
                raise ConfigError(f"[{sec}] unknown key {key!r}")
            cd_kwargs[key] = _coerce(f"[{sec}] {key}", raw, _CD_FIELDS[key])
        try:
            cd = CdConfig(**cd_kwargs)
        except ValueError as exc:
            raise ConfigError(f"[{sec}] {exc}") from None
        algorithms.append(
            AlgorithmSpec(
                kind=kind,
                k=_coerce(f"[{sec}] k", base.get("k", ""), int),
                label=label,
                rcond=_coerce(f"[{sec}] rcond", base.get("rcond", ""), float),
                cd=cd,
            )
        )
    config = ExperimentConfig(dataset=dataset, algorithms=algorithms, **_fill(ExperimentConfig, exp, "experiment"))
    if sweep_values.strip():
        try:
            config.sweep_values = [int(v) for v in sweep_values.replace(",", " ").split()]
        except ValueError:
            raise ConfigError(f"[experiment] sweep_values: not a list of integers: {sweep_values!r}") from None
    return config.validate()


def load_config(path):
    if not os.path.isfile(path):
        raise ConfigError(f"no such config file: {path}")
    with open(path) as fh:
        return parse_config(fh.read())


def _escape(text):
    return text.replace("\t", "\\t")


def _unescape(text):
    if text.startswith('"') and text.endswith('"') and len(text) >= 2:
        text = text[1:-1]
    return text.replace("\\t", "\t")


def _fmt(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(config):
    """Render ``config`` as INI text that ``parse_config`` reads back unchanged."""
    cp = _parser()
    exp = {
        f.name: _fmt(getattr(config, f.name))
        for f in dataclasses.fields(ExperimentConfig)
        if f.name not in ("dataset", "algorithms", "sweep_values")
    }
    exp["sweep_values"] = ", ".join(str(v) for v in config.sweep_values)
    cp["experiment"] = exp
    ds = {f.name: _fmt(getattr(config.dataset, f.name)) for f in dataclasses.fields(DatasetSpec)}
    ds["delimiter"] = '"' + _escape(config.dataset.delimiter) + '"'
    cp["dataset"] = ds
    for alg in config.algorithms:
        body = {"kind": alg.kind, "k": _fmt(alg.k), "rcond": _fmt(alg.rcond)}
        body.update({name: _fmt(getattr(alg.cd, name)) for name in _CD_FIELDS})
        cp[f"algorithm {alg.label}"] = body
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def config_hash(config):
    return hashlib.sha256(dump_config(config).encode()).hexdigest()


def with_sweep_value(config, value):
    """Copy of ``config`` with the sweep axis pinned to ``value``."""
    algorithms = []
    for alg in config.algorithms:
        if config.sweep_axis == "neurons":
            alg = dataclasses.replace(alg, k=int(value))
        elif config.sweep_axis == "epochs" and alg.kind == "rbm_elm":
            alg = dataclasses.replace(alg, cd=dataclasses.replace(alg.cd, max_epochs=int(value)))
        algorithms.append(alg)
    return dataclasses.replace(config, algorithms=algorithms, sweep_axis=None, sweep_values=[])
