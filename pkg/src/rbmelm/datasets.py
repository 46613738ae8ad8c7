"""Classification datasets: delimited-text ingestion, splitting, z-scoring.

Labels are kept as strings. The label alphabet is ordered by first
appearance, and one-hot columns follow that order.
"""

import csv
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionError,
    EmptyPartitionError,
    MissingFileError,
    NonNumericFieldError,
    RaggedRowError,
    SingleClassError,
    UnknownLabelError,
)


def first_appearance(labels):
    return list(dict.fromkeys(labels))


@dataclass
class RawDataset:
    features: np.ndarray
    labels: list
    name: str = "dataset"
    alphabet: list = field(default=None)

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = [str(label) for label in self.labels]
        if self.features.ndim != 2:
            raise DimensionError(f"features must be 2-D, got shape {self.features.shape}")
        if self.features.shape[0] != len(self.labels):
            raise DimensionError(
                f"{self.features.shape[0]} feature rows but {len(self.labels)} labels"
            )
        if self.alphabet is None:
            self.alphabet = first_appearance(self.labels)
        else:
            self.alphabet = [str(a) for a in self.alphabet]

    @property
    def n_samples(self):
        return self.features.shape[0]

    @property
    def n_features(self):
        return self.features.shape[1]

    @property
    def n_classes(self):
        return len(self.alphabet)


@dataclass
class SplitDataset:
    train_X: np.ndarray
    train_Y: np.ndarray
    test_X: np.ndarray
    test_Y: np.ndarray
    mean: np.ndarray
    scale: np.ndarray
    alphabet: list
    train_index: np.ndarray
    test_index: np.ndarray
    name: str = "dataset"

    @property
    def train_labels(self):
        return self.train_Y.argmax(axis=1)

    @property
    def test_labels(self):
        return self.test_Y.argmax(axis=1)

    def normalize(self, X):
        return normalize(X, self.mean, self.scale)


def load_csv(path, label_column=-1, delimiter=",", skip_header=False, name=None):
    """Read a delimited file with one sample per line.

    Every field except ``label_column`` must parse as a float. Blank lines
    are ignored. Row numbers in error messages are 1-based line numbers.
    """
    path = os.fspath(path)
    if not os.path.isfile(path):
        raise MissingFileError(f"no such dataset file: {path}")
    rows = []
    labels = []
    width = None
    with open(path, newline="") as fh:
        reader = csv.reader(fh, delimiter=delimiter, skipinitialspace=True)
        for lineno, fields in enumerate(reader, start=1):
            if skip_header and lineno == 1:
                continue
            if not fields or all(not f.strip() for f in fields):
                continue
            if width is None:
                width = len(fields)
                col = label_column % width
            elif len(fields) != width:
                raise RaggedRowError(path, lineno, len(fields), width)
            values = []
            for j, raw in enumerate(fields):
                if j == col:
                    continue
                try:
                    values.append(float(raw))
                except ValueError:
                    raise NonNumericFieldError(path, lineno, j, raw) from None
            rows.append(values)
            labels.append(fields[col].strip())
    return _checked(rows, labels, name or os.path.splitext(os.path.basename(path))[0])


def load_feature_label_files(features_path, labels_path, delimiter=None, name=None):
    """Read features and labels kept in two parallel files (UCI Madelon layout).

    ``delimiter=None`` splits on runs of whitespace.
    """
    for p in (features_path, labels_path):
        if not os.path.isfile(p):
            raise MissingFileError(f"no such dataset file: {p}")
    rows = []
    width = None
    with open(features_path) as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.split(delimiter)
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise RaggedRowError(features_path, lineno, len(fields), width)
            try:
                rows.append([float(f) for f in fields])
            except ValueError:
                bad = next(j for j, f in enumerate(fields) if not _is_float(f))
                raise NonNumericFieldError(features_path, lineno, bad, fields[bad]) from None
    with open(labels_path) as fh:
        labels = [line.strip() for line in fh if line.strip()]
    if len(labels) != len(rows):
        raise DimensionError(f"{len(rows)} feature rows but {len(labels)} labels")
    return _checked(rows, labels, name or os.path.splitext(os.path.basename(features_path))[0])


def _is_float(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def _checked(rows, labels, name):
    if len(rows) < 2:
        raise EmptyPartitionError(f"{name}: need at least 2 samples, found {len(rows)}")
    data = RawDataset(np.array(rows, dtype=np.float64), labels, name)
    if data.n_features < 1:
        raise DimensionError(f"{name}: no feature columns")
    if data.n_classes < 2:
        raise SingleClassError(f"{name}: only one class present ({data.alphabet[0]!r})")
    return data


def concat(first, second, name=None):
    """Stack two datasets with the same feature count (e.g. Madelon train + valid)."""
    if first.n_features != second.n_features:
        raise DimensionError(f"feature counts differ: {first.n_features} vs {second.n_features}")
    return RawDataset(
        np.vstack([first.features, second.features]),
        first.labels + second.labels,
        name or first.name,
    )


def one_hot(labels, alphabet):
    index = {label: i for i, label in enumerate(alphabet)}
    out = np.zeros((len(labels), len(alphabet)))
    for row, label in enumerate(labels):
        try:
            out[row, index[label]] = 1.0
        except KeyError:
            raise UnknownLabelError(label) from None
    return out


def fit_normalization(X):
    mean = X.mean(axis=0)
    scale = X.std(axis=0)
    # constant columns: zero after centring, so any positive scale works
    scale[scale == 0] = 1.0
    return mean, scale


def normalize(X, mean, scale):
    return (np.asarray(X, dtype=np.float64) - mean) / scale


def denormalize(Z, mean, scale):
    return np.asarray(Z) * scale + mean


def split_and_normalize(data, train_fraction=0.7, rng=None, predefined_test=None):
    """Partition ``data`` and z-score both parts with train statistics.

    Without ``predefined_test`` the rows are shuffled by ``rng`` and the
    first ``ceil(train_fraction * N)`` become the training set. With it,
    ``data`` is the training set as-is. Constant training features come
    out as all-zero columns in both partitions.
    """
    alphabet = list(data.alphabet)
    if predefined_test is None:
        if not 0 < train_fraction < 1:
            raise ValueError(f"train_fraction must lie in (0, 1), got {train_fraction}")
        if rng is None:
            raise ValueError("a random generator is required to shuffle")
        n = data.n_samples
        n_train = math.ceil(train_fraction * n)
        if n_train >= n:
            raise EmptyPartitionError(f"{data.name}: test partition would be empty (N={n})")
        perm = rng.permutation(n)
        train_index, test_index = perm[:n_train], perm[n_train:]
        train_raw = data.features[train_index]
        test_raw = data.features[test_index]
        train_lab = [data.labels[i] for i in train_index]
        test_lab = [data.labels[i] for i in test_index]
    else:
        if predefined_test.n_features != data.n_features:
            raise DimensionError(
                f"test file has {predefined_test.n_features} features, train has {data.n_features}"
            )
        unknown = [a for a in predefined_test.alphabet if a not in alphabet]
        if unknown:
            raise UnknownLabelError(unknown[0])
        if predefined_test.n_samples == 0:
            raise EmptyPartitionError(f"{predefined_test.name}: empty test partition")
        train_index = np.arange(data.n_samples)
        test_index = np.arange(predefined_test.n_samples)
        train_raw, test_raw = data.features, predefined_test.features
        train_lab, test_lab = data.labels, predefined_test.labels
    mean, scale = fit_normalization(train_raw)
    return SplitDataset(
        train_X=normalize(train_raw, mean, scale),
        train_Y=one_hot(train_lab, alphabet),
        test_X=normalize(test_raw, mean, scale),
        test_Y=one_hot(test_lab, alphabet),
        mean=mean,
        scale=scale,
        alphabet=alphabet,
        train_index=np.asarray(train_index),
        test_index=np.asarray(test_index),
        name=data.name,
    )


# Stroke templates in unit coordinates (x right, y down).
def _ellipse(cx, cy, rx, ry, start, stop, pieces):
    t = np.linspace(start, stop, pieces + 1)
    pts = np.column_stack([cx + rx * np.cos(t), cy + ry * np.sin(t)])
    return [(tuple(pts[i]), tuple(pts[i + 1])) for i in range(pieces)]


VOWEL_STROKES = {
    "A": [((0.15, 0.9), (0.5, 0.1)), ((0.5, 0.1), (0.85, 0.9)), ((0.3, 0.6), (0.7, 0.6))],
    "E": [
        ((0.25, 0.1), (0.25, 0.9)),
        ((0.25, 0.1), (0.75, 0.1)),
        ((0.25, 0.5), (0.65, 0.5)),
        ((0.25, 0.9), (0.75, 0.9)),
    ],
    "I": [((0.5, 0.1), (0.5, 0.9)), ((0.35, 0.1), (0.65, 0.1)), ((0.35, 0.9), (0.65, 0.9))],
    "O": _ellipse(0.5, 0.5, 0.3, 0.4, 0.0, 2 * np.pi, 24),
    "U": [((0.25, 0.1), (0.25, 0.6)), ((0.75, 0.1), (0.75, 0.6))]
    + _ellipse(0.5, 0.6, 0.25, 0.3, 0.0, np.pi, 12),
}


def _render(segments, side, scale, angle, shift, width):
    grid = (np.arange(side) + 0.5) / side
    px, py = np.meshgrid(grid, grid)
    pts = np.column_stack([px.ravel(), py.ravel()])
    seg = np.asarray(segments, dtype=np.float64)  # (n_seg, 2, 2)
    c, s = np.cos(angle), np.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    seg = (seg - 0.5) @ rot.T * scale + 0.5 + shift
    a, b = seg[:, 0], seg[:, 1]
    ab = b - a
    ap = pts[:, None, :] - a[None]
    t = np.clip((ap * ab).sum(-1) / (ab * ab).sum(-1), 0.0, 1.0)
    dist = np.linalg.norm(ap - t[..., None] * ab, axis=-1).min(axis=1)
    return np.exp(-0.5 * (dist / width) ** 2)


def synth_vowels(rng, per_class=276, side=30, noise=0.35):
    """Noisy, jittered bitmaps of the five vowels A, E, I, O, U.

    Each sample is its class template under a random scale, rotation and
    shift, drawn with a random stroke width, plus Gaussian pixel noise.
    Rows come out class by class; split_and_normalize shuffles them.
    """
    if per_class < 1:
        raise ValueError("per_class must be at least 1")
    if side < 8:
        raise ValueError("side must be at least 8")
    rows, labels = [], []
    for letter, strokes in VOWEL_STROKES.items():
        for _ in range(per_class):
            scale = rng.uniform(0.8, 1.1)
            angle = rng.normal(0.0, 0.12)
            shift = rng.uniform(-0.1, 0.1, size=2)
            width = rng.uniform(0.03, 0.07)
            img = _render(strokes, side, scale, angle, shift, width)
            rows.append(img + noise * rng.standard_normal(side * side))
            labels.append(letter)
    return RawDataset(np.array(rows), labels, name="vowels")


def save_csv(data, path, delimiter=","):
    """Write features followed by the label, one sample per line."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        for row, label in zip(data.features, data.labels):
            writer.writerow([repr(float(v)) for v in row] + [label])
