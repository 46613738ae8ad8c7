"""Extreme learning machine: fixed input layer, closed-form output layer.

Input weights and hidden biases live in one augmented ``(m+1, k)`` matrix
whose last row is the bias, so the hidden layer is
``logistic([X | 1] @ W_aug)``. Output weights solve the least-squares
system ``H @ beta = Y`` through the pseudoinverse.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DimensionError
from .numerics import pseudoinverse, sample_uniform

PROVENANCES = ("elm", "rbm_elm", "elm_ae", "elm_ro")


@dataclass
class ElmModel:
    W_aug: np.ndarray
    beta: np.ndarray
    activation: str = "logistic"
    provenance: str = "elm"
    mean: np.ndarray = None
    scale: np.ndarray = None
    alphabet: list = field(default=None)

    def __post_init__(self):
        if self.W_aug.shape[1] != self.beta.shape[0]:
            raise DimensionError(
                f"W_aug has {self.W_aug.shape[1]} hidden units, beta has {self.beta.shape[0]} rows"
            )
        if self.activation != "logistic":
            raise ValueError(f"unsupported activation {self.activation!r}")

    @property
    def n_inputs(self):
        return self.W_aug.shape[0] - 1

    @property
    def n_hidden(self):
        return self.W_aug.shape[1]

    @property
    def n_outputs(self):
        return self.beta.shape[1]

    def predict_raw(self, X):
        """Class labels for unnormalized inputs, using the stored z-score."""
        if self.mean is None:
            raise ValueError("model carries no normalization parameters")
        idx = predict(self, (np.asarray(X, dtype=np.float64) - self.mean) / self.scale)
        if self.alphabet is None:
            return idx
        return [self.alphabet[i] for i in idx]


def random_input_weights(rng, m, k):
    if m < 1 or k < 1:
        raise ValueError(f"need m >= 1 and k >= 1, got m={m}, k={k}")
    return sample_uniform(rng, -1.0, 1.0, m + 1, k)


def feature_map(X, W_aug):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] + 1 != W_aug.shape[0]:
        raise DimensionError(
            f"X of shape {X.shape} does not fit input weights of shape {W_aug.shape}"
        )
    # [X | 1] @ W_aug without materializing the augmented copy
    return kernels.logistic(X @ W_aug[:-1] + W_aug[-1])


def solve_beta(H, Y, rcond=None):
    if H.shape[0] != Y.shape[0]:
        raise DimensionError(f"H has {H.shape[0]} rows, Y has {Y.shape[0]}")
    return pseudoinverse(H, rcond) @ Y


def elm_train(split, k, rng=None, supplied_W=None, rcond=None, provenance="elm"):
    """Fit output weights on ``split.train_X``.

    ``supplied_W`` is used verbatim as the augmented input layer; otherwise
    it is drawn uniformly from [-1, 1] with ``rng``.
    """
    m = split.train_X.shape[1]
    if supplied_W is None:
        if rng is None:
            raise ValueError("rng is required when no input weights are supplied")
        W_aug = random_input_weights(rng, m, k)
    else:
        W_aug = np.asarray(supplied_W, dtype=np.float64)
        if W_aug.shape != (m + 1, k):
            raise DimensionError(f"supplied weights have shape {W_aug.shape}, expected {(m + 1, k)}")
    H = feature_map(split.train_X, W_aug)
    beta = solve_beta(H, split.train_Y, rcond)
    return ElmModel(
        W_aug=W_aug,
        beta=beta,
        provenance=provenance,
        mean=split.mean,
        scale=split.scale,
        alphabet=list(split.alphabet),
    )


def decision_values(model, X):
    return feature_map(X, model.W_aug) @ model.beta


def predict(model, X):
    # np.argmax returns the first maximum, so ties go to the lowest class index
    return np.argmax(decision_values(model, X), axis=1)


def accuracy(model, X, Y):
    return float(np.mean(predict(model, X) == np.argmax(Y, axis=1)))


def input_weight_norm(model_or_W):
    W = model_or_W.W_aug if isinstance(model_or_W, ElmModel) else model_or_W
    return float(np.linalg.norm(W))


def save_model(model, path):
    """Write the model as an ``.npz`` archive; reloading predicts bit-identically."""
    header = {
        "m": model.n_inputs,
        "k": model.n_hidden,
        "s": model.n_outputs,
        "activation": model.activation,
        "provenance": model.provenance,
        "alphabet": model.alphabet,
    }
    arrays = {"W_aug": model.W_aug, "beta": model.beta}
    if model.mean is not None:
        arrays["mean"] = model.mean
        arrays["scale"] = model.scale
    with open(path, "wb") as fh:
        np.savez(fh, header=np.array(json.dumps(header)), **arrays)


def load_model(path):
    with np.load(path, allow_pickle=False) as z:
        header = json.loads(str(z["header"]))
        model = ElmModel(
            W_aug=z["W_aug"],
            beta=z["beta"],
            activation=header["activation"],
            provenance=header["provenance"],
            mean=z["mean"] if "mean" in z.files else None,
            scale=z["scale"] if "scale" in z.files else None,
            alphabet=header["alphabet"],
        )
    if (model.n_inputs, model.n_hidden, model.n_outputs) != (header["m"], header["k"], header["s"]):
        raise DimensionError(f"{path}: stored dimensions do not match the arrays")
    return model
