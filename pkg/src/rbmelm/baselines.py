"""Comparison initializers: ELM-RO and ELM-AE.

ELM-RO orthonormalizes a uniform [-1, 1] augmented input matrix with
modified Gram-Schmidt. At most ``m+1`` columns can be orthonormal in
``(m+1)``-space, so wider layers are orthonormalized in independent
blocks of ``m+1`` columns.

ELM-AE trains an ELM autoencoder (orthogonal random input layer, targets
equal to the inputs) and uses the transposed output weights as input
weights, keeping the autoencoder's bias row.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .elm import elm_train, feature_map, solve_beta
from .errors import NumericFailure
from .numerics import sample_uniform

KINDS = ("elm_ro", "elm_ae")

# columns whose residual norm falls below this fraction are treated as dependent
_DEPENDENCE_TOL = 1e-8
_MAX_ATTEMPTS = 4


def orthonormal_blocks(A):
    """Orthonormalize the columns of ``A`` blockwise; returns ``(Q, worst)``.

    ``worst`` is the smallest ratio of residual to original column norm
    seen during elimination.
    """
    rows, cols = A.shape
    Q = np.empty_like(A, dtype=np.float64)
    worst = 1.0
    for start in range(0, cols, rows):
        block, w = kernels.mgs_orthonormalize(A[:, start : start + rows])
        Q[:, start : start + rows] = block
        worst = min(worst, w)
    return Q, worst


def orthogonal_input_weights(rng, m, k):
    if m < 1 or k < 1:
        raise ValueError(f"need m >= 1 and k >= 1, got m={m}, k={k}")
    for _ in range(_MAX_ATTEMPTS):
        Q, worst = orthonormal_blocks(sample_uniform(rng, -1.0, 1.0, m + 1, k))
        if worst > _DEPENDENCE_TOL:
            return Q
    raise NumericFailure(
        f"could not draw {k} independent columns in {m + 1} dimensions after {_MAX_ATTEMPTS} attempts",
        shape=(m + 1, k),
    )


def block_count(m, k):
    return math.ceil(k / (m + 1))


@dataclass
class AutoencoderFit:
    W_ae: np.ndarray
    H: np.ndarray
    beta: np.ndarray

    def reconstruct(self):
        return self.H @ self.beta


def fit_elm_autoencoder(train_X, k, rng, rcond=None):
    W_ae = orthogonal_input_weights(rng, train_X.shape[1], k)
    H = feature_map(train_X, W_ae)
    return AutoencoderFit(W_ae, H, solve_beta(H, train_X, rcond))


def elm_ae_input_weights(train_X, k, rng, rcond=None):
    fit = fit_elm_autoencoder(train_X, k, rng, rcond)
    return np.vstack([fit.beta.T, fit.W_ae[-1:]])


def baseline_input_weights(split, kind, k, rng, rcond=None):
    if kind == "elm_ro":
        return orthogonal_input_weights(rng, split.train_X.shape[1], k)
    if kind == "elm_ae":
        return elm_ae_input_weights(split.train_X, k, rng, rcond)
    raise ValueError(f"unknown baseline {kind!r}; expected one of {KINDS}")


def baseline_train(split, kind, k, rng, rcond=None):
    W = baseline_input_weights(split, kind, k, rng, rcond)
    return elm_train(split, k, supplied_W=W, rcond=rcond, provenance=kind)
