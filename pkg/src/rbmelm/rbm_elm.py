"""RBM-ELM: an RBM trained on the inputs supplies the ELM input layer.

Stage one trains a Gaussian-Bernoulli RBM on ``train_X`` (labels unused).
Stage two copies its weights and hidden biases into the augmented ELM
input matrix and solves the output layer as usual. One generator drives
both stages.
"""

from dataclasses import dataclass, field

import numpy as np

from .elm import elm_train
from .rbm import CdConfig, rbm_train


@dataclass
class RbmElmConfig:
    k: int
    cd: CdConfig = field(default_factory=CdConfig)
    rcond: float = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")


def transfer_weights(params):
    """Stack RBM weights over the hidden bias; the visible bias is dropped."""
    return np.vstack([params.W, params.b[None, :]])


def rbm_elm_train(split, config, rng, callback=None):
    params, trace = rbm_train(split.train_X, config.k, config.cd, rng, callback=callback)
    model = elm_train(
        split, config.k, supplied_W=transfer_weights(params), rcond=config.rcond, provenance="rbm_elm"
    )
    return model, trace
