"""Extreme learning machines with RBM-trained input weights.

The hot loops (logistic map, momentum update, Gram-Schmidt) run in a
Cython extension when it was built and fall back to numpy otherwise;
see :mod:`rbmelm.kernels`.
"""

from .baselines import baseline_train, elm_ae_input_weights, orthogonal_input_weights
from .datasets import RawDataset, SplitDataset, load_csv, one_hot, split_and_normalize, synth_vowels
from .elm import (
    ElmModel,
    accuracy,
    elm_train,
    feature_map,
    input_weight_norm,
    load_model,
    predict,
    random_input_weights,
    save_model,
    solve_beta,
)
from .errors import NumericFailure, RbmElmError
from .kernels import BACKEND
from .numerics import make_rng, pseudoinverse, sample_normal, sample_uniform
from .rbm import CdConfig, CdTrace, RbmParams, cd_epoch, energy, hidden_given_visible, rbm_train
from .rbm_elm import RbmElmConfig, rbm_elm_train, transfer_weights
from .stats import TrialReport, aggregate, friedman_test, wilcoxon_signed_rank

__version__ = "0.1.0"
