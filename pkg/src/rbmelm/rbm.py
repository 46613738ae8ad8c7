"""Gaussian-Bernoulli restricted Boltzmann machine trained by contrastive divergence.

Visible units are real-valued with a shared standard deviation ``sigma``;
hidden units are binary. The energy of a configuration ``(v, d)`` is::

    E = sum_i (v_i - a_i)^2 / (2 sigma^2) - sum_j b_j d_j - sum_ij (v_i / sigma^2) d_j w_ij

Training uses mini-batch CD-z with momentum and weight decay. Conditionals
drop the ``1/sigma^2`` factor, which is exact for ``sigma = 1`` (z-scored data).
"""

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from .errors import DimensionError, NumericFailure
from .numerics import sample_normal


@dataclass
class RbmParams:
    W: np.ndarray
    a: np.ndarray
    b: np.ndarray
    sigma: float = 1.0

    def __post_init__(self):
        self.W = np.ascontiguousarray(self.W, dtype=np.float64)
        self.a = np.ascontiguousarray(self.a, dtype=np.float64).ravel()
        self.b = np.ascontiguousarray(self.b, dtype=np.float64).ravel()
        m, k = self.W.shape
        if self.a.shape != (m,) or self.b.shape != (k,):
            raise DimensionError(
                f"W is {m}x{k} but a has {self.a.size} and b has {self.b.size} entries"
            )
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    @property
    def n_visible(self):
        return self.W.shape[0]

    @property
    def n_hidden(self):
        return self.W.shape[1]

    def copy(self):
        return RbmParams(self.W.copy(), self.a.copy(), self.b.copy(), self.sigma)


@dataclass
class Momenta:
    """Previous parameter increments, carried between updates."""

    dW: np.ndarray
    da: np.ndarray
    db: np.ndarray

    @classmethod
    def zeros_like(cls, params):
        return cls(np.zeros_like(params.W), np.zeros_like(params.a), np.zeros_like(params.b))


@dataclass
class CdConfig:
    eta: float = 0.01
    rho: float = 0.001
    alpha_early: float = 0.5
    alpha_late: float = 0.9
    alpha_switch_epoch: int = 5
    batch_size: int = 100
    max_epochs: int = 50
    gibbs_steps: int = 1
    reconstruct_mode: str = "sample"
    init_mean: float = 0.1
    init_stddev: float = 0.01

    def __post_init__(self):
        problems = []
        if self.eta < 0:
            problems.append("eta must be >= 0")
        if self.rho < 0:
            problems.append("rho must be >= 0")
        for name in ("alpha_early", "alpha_late"):
            if not 0 <= getattr(self, name) < 1:
                problems.append(f"{name} must lie in [0, 1)")
        for name in ("batch_size", "max_epochs", "gibbs_steps"):
            if getattr(self, name) < 1:
                problems.append(f"{name} must be >= 1")
        if self.alpha_switch_epoch < 0:
            problems.append("alpha_switch_epoch must be >= 0")
        if self.reconstruct_mode not in ("sample", "mean"):
            problems.append("reconstruct_mode must be 'sample' or 'mean'")
        if self.init_stddev < 0:
            problems.append("init_stddev must be >= 0")
        if problems:
            raise ValueError("; ".join(problems))

    def momentum(self, epoch_index):
        return self.alpha_early if epoch_index < self.alpha_switch_epoch else self.alpha_late


@dataclass
class CdTrace:
    reconstruction_error: list = field(default_factory=list)

    @property
    def epochs_run(self):
        return len(self.reconstruction_error)


def energy(params, v, d):
    v = np.asarray(v, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    if v.shape != (params.n_visible,) or d.shape != (params.n_hidden,):
        raise DimensionError(
            f"expected v of length {params.n_visible} and d of length {params.n_hidden}"
        )
    s2 = params.sigma**2
    return float(
        np.sum((v - params.a) ** 2) / (2 * s2) - params.b @ d - (v / s2) @ params.W @ d
    )


def log_partition(params):
    """Exact log normalizer, integrating the Gaussian visibles in closed form.

    Enumerates all ``2**k`` hidden states, so only usable for small ``k``.
    """
    m, k = params.W.shape
    if k > 20:
        raise ValueError("log_partition enumerates 2**k hidden states; k is too large")
    s2 = params.sigma**2
    terms = []
    for bits in itertools.product((0.0, 1.0), repeat=k):
        d = np.array(bits)
        mu = params.a + params.W @ d
        terms.append(params.b @ d + (mu @ mu - params.a @ params.a) / (2 * s2))
    terms = np.array(terms)
    top = terms.max()
    return float(0.5 * m * np.log(2 * np.pi * s2) + top + np.log(np.exp(terms - top).sum()))


def joint_probability(params, v, d, log_z=None):
    if log_z is None:
        log_z = log_partition(params)
    return float(np.exp(-energy(params, v, d) - log_z))


def hidden_given_visible(params, V):
    V = np.asarray(V, dtype=np.float64)
    if V.ndim != 2 or V.shape[1] != params.n_visible:
        raise DimensionError(f"visible batch of shape {V.shape} does not fit {params.n_visible} units")
    return kernels.logistic(V @ params.W + params.b)


def sample_hidden(rng, probs):
    return (rng.random(probs.shape) < probs).astype(np.float64)


def visible_given_hidden(params, D, rng=None, mode="sample"):
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[1] != params.n_hidden:
        raise DimensionError(f"hidden batch of shape {D.shape} does not fit {params.n_hidden} units")
    mean = params.a + D @ params.W.T
    if mode == "mean":
        return mean
    if mode != "sample":
        raise ValueError(f"unknown reconstruct mode {mode!r}")
    return mean + params.sigma * rng.standard_normal(mean.shape)


def gibbs_chain(params, v0, rng, steps=1, mode="sample"):
    """Run the CD negative phase from data ``v0``.

    Returns ``(p0, v1, p1)``: hidden probabilities on the data, the final
    reconstruction and hidden probabilities on it. The chain itself moves
    through sampled binary hidden states.
    """
    p0 = hidden_given_visible(params, v0)
    d = sample_hidden(rng, p0)
    for step in range(steps):
        v = visible_given_hidden(params, d, rng, mode)
        p = hidden_given_visible(params, v)
        if step + 1 < steps:
            d = sample_hidden(rng, p)
    return p0, v, p


def cd_gradients(v0, p0, v1, p1):
    n = v0.shape[0]
    gW = (v0.T @ p0 - v1.T @ p1) / n
    ga = (v0 - v1).mean(axis=0)
    gb = (p0 - p1).mean(axis=0)
    return gW, ga, gb


def apply_update(params, momenta, grads, eta, rho, alpha):
    """In-place momentum update; weight decay acts on ``W`` only."""
    gW, ga, gb = grads
    kernels.momentum_step(params.W, momenta.dW, gW, eta, rho, alpha)
    kernels.momentum_step(params.a, momenta.da, ga, eta, 0.0, alpha)
    kernels.momentum_step(params.b, momenta.db, gb, eta, 0.0, alpha)


def cd_epoch(params, momenta, X, config, rng, epoch_index):
    """One pass of mini-batch CD over ``X``, updating ``params`` and ``momenta`` in place.

    Returns ``(params, momenta, error)`` where ``error`` is the mean over
    samples of the squared reconstruction distance.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != params.n_visible:
        raise DimensionError(f"data of shape {X.shape} does not fit {params.n_visible} visible units")
    alpha = config.momentum(epoch_index)
    total = 0.0
    for batch_no, start in enumerate(range(0, X.shape[0], config.batch_size)):
        v0 = X[start : start + config.batch_size]
        p0, v1, p1 = gibbs_chain(params, v0, rng, config.gibbs_steps, config.reconstruct_mode)
        total += float(np.sum((v0 - v1) ** 2))
        apply_update(params, momenta, cd_gradients(v0, p0, v1, p1), config.eta, config.rho, alpha)
        if not (
            np.isfinite(params.W).all() and np.isfinite(params.a).all() and np.isfinite(params.b).all()
        ):
            raise NumericFailure(
                f"non-finite RBM parameters after epoch {epoch_index}, batch {batch_no}; "
                f"learning rate {config.eta} is likely too large",
                epoch=epoch_index,
                batch=batch_no,
            )
    return params, momenta, total / X.shape[0]


def init_params(rng, m, k, config, sigma=1.0):
    W = sample_normal(rng, config.init_mean, config.init_stddev, m, k)
    a = sample_normal(rng, config.init_mean, config.init_stddev, 1, m)
    b = sample_normal(rng, config.init_mean, config.init_stddev, 1, k)
    return RbmParams(W, a, b, sigma)


def rbm_train(X, k, config, rng, callback=None):
    """Train an RBM with ``k`` hidden units for ``config.max_epochs`` epochs.

    ``callback(epoch, params)`` is called after every epoch (1-based) and
    may be used to checkpoint weights.
    """
    X = np.asarray(X, dtype=np.float64)
    if k < 1:
        raise ValueError("k must be >= 1")
    params = init_params(rng, X.shape[1], k, config)
    momenta = Momenta.zeros_like(params)
    trace = CdTrace()
    for epoch in range(config.max_epochs):
        _, _, err = cd_epoch(params, momenta, X, config, rng, epoch)
        trace.reconstruction_error.append(err)
        if callback is not None:
            callback(epoch + 1, params)
    return params, trace


def with_overrides(config, **changes):
    return replace(config, **{k: v for k, v in changes.items() if v is not None})
