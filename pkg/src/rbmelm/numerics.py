"""Seedable random sampling and the SVD-based Moore-Penrose pseudoinverse.

Matrices are plain 2-D ``float64`` numpy arrays with samples as rows.
Every stochastic routine takes an explicit ``numpy.random.Generator``;
nothing in the package touches global random state.
"""

import numpy as np

from .errors import NumericFailure


def make_rng(seed, *streams):
    """Return a PCG64 generator for ``seed``.

    Extra integers in ``streams`` select an independent substream, so a
    trial seed can feed several consumers without their draws interleaving.
    """
    seq = np.random.SeedSequence(int(seed), spawn_key=tuple(int(s) for s in streams))
    return np.random.Generator(np.random.PCG64(seq))


def default_rcond(shape):
    return np.finfo(np.float64).eps * max(shape)


def pseudoinverse(H, rcond=None):
    """Moore-Penrose pseudoinverse of ``H`` via the SVD.

    Singular values at or below ``rcond * sigma_max`` are treated as zero.
    ``rcond`` defaults to machine epsilon times ``max(rows, cols)``.

    Raises
    ------
    NumericFailure
        If ``H`` holds non-finite entries or the SVD does not converge.
    """
    H = np.asarray(H, dtype=np.float64)
    if H.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {H.shape}")
    if rcond is None:
        rcond = default_rcond(H.shape)
    if rcond < 0:
        raise ValueError("rcond must be non-negative")
    if not np.all(np.isfinite(H)):
        raise NumericFailure(f"non-finite entries in {H.shape[0]}x{H.shape[1]} matrix", shape=H.shape)
    try:
        U, s, Vt = np.linalg.svd(H, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(
            f"SVD did not converge for {H.shape[0]}x{H.shape[1]} matrix", shape=H.shape
        ) from exc
    if s.size == 0 or s[0] == 0:
        return np.zeros((H.shape[1], H.shape[0]))
    keep = s > rcond * s[0]
    inv = np.zeros_like(s)
    inv[keep] = 1.0 / s[keep]
    return (Vt.T * inv) @ U.T


def sample_uniform(rng, lo, hi, rows, cols):
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    return rng.uniform(lo, hi, size=(rows, cols))


def sample_normal(rng, mean, stddev, rows, cols):
    if stddev < 0:
        raise ValueError("stddev must be non-negative")
    return mean + stddev * rng.standard_normal(size=(rows, cols))
