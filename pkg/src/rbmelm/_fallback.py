"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np

_LO = np.finfo(np.float64).tiny
_HI = 1.0 - np.finfo(np.float64).epsneg


def logistic(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    e = np.exp(x[~pos])
    out[~pos] = e / (1.0 + e)
    return np.clip(out, _LO, _HI, out=out)


def momentum_step(param, delta, grad, eta, rho, alpha):
    if not (param.flags.c_contiguous and delta.flags.c_contiguous):
        raise ValueError("param and delta must be C-contiguous")
    if param.shape != delta.shape or np.shape(grad) != param.shape:
        raise ValueError("shape mismatch in momentum_step")
    step = eta * np.asarray(grad, dtype=np.float64) - rho * param + alpha * delta
    delta[...] = step
    param += step


def mgs_orthonormalize(A, passes=2):
    Q = np.array(A, dtype=np.float64, copy=True)
    worst = 1.0
    for j in range(Q.shape[1]):
        col = Q[:, j]
        orig = np.sqrt(np.dot(col, col))
        for _ in range(passes):
            for i in range(j):
                col -= np.dot(Q[:, i], col) * Q[:, i]
        nrm = np.sqrt(np.dot(col, col))
        if orig == 0:
            worst = 0.0
        elif nrm / orig < worst:
            worst = nrm / orig
        if nrm > 0:
            col /= nrm
    return Q, worst
