# cython: language_level=3
"""Compiled inner loops; ``_fallback`` mirrors every function here."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, sqrt

cnp.import_array()

cdef double _LO = 2.2250738585072014e-308
cdef double _HI = 1.0 - 1.1102230246251565e-16


def logistic(x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] flat = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(flat)
    cdef Py_ssize_t i, n = flat.shape[0]
    cdef double v, e, r
    with nogil:
        for i in range(n):
            v = flat[i]
            if v >= 0:
                r = 1.0 / (1.0 + exp(-v))
            else:
                e = exp(v)
                r = e / (1.0 + e)
            if r < _LO:
                r = _LO
            elif r > _HI:
                r = _HI
            out[i] = r
    return out.reshape(np.shape(x))


def momentum_step(cnp.ndarray param, cnp.ndarray delta, cnp.ndarray grad,
                  double eta, double rho, double alpha):
    if not (param.flags.c_contiguous and delta.flags.c_contiguous):
        raise ValueError("param and delta must be C-contiguous")
    if param.dtype != np.float64 or delta.dtype != np.float64:
        raise TypeError("param and delta must be float64")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] p = param.reshape(-1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = delta.reshape(-1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] g = np.ascontiguousarray(grad, dtype=np.float64).reshape(-1)
    cdef Py_ssize_t i, n = p.shape[0]
    if d.shape[0] != n or g.shape[0] != n:
        raise ValueError("shape mismatch in momentum_step")
    cdef double step
    with nogil:
        for i in range(n):
            step = eta * g[i] - rho * p[i] + alpha * d[i]
            d[i] = step
            p[i] = p[i] + step


def mgs_orthonormalize(A, int passes=2):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] Q = np.array(A, dtype=np.float64, order="F", copy=True)
    cdef Py_ssize_t rows = Q.shape[0], cols = Q.shape[1]
    cdef Py_ssize_t i, j, r
    cdef int p
    cdef double dot, nrm, orig
    cdef double worst = 1.0
    with nogil:
        for j in range(cols):
            orig = 0.0
            for r in range(rows):
                orig = orig + Q[r, j] * Q[r, j]
            orig = sqrt(orig)
            for p in range(passes):
                for i in range(j):
                    dot = 0.0
                    for r in range(rows):
                        dot = dot + Q[r, i] * Q[r, j]
                    for r in range(rows):
                        Q[r, j] = Q[r, j] - dot * Q[r, i]
            nrm = 0.0
            for r in range(rows):
                nrm = nrm + Q[r, j] * Q[r, j]
            nrm = sqrt(nrm)
            if orig > 0 and nrm / orig < worst:
                worst = nrm / orig
            if orig == 0:
                worst = 0.0
            if nrm > 0:
                for r in range(rows):
                    Q[r, j] = Q[r, j] / nrm
    return np.ascontiguousarray(Q), worst
