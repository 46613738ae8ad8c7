"""Independent reference implementations used only by the tests.

Written with explicit loops over scalars so they share no code path with
the vectorized package routines they check.
"""

import itertools
import math


def logistic(x):
    return 1.0 / (1.0 + math.exp(-x))


def cd1_batch_oracle(W, a, b, V, uniforms, normals, eta, rho, alpha, dW_prev, da_prev, db_prev, sigma=1.0):
    """One CD-1 mini-batch update, replaying pre-drawn random numbers.

    ``uniforms[n][j]`` decides hidden sample j of row n; ``normals[n][i]``
    is the standard normal added to reconstruction i of row n.
    Returns ``(dW, da, db)``.
    """
    m, k = len(W), len(W[0])
    N = len(V)
    gW = [[0.0] * k for _ in range(m)]
    ga = [0.0] * m
    gb = [0.0] * k
    for n in range(N):
        v0 = V[n]
        p0 = [logistic(b[j] + sum(v0[i] * W[i][j] for i in range(m))) for j in range(k)]
        d0 = [1.0 if uniforms[n][j] < p0[j] else 0.0 for j in range(k)]
        v1 = [a[i] + sum(d0[j] * W[i][j] for j in range(k)) + sigma * normals[n][i] for i in range(m)]
        p1 = [logistic(b[j] + sum(v1[i] * W[i][j] for i in range(m))) for j in range(k)]
        for i in range(m):
            for j in range(k):
                gW[i][j] += (v0[i] * p0[j] - v1[i] * p1[j]) / N
            ga[i] += (v0[i] - v1[i]) / N
        for j in range(k):
            gb[j] += (p0[j] - p1[j]) / N
    dW = [[eta * gW[i][j] - rho * W[i][j] + alpha * dW_prev[i][j] for j in range(k)] for i in range(m)]
    da = [eta * ga[i] + alpha * da_prev[i] for i in range(m)]
    db = [eta * gb[j] + alpha * db_prev[j] for j in range(k)]
    return dW, da, db


def _avg_ranks(values):
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        for t in range(i, j + 1):
            ranks[order[t]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def wilcoxon_exact_p(x, y):
    """Two-sided exact p-value by enumerating all 2**n sign assignments."""
    d = [xi - yi for xi, yi in zip(x, y) if xi != yi]
    n = len(d)
    ranks = _avg_ranks([abs(v) for v in d])
    w_plus = sum(r for r, v in zip(ranks, d) if v > 0)
    mean = sum(ranks) / 2.0
    dev = abs(w_plus - mean)
    hits = 0
    for signs in itertools.product((0, 1), repeat=n):
        w = sum(r for r, s in zip(ranks, signs) if s)
        if abs(w - mean) >= dev - 1e-9:
            hits += 1
    return hits / 2**n


def friedman_by_hand(rows):
    """Untied Friedman statistic from rank sums."""
    n, g = len(rows), len(rows[0])
    sums = [0.0] * g
    for row in rows:
        for j, r in enumerate(_avg_ranks(row)):
            sums[j] += r
    return 12.0 / (n * g * (g + 1)) * sum(s * s for s in sums) - 3.0 * n * (g + 1)
