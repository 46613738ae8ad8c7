"""Compare the compiled kernels against the numpy fallback.

Times each kernel on representative shapes, then a full RBM training run
with each backend swapped in. Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from rbmelm import _fallback, kernels, rbm
from rbmelm.datasets import split_and_normalize, synth_vowels
from rbmelm.numerics import make_rng

try:
    from rbmelm import _kernels
except ImportError:
    _kernels = None


def kernel_cases(rng):
    x = rng.standard_normal((100, 400)) * 4
    W = rng.standard_normal((901, 400))
    dW = np.zeros_like(W)
    g = rng.standard_normal(W.shape)
    A = rng.uniform(-1, 1, (58, 150))
    return {
        "logistic 100x400": lambda impl: impl.logistic(x),
        "momentum_step 901x400": lambda impl: impl.momentum_step(W, dW, g, 1e-3, 1e-2, 0.9),
        "mgs_orthonormalize 58x150": lambda impl: impl.mgs_orthonormalize(A[:, :58]),
        "mgs_orthonormalize 901x400": lambda impl: impl.mgs_orthonormalize(W[:, :400]),
    }


def best_of(fn, repeat):
    number = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-6)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def train_once(X, epochs):
    cfg = rbm.CdConfig(eta=0.001, rho=0.01, batch_size=100, max_epochs=epochs)
    rbm.rbm_train(X, 400, cfg, make_rng(0))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--epochs", type=int, default=5)
    args = parser.parse_args()

    impls = {"numpy": _fallback}
    if _kernels is not None:
        impls["cython"] = _kernels
    print(f"default backend: {kernels.BACKEND}")

    rng = make_rng(0)
    print(f"{'kernel':30s}" + "".join(f"{name:>14s}" for name in impls) + "   speedup")
    for label, case in kernel_cases(rng).items():
        times = {name: best_of(lambda: case(impl), args.repeat) for name, impl in impls.items()}
        row = f"{label:30s}" + "".join(f"{1e3 * t:12.3f}ms" for t in times.values())
        if "cython" in times:
            row += f"   {times['numpy'] / times['cython']:6.2f}x"
        print(row)

    split = split_and_normalize(synth_vowels(make_rng(1)), rng=make_rng(2))
    print(f"\nrbm_train, vowels 900 visibles, k=400, {args.epochs} epochs")
    for name, impl in impls.items():
        saved = rbm.kernels.logistic, rbm.kernels.momentum_step
        rbm.kernels.logistic, rbm.kernels.momentum_step = impl.logistic, impl.momentum_step
        try:
            t = min(timeit.repeat(lambda: train_once(split.train_X, args.epochs), number=1, repeat=3))
        finally:
            rbm.kernels.logistic, rbm.kernels.momentum_step = saved
        print(f"  {name:8s} {t:8.3f}s")


if __name__ == "__main__":
    main()
