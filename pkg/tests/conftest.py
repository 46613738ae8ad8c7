import sys

import numpy as np
import pytest

from rbmelm.datasets import RawDataset, split_and_normalize, synth_vowels
from rbmelm.numerics import make_rng


def blobs(rng, n=200, m=2, gap=6.0):
    """Two isotropic unit-variance Gaussian blobs ``gap`` standard deviations apart."""
    half = n // 2
    centre = np.zeros(m)
    centre[0] = gap
    X = np.vstack([rng.standard_normal((half, m)), centre + rng.standard_normal((n - half, m))])
    labels = ["neg"] * half + ["pos"] * (n - half)
    return RawDataset(X, labels, name="blobs")


@pytest.fixture
def blob_split():
    data = blobs(make_rng(11))
    return split_and_normalize(data, 0.7, make_rng(12))


@pytest.fixture(scope="session")
def small_vowels():
    return synth_vowels(make_rng(5), per_class=40, side=12)


@pytest.fixture
def vowel_split(small_vowels):
    return split_and_normalize(small_vowels, 0.7, make_rng(3))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("tests.test_acceptance")
    if module is None or not module.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.VERDICTS):
        terminalreporter.write_line(module.VERDICTS[number])
