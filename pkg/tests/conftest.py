import numpy as np
import pytest

from lorlab import scenarios


@pytest.fixture(scope="session")
def slab():
    return scenarios.build("minkowski_slab")


@pytest.fixture(scope="session")
def product_disk():
    return scenarios.build("product_disk")


@pytest.fixture(scope="session")
def perturbed_product():
    return scenarios.build("perturbed_product")


@pytest.fixture(scope="session")
def stationary_rot():
    return scenarios.build("stationary_rot")


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(2024)
