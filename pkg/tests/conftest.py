import pathlib

import numpy as np
import pytest

from qtorus import load_zero_table

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)


@pytest.fixture(scope="session")
def zeros100():
    return load_zero_table(DATA / "zeta_zeros_100.txt")


@pytest.fixture(scope="session")
def zeros10k():
    path = DATA / "zeta_zeros_10k.txt"
    if not path.exists():
        pytest.skip("large ordinate table not present")
    return load_zero_table(path)
