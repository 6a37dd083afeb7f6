import numpy as np
import pytest

from dscim_app.core.macro import MacroConfig


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def dscim1():
    return MacroConfig(debug=True)


@pytest.fixture
def random_column(rng):
    def _make(rows=128):
        return rng.integers(-128, 128, rows), rng.integers(-128, 128, rows)
    return _make
