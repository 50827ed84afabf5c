import pytest
from mpmath import mp


@pytest.fixture(autouse=True)
def precision_256():
    saved = mp.prec
    mp.prec = 256
    yield
    mp.prec = saved
