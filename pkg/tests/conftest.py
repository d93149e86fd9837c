import functools

import pytest

from betahalton.structure.numeration_system import NumerationSystem

# Systems exercised across the test suite. (2,) is the classical base 2.
SHIPPED_COEFFS = [(1, 1), (2, 2), (1, 1, 1), (3, 3, 3), (1, 0, 1), (2, 1, 2), (2,)]

# Systems covered by the measure transport theory.
TRANSPORT_COEFFS = [(1, 1), (2, 2), (1, 1, 1), (3, 3, 3), (1, 0, 1)]


@functools.lru_cache(maxsize=None)
def get_system(coeffs, max_index=None):
    return NumerationSystem(coeffs, max_index=max_index)


@pytest.fixture(scope="session", params=SHIPPED_COEFFS, ids=str)
def shipped_system(request):
    return get_system(request.param)


@pytest.fixture(scope="session")
def fib():
    return get_system((1, 1))


@pytest.fixture(scope="session")
def base2():
    return get_system((2,))


@pytest.fixture(scope="session")
def sys101():
    return get_system((1, 0, 1))


@pytest.fixture
def user_home(tmp_path, monkeypatch):
    """
    Redirect the home directory so the configs folder is created
    in a temporary location.
    """
    from pathlib import Path

    monkeypatch.setattr(Path, "home", lambda: tmp_path)
    return tmp_path
