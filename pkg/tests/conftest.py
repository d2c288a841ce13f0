import pytest

from nanotrap import default_mwnt, default_rb87


@pytest.fixture(scope="session")
def rb87():
    return default_rb87()


@pytest.fixture(scope="session")
def mwnt():
    return default_mwnt()
