import pytest


@pytest.fixture(scope="session")
def dataset():
    from geodex.spectral import load_bundled_dataset
    return load_bundled_dataset()
