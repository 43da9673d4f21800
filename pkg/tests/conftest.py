import pytest

from suzuki_chars.acceptance import group, table


@pytest.fixture(scope="session")
def get_group():
    return lambda *key: group(key if len(key) == 5 else key + (None,))


@pytest.fixture(scope="session")
def get_table():
    return lambda *key: table(key if len(key) == 5 else key + (None,))
