import os

import pytest

os.environ.setdefault("ODDEVEN_SETTINGS_MODULE", "tests.settings.TestSettings")


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False, help="run full-scale TDSE tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def isolate_fs(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    yield


@pytest.fixture
def anyio_backend():
    return "asyncio"
