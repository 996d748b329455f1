import os
import shutil

import pytest

from fermatsieve import fixtures
from fermatsieve.cli import DATA_ENV, load_level

NEEDED = (71,) + fixtures.LEVELS


def _complete(directory):
    return directory and all(os.path.isfile(os.path.join(directory, f"{lv}.json")) for lv in NEEDED)


@pytest.fixture(scope="session")
def data_dir(request):
    """Newform data: $FERMATSIEVE_DATA, a cached export, or a fresh cypari2 export."""
    env = os.environ.get(DATA_ENV)
    if _complete(env):
        return env
    cache = str(request.config.cache.mkdir("newform-data"))
    if _complete(cache):
        return cache
    try:
        from fermatsieve.export import ExportUnavailable, export_levels
    except ImportError:
        pytest.skip("no newform data and no exporter")
    tmp = cache + ".partial"
    shutil.rmtree(tmp, ignore_errors=True)
    try:
        export_levels(NEEDED, tmp)
    except ExportUnavailable as exc:
        pytest.skip(f"no newform data: {exc}")
    for name in os.listdir(tmp):
        shutil.move(os.path.join(tmp, name), os.path.join(cache, name))
    shutil.rmtree(tmp, ignore_errors=True)
    return cache


@pytest.fixture(scope="session")
def level_classes(data_dir):
    cache = {}

    def get(level):
        if level not in cache:
            cache[level] = load_level(data_dir, level)
        return cache[level]

    return get


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        num = int(name.split("_")[2])
        label = name.split("_", 3)[3].replace("_", " ")
        terminalreporter.write_line(f"criterion {num:2d} {_ACCEPTANCE[name].upper():8s} {label}")
