from pathlib import Path

import pytest

from freecons.config import load

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def load_group(name, **kw):
    return load(CONFIGS / f"{name}.yaml", **kw).group


@pytest.fixture(scope="session")
def z2z3():
    return load_group("z2_z3")


@pytest.fixture(scope="session")
def z2z2():
    return load_group("z2_z2")


@pytest.fixture(scope="session")
def s3amalgam():
    return load_group("s3_c2_s3")


@pytest.fixture(scope="session")
def bs23():
    return load_group("bs23")


@pytest.fixture(scope="session")
def central():
    cache = {}

    def get(k):
        if k not in cache:
            cache[k] = load_group(f"central_k{k}")
        return cache[k]

    return get


# -- acceptance summary: one line per criterion ---------------------------------

_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or rep.failed):
        return
    number, title = marker.args
    _, ok = _CRITERIA.get(number, (title, True))
    _CRITERIA[number] = (title, ok and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
