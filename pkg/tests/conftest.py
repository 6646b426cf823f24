import random
from collections import defaultdict

import pytest
from hypothesis import settings

from llab.presets import preset

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_TITLES = {
    1: "squares of (o/4o)^x over Q_2(cbrt2)",
    2: "unramified discriminant classes over Q_2(cbrt2)",
    3: "Q_2(sqrt3)(sqrt(-1)) is unramified",
    4: "Q_2 census, 7 lines",
    5: "Q_3(zeta3) census with exhaustive check",
    6: "mass exactness and closed form",
    7: "mass over Q_3(zeta3) is 13/27",
    8: "pairing formula agrees with Galois oracle",
    9: "break three-way agreement",
    10: "structured vs exhaustive p-th power test",
    11: "mu_p criterion vs root oracle",
    12: "discriminant of Q_2(i, sqrt2, sqrt5) three ways",
    13: "finite-field discriminant parity, exhaustive",
    14: "elliptic round trip and transform invariance",
    15: "orthogonality of the two filtrations",
}

_outcomes: dict[int, list[str]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes[marker.args[0]].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_TITLES):
        results = _outcomes.get(n)
        if not results:
            status = "NOT RUN"
        elif all(r == "passed" for r in results):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} [{status}] {ACCEPTANCE_TITLES[n]} ({len(results or [])} checks)")


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def fields():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = preset(name)
        return cache[name]

    return get
