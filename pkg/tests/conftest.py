import functools
from fractions import Fraction

import pytest

from filippov.catalog import CatalogId, catalog_ids, make
from filippov.graph import build_graph
from filippov.invariants import profile

ARITIES = (2, 3, 4, 5)


@functools.lru_cache(maxsize=None)
def cached_graph(n):
    return build_graph(n)


@functools.lru_cache(maxsize=None)
def cached_profile(cid):
    return profile(make(cid))


def all_ids(n, alphas=(Fraction(-1, 4),)):
    return catalog_ids(n, alphas)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion reported in the summary")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, text = mark.args
    store = item.config._criteria
    failed = rep.failed or (rep.when == "call" and rep.outcome != "passed")
    prev = store.get(number, (text, True))
    store[number] = (text, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = getattr(config, "_criteria", {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        text, ok = store[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}")
