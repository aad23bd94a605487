from __future__ import annotations

import sys

import pytest

from gencluster.roots import build_root_system


@pytest.fixture(scope="session")
def systems():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_root_system(name)
        return cache[name]

    return get


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
