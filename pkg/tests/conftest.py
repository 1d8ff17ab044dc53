import functools

import pytest
from hypothesis import HealthCheck, settings

from binedge.graphs import Graph, connected_graphs
from binedge.oracle import OracleConfig, run_oracle

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CORPUS = connected_graphs(5)


@functools.lru_cache(maxsize=None)
def oracle_of(g: Graph, char: int = 32003, threads: int = 1):
    return run_oracle(g, OracleConfig(char=char, threads=threads))


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion; printed in the terminal summary."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[k])
