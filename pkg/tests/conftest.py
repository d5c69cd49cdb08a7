from functools import lru_cache

import pytest

from minwalg.lie import build_all
from minwalg.ug import build_oracle
from minwalg.walg import build_presentation


@lru_cache(maxsize=None)
def slice_of(letter, rank):
    return build_all(letter, rank)


@lru_cache(maxsize=None)
def oracle_of(letter, rank):
    return build_oracle(slice_of(letter, rank))


@lru_cache(maxsize=None)
def pres_of(letter, rank):
    return build_presentation(slice_of(letter, rank))


@pytest.fixture(scope="session")
def built():
    """Accessors for cached builds: built.sd("G", 2), built.oracle(...), built.pd(...)."""

    class Built:
        sd = staticmethod(slice_of)
        oracle = staticmethod(oracle_of)
        pd = staticmethod(pres_of)

    return Built


ACCEPTANCE_LINES: dict = {}


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
