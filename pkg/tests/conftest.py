from __future__ import annotations

import numpy as np
import pytest

from lnqec import codes, io

# criterion number -> (title, passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def load(name: str, d: int | None = None) -> codes.LinearCode:
    H, field = io.read_matrix(io.bundled(io.BUNDLED[name]))
    if field == 2:
        return codes.import_binary(H, d)
    return codes.import_quaternary(H, d)


@pytest.fixture
def rep3_pcm() -> codes.TracePcm:
    return codes.build_trace_pcm(load("rep3_gf4", 3))


@pytest.fixture
def rep3_pair() -> codes.BinaryPairCode:
    rep = codes.import_binary(np.array([[1, 1, 0], [1, 0, 1]]), d=3)
    return codes.build_binary_pair(rep, rep)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}: {detail}")
