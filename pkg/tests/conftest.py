import zlib
from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).parent / "data"

_acceptance_lines: list[str] = []


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_rank(rng, m, n, r):
    """Random complex m x n matrix of rank r, with its full-rank factors."""
    F = crandn(rng, m, r)
    G = crandn(rng, r, n)
    return F @ G, F, G


def factor_pinv(F, G):
    """Pseudoinverse of F @ G from full-rank factors; independent of any SVD."""
    Fh, Gh = F.conj().T, G.conj().T
    return Gh @ np.linalg.solve(G @ Gh, np.linalg.solve(Fh @ F, Fh))


def rel(x, scale=1.0):
    return float(np.linalg.norm(x)) / max(1.0, float(scale))


@pytest.fixture
def rng(request):
    # stable per-test seed
    return np.random.default_rng(zlib.crc32(request.node.name.encode()))


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture
def record_criterion():
    def record(label: str, passed: bool, detail: str) -> None:
        _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
