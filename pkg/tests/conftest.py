import numpy as np
import pytest

from quatcayley.basis import build_basis, select_generators
from quatcayley.projective import image_generators


def ring(n: int) -> np.ndarray:
    i = np.arange(n)
    return np.stack([(i + 1) % n, (i - 1) % n], axis=1)


def complete(n: int) -> np.ndarray:
    return np.array([[j for j in range(n) if j != i] for i in range(n)])


def petersen() -> np.ndarray:
    outer = [[(i + 1) % 5, (i - 1) % 5, i + 5] for i in range(5)]
    inner = [[5 + (i + 2) % 5, 5 + (i - 2) % 5, i] for i in range(5)]
    return np.array(outer + inner)


@pytest.fixture(scope="session")
def spec_10_11_13():
    return image_generators(select_generators(10, build_basis(11)), 13)


@pytest.fixture(scope="session")
def spec_10_11_7():
    return image_generators(select_generators(10, build_basis(11)), 7)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
