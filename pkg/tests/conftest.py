import numpy as np
import pytest

from trigspline import dft_coeffs, make_grid

EXAMPLE_VALUES = np.array([2.0, 1.0, 3.0, 2.0, 4.0, 1.0, 3.0, 1.0, 3.0])


@pytest.fixture(scope="session")
def grid9():
    return make_grid(9)


@pytest.fixture(scope="session")
def example_values():
    return EXAMPLE_VALUES.copy()


@pytest.fixture(scope="session")
def example_coeffs(grid9):
    return dft_coeffs(grid9, EXAMPLE_VALUES)


ACCEPTANCE_LINES = []


def record_criterion(label, passed, detail):
    ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'} {label}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
