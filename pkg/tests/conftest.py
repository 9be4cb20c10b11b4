import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def direct_idft(x):
    """O(N^2) inverse DFT with 1/N scaling, independent of numpy.fft."""
    n = len(x)
    k = np.arange(n)
    w = np.exp(2j * np.pi * np.outer(k, k) / n)
    return w @ np.asarray(x, dtype=complex) / n


def direct_dft(y):
    n = len(y)
    k = np.arange(n)
    w = np.exp(-2j * np.pi * np.outer(k, k) / n)
    return w @ np.asarray(y, dtype=complex)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
