import numpy as np
import pytest

from sepsimplex import PureState
from sepsimplex.pencil import SchmidtDecomposition

_ACCEPTANCE = []


def random_state(n, rng):
    v = rng.normal(size=n * n) + 1j * rng.normal(size=n * n)
    return PureState(n, v / np.linalg.norm(v))


def random_lambdas(n, rng):
    return SchmidtDecomposition.from_lambdas(np.abs(rng.normal(size=n)) + 1e-3)


def random_unitary(n, rng):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def acceptance():
    def record(label, ok, detail):
        line = f"{label}: {'PASS' if ok else 'FAIL'} - {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
