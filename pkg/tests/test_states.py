import numpy as np
import pytest

from sepsimplex.exceptions import (
    DimensionError,
    DomainError,
    NegativeEigenvalueError,
    NormalizationError,
    NotHermitianError,
    RankError,
    TraceError,
)
from sepsimplex.linalg import partial_transpose
from sepsimplex.states import (
    PureState,
    is_ppt,
    maximally_mixed,
    pencil_state,
    validate_density,
)

from conftest import random_state


def bell():
    return PureState.maximally_entangled(2).projector()


def test_validate_accepts_maximally_mixed():
    rho = validate_density(np.eye(4) / 4, 2)
    assert rho.n == 2 and rho.dim == 4


def test_validate_reports_trace():
    with pytest.raises(TraceError, match="2.0"):
        validate_density(2 * np.eye(4) / 4, 2)


def test_validate_reports_non_hermitian():
    m = np.zeros((4, 4))
    m[0, 1] = 1
    m[2, 2] = m[3, 3] = 0.5
    with pytest.raises(NotHermitianError):
        validate_density(m, 2)


def test_validate_reports_negative_eigenvalue():
    with pytest.raises(NegativeEigenvalueError):
        validate_density(np.diag([1.2, -0.2, 0, 0]), 2)


def test_validate_reports_dimension():
    with pytest.raises(DimensionError):
        validate_density(np.eye(3) / 3, 2)


def test_density_matrix_is_read_only():
    rho = maximally_mixed(2)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1


def test_is_ppt_maximally_mixed():
    ok, lo = is_ppt(maximally_mixed(2))
    assert ok
    assert lo == pytest.approx(0.25, abs=1e-15)


def test_is_ppt_bell_projector():
    ok, lo = is_ppt(bell())
    assert not ok
    assert lo == pytest.approx(-0.5, abs=1e-12)


def test_is_ppt_at_bell_pencil_boundary():
    ok, lo = is_ppt(pencil_state(bell(), 1 / 3))
    assert ok
    assert abs(lo) < 1e-12


def test_pencil_endpoints():
    p = bell()
    assert pencil_state(p, 0.0).allclose(np.eye(4) / 4, 1e-15)
    assert pencil_state(p, 1.0).allclose(p, 1e-15)


def test_bell_pencil_entries():
    m = pencil_state(bell(), 1 / 3).matrix
    np.testing.assert_allclose(np.diag(m).real, [1 / 3, 1 / 6, 1 / 6, 1 / 3], atol=1e-15)
    assert m[0, 3] == pytest.approx(1 / 6)
    assert m[3, 0] == pytest.approx(1 / 6)


def test_pencil_rejects_bad_inputs():
    with pytest.raises(DomainError):
        pencil_state(bell(), 1.5)
    with pytest.raises(RankError):
        pencil_state(maximally_mixed(2), 0.5)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pencil_spectrum(n, rng):
    for alpha in rng.uniform(size=5):
        p = random_state(n, rng).projector()
        ev = np.linalg.eigvalsh(pencil_state(p, alpha).matrix)
        d = n * n
        expected = np.sort([alpha + (1 - alpha) / d] + [(1 - alpha) / d] * (d - 1))
        np.testing.assert_allclose(ev, expected, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3])
def test_partial_transpose_preserves_trace(n, rng):
    for _ in range(10):
        x = rng.normal(size=(n * n, n * n)) + 1j * rng.normal(size=(n * n, n * n))
        rho = x @ x.conj().T
        rho /= np.trace(rho)
        assert abs(np.trace(partial_transpose(rho, n)) - 1) < 1e-12


def test_pure_state_normalization_check():
    with pytest.raises(NormalizationError):
        PureState(2, [1, 1, 0, 0]).check_normalized()
    with pytest.raises(DimensionError):
        PureState(2, [1, 0, 0])
