"""Density matrices, pure states and the pencil toward the maximally mixed state."""

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DimensionError,
    DomainError,
    NegativeEigenvalueError,
    NormalizationError,
    RankError,
    TraceError,
)
from .linalg import DEFAULT_TOL, as_square, check_hermitian, hermitian_spectrum, partial_transpose


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A state on C^n (x) C^n, stored as an ``n**2 x n**2`` complex matrix.

    Build instances through :func:`validate_density` unless the matrix is
    known to be valid.
    """

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.shape != (self.n * self.n, self.n * self.n):
            raise DimensionError(f"expected {self.n ** 2}x{self.n ** 2} matrix for n={self.n}, got {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.n * self.n

    def allclose(self, other, atol):
        other = other.matrix if isinstance(other, DensityMatrix) else np.asarray(other)
        return bool(np.max(np.abs(self.matrix - other)) <= atol)


@dataclass(frozen=True, eq=False)
class PureState:
    """Amplitude vector of length ``n**2``; entry ``i*n + j`` is the weight of ``|i>|j>``."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        v = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if v.shape != (self.n * self.n,):
            raise DimensionError(f"expected {self.n ** 2} amplitudes for n={self.n}, got {v.size}")
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def check_normalized(self, tol=DEFAULT_TOL):
        if abs(self.norm - 1.0) > tol:
            raise NormalizationError(f"state norm is {self.norm!r}, expected 1 within {tol:g}")
        return self

    def coefficient_matrix(self):
        return self.amplitudes.reshape(self.n, self.n)

    def projector(self, tol=DEFAULT_TOL):
        self.check_normalized(tol)
        v = self.amplitudes
        return DensityMatrix(self.n, np.outer(v, v.conj()))

    @classmethod
    def product(cls, a, b):
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        return cls(a.size, np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b)))

    @classmethod
    def maximally_entangled(cls, n):
        return cls(n, np.eye(n).reshape(-1) / np.sqrt(n))


def maximally_mixed(n):
    return DensityMatrix(n, np.eye(n * n) / (n * n))


def validate_density(m, n, tol=DEFAULT_TOL):
    """Check the density-matrix invariants and wrap ``m``.

    Raises
    ------
    DimensionError
        ``m`` is not ``n**2 x n**2``.
    NotHermitianError, TraceError, NegativeEigenvalueError
        The corresponding invariant fails at ``tol``; the message carries the
        offending magnitude.
    """
    a = as_square(m)
    if a.shape[0] != n * n:
        raise DimensionError(f"matrix is {a.shape[0]}x{a.shape[0]}, expected {n * n}x{n * n} for n={n}")
    check_hermitian(a, tol, "density matrix")
    tr = np.trace(a)
    if abs(tr - 1.0) > tol:
        raise TraceError(f"trace is {tr.real!r}, expected 1 within {tol:g}")
    lo = hermitian_spectrum(a, tol)[0]
    if lo < -tol:
        raise NegativeEigenvalueError(f"min eigenvalue {lo:.3e} < -{tol:g}")
    return DensityMatrix(n, a)


def is_ppt(rho, tol=DEFAULT_TOL):
    """Test positivity of the partial transpose.

    Returns
    -------
    (bool, float)
        Whether the smallest eigenvalue of ``rho^T_B`` is at least ``-tol``,
        and that eigenvalue.
    """
    lo = float(hermitian_spectrum(partial_transpose(rho.matrix, rho.n), tol)[0])
    return lo >= -tol, lo


def check_rank_one(p, tol=DEFAULT_TOL):
    ev = hermitian_spectrum(p.matrix, tol)
    if ev.size > 1 and ev[-2] > tol:
        raise RankError(f"projector is not rank one: second eigenvalue {ev[-2]:.3e} > {tol:g}")
    return p


def pencil_matrix(p, alpha, n):
    d = n * n
    return alpha * np.asarray(p) + (1.0 - alpha) * np.eye(d) / d


def pencil_state(p, alpha, tol=DEFAULT_TOL):
    """Mix a pure state with the maximally mixed state: ``alpha*P + (1-alpha)*I/n**2``."""
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    check_rank_one(p, tol)
    return validate_density(pencil_matrix(p.matrix, alpha, p.n), p.n, tol)
