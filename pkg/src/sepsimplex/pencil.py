"""Schmidt analysis of pure states and the PPT threshold along their pencil."""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvariantViolation
from .linalg import DEFAULT_TOL, min_pt_eigenvalue
from .states import PureState, pencil_matrix

BISECTION_STEPS = 60


def _canonical_phase(col):
    k = int(np.argmax(np.abs(col)))
    z = col[k]
    return 1.0 if z == 0 else np.conj(z) / abs(z)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """``psi = sum_k lambdas[k] * basis_a[:, k] (x) basis_b[:, k]``."""

    n: int
    lambdas: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    @classmethod
    def from_lambdas(cls, lambdas):
        """Schmidt data whose local bases are the computational ones."""
        lam = np.sort(np.asarray(lambdas, dtype=float))[::-1]
        if np.any(lam < 0):
            raise ValueError("Schmidt coefficients must be nonnegative")
        lam = lam / np.linalg.norm(lam)
        n = lam.size
        return cls(n, lam, np.eye(n, dtype=complex), np.eye(n, dtype=complex))

    def schmidt_vector(self):
        """The state written in its own Schmidt basis: ``sum_k lambda_k |kk>``."""
        v = np.zeros(self.n * self.n, dtype=complex)
        v[:: self.n + 1] = self.lambdas
        return v

    def local_rotation(self):
        """Unitary taking the Schmidt product basis to the original one."""
        return np.kron(self.basis_a, self.basis_b)

    def reconstruct(self):
        return np.einsum("k,ik,jk->ij", self.lambdas, self.basis_a, self.basis_b).reshape(-1)

    def check(self, tol=DEFAULT_TOL):
        lam = self.lambdas
        if abs(np.sum(lam ** 2) - 1.0) > tol:
            raise InvariantViolation(f"sum of squared Schmidt coefficients is {np.sum(lam ** 2)!r}")
        if np.any(lam < 0) or np.any(np.diff(lam) > 0):
            raise InvariantViolation("Schmidt coefficients must be nonnegative and descending")
        eye = np.eye(self.n)
        for name, u in (("basis_a", self.basis_a), ("basis_b", self.basis_b)):
            err = np.max(np.abs(u.conj().T @ u - eye))
            if err > tol:
                raise InvariantViolation(f"{name} is not unitary (defect {err:.3e})")
        return self


def schmidt_decompose(psi, tol=DEFAULT_TOL):
    """Schmidt decomposition of a normalized bipartite pure state via SVD.

    Each column of ``basis_a`` is rephased so that its largest-magnitude entry
    is real and positive, with the inverse phase moved onto ``basis_b``;
    columns paired with a zero coefficient are rephased independently.
    """
    psi.check_normalized(tol)
    u, s, vh = np.linalg.svd(psi.coefficient_matrix())
    a = u.copy()
    b = vh.T.copy()
    for k in range(psi.n):
        ph = _canonical_phase(a[:, k])
        a[:, k] *= ph
        if s[k] > 0:
            b[:, k] /= ph
        else:
            b[:, k] *= _canonical_phase(b[:, k])
    sd = SchmidtDecomposition(psi.n, s, a, b)
    sd.check(tol)
    residual = np.max(np.abs(sd.reconstruct() - psi.amplitudes))
    if residual > tol:
        raise InvariantViolation(f"Schmidt reconstruction residual {residual:.3e}")
    return sd


def ppt_threshold(sd):
    """Largest product of two distinct Schmidt coefficients and the PPT edge.

    Returns ``(M, alpha_M)`` with ``M = lambda_1 * lambda_2`` and
    ``alpha_M = 1 / (1 + n**2 * M)``; the pencil ``alpha*P + (1-alpha)*I/n**2``
    has positive partial transpose exactly for ``alpha <= alpha_M``.
    """
    lam = sd.lambdas
    m = float(lam[0] * lam[1]) if lam.size > 1 else 0.0
    if m == 0.0:
        return 0.0, 1.0
    return m, 1.0 / (1.0 + sd.n * sd.n * m)


def ppt_boundary_scan(psi, tol=DEFAULT_TOL, full_output=False):
    """Locate the PPT boundary on the pencil of ``psi`` by bisection.

    Each step evaluates the smallest eigenvalue of the partial transpose of
    the pencil state, independent of any Schmidt data.

    Parameters
    ----------
    psi : PureState
    tol : float
        Normalization tolerance and slack for the monotonicity check.
    full_output : bool
        Also return whether the whole pencil is PPT (product input).

    Returns
    -------
    alpha_star : float
    fully_ppt : bool, optional
    """
    p = psi.check_normalized(tol).projector(tol).matrix
    n = psi.n

    def f(alpha):
        return min_pt_eigenvalue(pencil_matrix(p, alpha, n), n)

    if f(1.0) >= 0.0:
        return (1.0, True) if full_output else 1.0
    lo, hi = 0.0, 1.0
    samples = [(0.0, f(0.0)), (1.0, f(1.0))]
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        val = f(mid)
        samples.append((mid, val))
        if val >= 0.0:
            lo = mid
        else:
            hi = mid
    samples.sort()
    vals = np.array([v for _, v in samples])
    if np.any(np.diff(vals) > tol):
        raise InvariantViolation("min PT eigenvalue is not monotone along the pencil")
    alpha = 0.5 * (lo + hi)
    return (alpha, False) if full_output else alpha
