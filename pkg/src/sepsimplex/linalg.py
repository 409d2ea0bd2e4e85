"""Dense complex linear algebra on C^n (x) C^n.

Composite index convention: ``|i> (x) |j>`` lives at position ``i*n + j``.
"""

import numpy as np

from .exceptions import DimensionError, InputError, IterationLimitError, NotHermitianError

DEFAULT_TOL = 1e-9


def as_square(m, name="matrix"):
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    return a


def local_dim(d):
    """Return ``n`` with ``n*n == d`` or raise :class:`DimensionError`."""
    n = int(round(np.sqrt(d)))
    if n * n != d or n < 1:
        raise DimensionError(f"dimension {d} is not a perfect square")
    return n


def kron(a, b):
    """Kronecker product; block ``(i, m)`` of the result is ``a[i, m] * b``."""
    return np.kron(as_square(a, "a"), as_square(b, "b"))


def partial_transpose(rho, n=None, side="second"):
    """Transpose one tensor factor of an operator on C^n (x) C^n.

    For ``side="second"`` the result satisfies
    ``<ij|rho^T_B|kl> = <il|rho|kj>``; ``side="first"`` swaps ``i`` and ``k``
    instead.
    """
    a = as_square(rho, "rho")
    d = a.shape[0]
    if n is None:
        n = local_dim(d)
    elif n * n != d:
        raise DimensionError(f"matrix dimension {d} does not match n={n} (expected {n * n})")
    t = a.reshape(n, n, n, n)
    if side == "second":
        t = t.transpose(0, 3, 2, 1)
    elif side == "first":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise InputError(f"side must be 'first' or 'second', got {side!r}")
    return t.reshape(d, d)


def hermiticity_defect(h):
    h = np.asarray(h)
    if h.size == 0:
        return 0.0
    return float(np.max(np.abs(h - h.conj().T)))


def check_hermitian(h, tol=DEFAULT_TOL, name="matrix"):
    a = as_square(h, name)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitianError(f"{name} is not Hermitian: max |h_ij - conj(h_ji)| = {defect:.3e} > tol {tol:g}")
    return a


def jacobi_eigh(h, rtol=1e-14, max_sweeps=64):
    """Eigen-decompose a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm is at most
    ``rtol * ||h||_F``.

    Returns
    -------
    w : ndarray
        Eigenvalues in ascending order.
    v : ndarray
        Unitary matrix whose columns are the matching eigenvectors.
    """
    a = np.array(h, dtype=complex)
    d = a.shape[0]
    v = np.eye(d, dtype=complex)
    scale = np.linalg.norm(a)
    if d == 0 or scale == 0.0:
        return np.zeros(d), v
    for _ in range(max_sweeps):
        if np.linalg.norm(a - np.diag(np.diag(a))) <= rtol * scale:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                ph = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * np.conj(ph) * aq
                a[:, q] = s * ph * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * ph * rq
                a[q, :] = s * np.conj(ph) * rp + c * rq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(ph) * vq
                v[:, q] = s * ph * vp + c * vq
    else:
        raise IterationLimitError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_spectrum(h, tol=DEFAULT_TOL, method="lapack"):
    """Eigenvalues of a Hermitian matrix in ascending order.

    ``method="lapack"`` calls :func:`numpy.linalg.eigvalsh`;
    ``method="jacobi"`` uses the in-house :func:`jacobi_eigh`.
    """
    a = check_hermitian(h, tol)
    if method == "lapack":
        return np.linalg.eigvalsh(a)
    if method == "jacobi":
        return jacobi_eigh(a)[0]
    raise InputError(f"unknown eigensolver {method!r}")


def min_pt_eigenvalue(matrix, n=None, side="second"):
    """Smallest eigenvalue of the partial transpose (no validation)."""
    return float(np.linalg.eigvalsh(partial_transpose(matrix, n, side))[0])


def schmidt_coefficients(vec, n):
    """Singular values of the n x n coefficient matrix of ``vec``, descending."""
    return np.linalg.svd(np.asarray(vec, dtype=complex).reshape(n, n), compute_uv=False)
