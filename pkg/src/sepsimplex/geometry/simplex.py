"""Commutative simplices of states and the vertex set of their separable core."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import (
    CommutationError,
    CompletenessError,
    DimensionError,
    DomainError,
    OrthogonalityError,
)
from ..linalg import DEFAULT_TOL, as_square
from ..pencil import ppt_threshold, schmidt_decompose
from ..states import DensityMatrix, PureState, check_rank_one, validate_density


@dataclass(frozen=True, eq=False)
class Simplex:
    """Convex hull of ``n**2`` orthogonal rank-one projectors resolving the identity.

    ``vectors`` holds unit rays for the projectors when known.
    """

    n: int
    projectors: tuple
    vectors: np.ndarray = None

    @property
    def size(self):
        return self.n * self.n

    def ray(self, m):
        if self.vectors is not None:
            return self.vectors[m]
        w, v = np.linalg.eigh(self.projectors[m].matrix)
        return v[:, -1]

    def state(self, beta):
        """Density matrix ``sum_m beta[m] P_m``."""
        beta = np.asarray(beta, dtype=float)
        return DensityMatrix(self.n, np.einsum("m,mij->ij", beta, self.stack()))

    def stack(self):
        return np.array([p.matrix for p in self.projectors])


def simplex_from_projectors(ps, n, tol=DEFAULT_TOL, vectors=None):
    """Validate ``ps`` as an orthogonal rank-one resolution of the identity."""
    d = n * n
    if not ps:
        raise DimensionError("no projectors given")
    ps = [as_square(p, "projector") for p in ps]
    dms = tuple(check_rank_one(validate_density(p, n, tol), tol) for p in ps)
    stack = np.array([p.matrix for p in dms])
    for m in range(len(dms)):
        for k in range(m + 1, len(dms)):
            err = np.linalg.norm(stack[m] @ stack[k])
            if err > tol:
                raise OrthogonalityError(f"projectors {m} and {k} overlap: ||P_m P_k|| = {err:.3e}")
    err = np.linalg.norm(stack.sum(axis=0) - np.eye(d))
    if err > tol:
        raise CompletenessError(f"projectors do not sum to the identity: defect {err:.3e}")
    if len(ps) != d:
        raise DimensionError(f"need {d} projectors for n={n}, got {len(ps)}")
    return Simplex(n, dms, None if vectors is None else np.array(vectors, dtype=complex))


def simplex_from_vectors(vectors, n, tol=DEFAULT_TOL):
    vecs = np.array(vectors, dtype=complex)
    if vecs.ndim != 2 or vecs.shape[1] != n * n:
        raise DimensionError(f"need vectors of length {n * n}, got array of shape {vecs.shape}")
    vecs = vecs / np.linalg.norm(vecs, axis=1, keepdims=True)
    return simplex_from_projectors([np.outer(v, v.conj()) for v in vecs], n, tol, vectors=vecs)


def computational_simplex(n):
    return simplex_from_vectors(np.eye(n * n), n)


def bell_vectors(n):
    """Generalized Bell basis ``(1/sqrt n) sum_j w^(a j) |j>|j+b>``; for n=2 the usual Bell states."""
    w = np.exp(2j * np.pi / n)
    out = []
    for a in range(n):
        for b in range(n):
            v = np.zeros(n * n, dtype=complex)
            for j in range(n):
                v[j * n + (j + b) % n] = w ** (a * j)
            out.append(v / np.sqrt(n))
    return np.array(out)


def bell_simplex(n=2):
    return simplex_from_vectors(bell_vectors(n), n)


def completed_basis(first, n, seed=0):
    """Orthonormal basis of C^(n*n) whose first ray is ``first``, completed at random."""
    rng = np.random.default_rng(seed)
    d = n * n
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m[:, 0] = np.asarray(first, dtype=complex)
    q, r = np.linalg.qr(m)
    q = q * (np.diag(r) / np.abs(np.diag(r)))[None, :]
    return q.T


def barycentric(rho, s, tol=DEFAULT_TOL):
    """Coordinates ``beta_m = tr(P_m rho)`` of a state commuting with the simplex."""
    stack = s.stack()
    r = rho.matrix
    comm = max(float(np.linalg.norm(p @ r - r @ p)) for p in stack)
    if comm > tol:
        raise CommutationError(f"state does not commute with the simplex: max ||[rho, P_m]|| = {comm:.3e}")
    beta = np.einsum("mij,ji->m", stack, r).real
    if abs(beta.sum() - 1.0) > tol or beta.min() < -tol:
        raise DomainError(f"coordinates {beta} are not barycentric")
    return beta


@dataclass(frozen=True, eq=False)
class ApproxSet:
    """Hull of ``2 n**2`` states given by barycentric coordinates over a simplex.

    Rows ``0..n**2-1`` of ``vertices`` are the pencil points
    ``alpha_m P_m + (1 - alpha_m) I/n**2``; rows ``n**2..2n**2-1`` are the
    complementary-face barycentres ``(I - P_m)/(n**2 - 1)``.
    """

    simplex: Simplex
    alphas: np.ndarray
    vertices: np.ndarray

    @property
    def n(self):
        return self.simplex.n

    @property
    def alpha_min(self):
        return float(np.min(self.alphas))

    @property
    def central(self):
        return self.vertices[: self.simplex.size]

    @property
    def apexes(self):
        return self.vertices[self.simplex.size :]


def auto_alphas(s, tol=DEFAULT_TOL):
    """PPT threshold of each simplex vertex."""
    return np.array([ppt_threshold(schmidt_decompose(PureState(s.n, s.ray(m)), tol))[1] for m in range(s.size)])


def approx_vertices(alphas, n):
    d = n * n
    alphas = np.asarray(alphas, dtype=float)
    first = (1.0 - alphas)[:, None] / d * np.ones((d, d)) + np.diag(alphas)
    second = (np.ones((d, d)) - np.eye(d)) / (d - 1)
    return np.vstack([first, second])


def approx_set(s, alphas="auto", tol=DEFAULT_TOL):
    """Vertex data of the hull of pencil thresholds and complementary barycentres.

    ``alphas`` is ``"auto"`` (each vertex's PPT threshold), one scalar, or one
    value per simplex vertex, all in ``(0, 1]``.
    """
    d = s.size
    if d < 2:
        raise DimensionError("need n >= 2")
    if isinstance(alphas, str):
        if alphas != "auto":
            raise DomainError(f"alphas must be 'auto' or numeric, got {alphas!r}")
        a = auto_alphas(s, tol)
    else:
        a = np.broadcast_to(np.asarray(alphas, dtype=float), (d,)).copy()
    if np.any(a <= 0) or np.any(a > 1):
        raise DomainError(f"alphas must lie in (0, 1], got {a}")
    a.setflags(write=False)
    v = approx_vertices(a, s.n)
    v.setflags(write=False)
    return ApproxSet(s, a, v)
