"""Monte Carlo estimates over the uniform measure on the simplex of states."""

from typing import NamedTuple

import numpy as np

from ..exceptions import DomainError
from ..linalg import DEFAULT_TOL, partial_transpose
from .lp import hull_membership
from .volume import pieces

CHUNK = 4096
PIECE_EPS = 1e-12


class MCEstimate(NamedTuple):
    fraction: float
    stderr: float


def chunk_rng(seed, index):
    """Counter-based stream for one chunk, keyed on ``(seed, index)`` only."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed & (2 ** 64 - 1), index])))


def uniform_barycentric(samples, d, seed):
    """Yield uniform points of the probability simplex in fixed-size chunks.

    Points are normalized vectors of ``d`` unit-exponential variates.
    """
    for index, start in enumerate(range(0, samples, CHUNK)):
        size = min(CHUNK, samples - start)
        x = chunk_rng(seed, index).standard_exponential((size, d))
        yield x / x.sum(axis=1, keepdims=True)


def _piece_inverses(aset):
    # Piece vertices are linearly independent and lie on sum(beta) = 1, so the
    # local barycentric coordinates solve a square system.
    return [np.linalg.inv(p.T) for p in pieces(aset.alpha_min, aset.n)]


def piece_hits(points, inverses):
    """Number of pieces containing each point."""
    hits = np.zeros(points.shape[0], dtype=int)
    for inv in inverses:
        coords = points @ inv.T
        hits += np.all(coords >= -PIECE_EPS, axis=1)
    return hits


def _estimate(count, samples):
    p = count / samples
    return MCEstimate(float(p), float(np.sqrt(p * (1.0 - p) / samples)))


def mc_fraction(aset, samples, seed=0, target="hull", tol=DEFAULT_TOL):
    """Fraction of the simplex lying in a target region.

    Parameters
    ----------
    aset : ApproxSet
    samples : int
    seed : int
        Output depends only on ``(seed, samples)``.
    target : {"hull", "pieces", "ppt"}
        ``hull`` runs the LP membership test per point, ``pieces`` tests the
        central simplex and pyramids of :func:`set_volume_exact`, ``ppt``
        tests the reconstructed density matrix.
    """
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    d = aset.simplex.size
    count = 0
    if target == "hull":
        for chunk in uniform_barycentric(samples, d, seed):
            count += sum(hull_membership(b, aset, tol=tol).inside for b in chunk)
    elif target == "pieces":
        inv = _piece_inverses(aset)
        for chunk in uniform_barycentric(samples, d, seed):
            count += int(np.count_nonzero(piece_hits(chunk, inv)))
    elif target == "ppt":
        stack = aset.simplex.stack()
        n = aset.n
        for chunk in uniform_barycentric(samples, d, seed):
            rho = np.einsum("sm,mij->sij", chunk, stack)
            pt = np.array([partial_transpose(r, n) for r in rho])
            count += int(np.count_nonzero(np.linalg.eigvalsh(pt)[:, 0] >= -tol))
    else:
        raise DomainError(f"unknown target {target!r}")
    return _estimate(count, samples)


def mc_piece_overlap(aset, samples, seed=0):
    """Fraction of uniform points lying in two or more pieces."""
    inv = _piece_inverses(aset)
    count = 0
    for chunk in uniform_barycentric(samples, aset.simplex.size, seed):
        count += int(np.count_nonzero(piece_hits(chunk, inv) >= 2))
    return _estimate(count, samples)
