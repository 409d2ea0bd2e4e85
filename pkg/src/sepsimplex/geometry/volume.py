"""Volumes of the central simplex plus outer pyramids, and the closed-form bound.

Barycentric vectors are treated as points of R^(n**2) with the Euclidean
metric, so the full simplex of states is regular with edge ``sqrt(2)``.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ..exceptions import DomainError
from .simplex import approx_vertices


def gram_volume(points):
    """k-dimensional volume of the simplex spanned by ``k + 1`` points.

    ``sqrt(det(E E^T)) / k!`` for the edge matrix ``E``, taken as
    ``|prod(diag(R))|`` from ``E^T = QR`` so flat simplices come out at
    rounding level instead of its square root.
    """
    p = np.asarray(points, dtype=float)
    e = p[1:] - p[0]
    k = e.shape[0]
    r = np.linalg.qr(e.T, mode="r")
    diag = np.abs(np.diag(r))
    if np.any(diag == 0):
        return 0.0
    return float(np.exp(np.sum(np.log(diag)) - math.lgamma(k + 1)))


def full_simplex_volume(n):
    """Volume of the regular ``(n**2 - 1)``-simplex with edge ``sqrt 2``: ``n / (n**2 - 1)!``."""
    return math.exp(math.log(n) - math.lgamma(n * n))


def pieces(alpha, n):
    """Vertex lists of the central simplex and the ``n**2`` pyramids for a uniform ``alpha``."""
    d = n * n
    v = approx_vertices(np.full(d, alpha), n)
    central, apexes = v[:d], v[d:]
    out = [central]
    for m in range(d):
        out.append(np.vstack([np.delete(central, m, axis=0), apexes[m]]))
    return out


class VolumeResult(NamedTuple):
    volume: float
    pieces: list
    degenerate: bool


def set_volume_exact(aset):
    """Sum of Gram-determinant volumes of the central simplex and its pyramids.

    Non-uniform thresholds are floored to their minimum first.
    """
    n = aset.n
    alpha = aset.alpha_min
    if alpha == 0:
        return VolumeResult(0.0, [0.0] * (n * n + 1), True)
    vols = [gram_volume(p) for p in pieces(alpha, n)]
    return VolumeResult(float(math.fsum(vols)), vols, False)


def paper_volume_bound(n, alpha_min, log=False):
    """Closed-form lower bound on the separable volume of a commutative simplex.

    ``alpha^(d-1) sqrt(d) / d! * (alpha sqrt((d+1)/d) + (d+1)(1-alpha)/sqrt(d(d+1)))``
    with ``d = n**2 - 1``, evaluated in log space. With ``log=True`` the
    natural logarithm is returned (``-inf`` at ``alpha_min = 0``).
    """
    if not 0.0 <= alpha_min <= 1.0:
        raise DomainError(f"alpha_min must lie in [0, 1], got {alpha_min!r}")
    d = n * n - 1
    if alpha_min == 0.0:
        return -math.inf if log else 0.0
    bracket = alpha_min * math.sqrt((d + 1) / d) + (d + 1) * (1.0 - alpha_min) / math.sqrt(d * (d + 1))
    lv = (d - 1) * math.log(alpha_min) + 0.5 * math.log(d) - math.lgamma(d + 1) + math.log(bracket)
    return lv if log else math.exp(lv)


@dataclass
class VolumeReport:
    n: int
    alphas: list
    triangulation_volume: float
    paper_bound: float
    simplex_volume: float
    degenerate: bool = False
    mc_fraction: float = None
    mc_stderr: float = None
    mc_samples: int = 0
    piece_volumes: list = field(default_factory=list)

    @property
    def triangulation_fraction(self):
        return self.triangulation_volume / self.simplex_volume

    @property
    def paper_fraction(self):
        return self.paper_bound / self.simplex_volume

    def as_dict(self):
        return {
            "n": self.n,
            "alphas": [float(a) for a in self.alphas],
            "alpha_min": float(min(self.alphas)),
            "triangulation_volume": self.triangulation_volume,
            "paper_bound": self.paper_bound,
            "simplex_volume": self.simplex_volume,
            "triangulation_fraction": self.triangulation_fraction,
            "paper_fraction": self.paper_fraction,
            "piece_volumes": list(self.piece_volumes),
            "degenerate": self.degenerate,
            "mc_fraction": self.mc_fraction,
            "mc_stderr": self.mc_stderr,
            "mc_samples": self.mc_samples,
        }
