"""Commutative simplices, the separable hull inside them, and its volume."""

from .lp import Membership, hull_membership
from .montecarlo import MCEstimate, mc_fraction, mc_piece_overlap, uniform_barycentric
from .simplex import (
    ApproxSet,
    Simplex,
    approx_set,
    barycentric,
    bell_simplex,
    bell_vectors,
    completed_basis,
    computational_simplex,
    simplex_from_projectors,
    simplex_from_vectors,
)
from .volume import (
    VolumeReport,
    full_simplex_volume,
    gram_volume,
    paper_volume_bound,
    set_volume_exact,
)


def volume_report(aset, samples=0, seed=0):
    """Triangulation volume, closed-form bound and optional MC hull fraction."""
    exact = set_volume_exact(aset)
    report = VolumeReport(
        n=aset.n,
        alphas=[float(a) for a in aset.alphas],
        triangulation_volume=exact.volume,
        paper_bound=paper_volume_bound(aset.n, aset.alpha_min),
        simplex_volume=full_simplex_volume(aset.n),
        degenerate=exact.degenerate,
        piece_volumes=exact.pieces,
    )
    if samples:
        est = mc_fraction(aset, samples, seed, "hull")
        report.mc_fraction, report.mc_stderr, report.mc_samples = est.fraction, est.stderr, samples
    return report


__all__ = [
    "ApproxSet",
    "MCEstimate",
    "Membership",
    "Simplex",
    "VolumeReport",
    "approx_set",
    "barycentric",
    "bell_simplex",
    "bell_vectors",
    "completed_basis",
    "computational_simplex",
    "full_simplex_volume",
    "gram_volume",
    "hull_membership",
    "mc_fraction",
    "mc_piece_overlap",
    "paper_volume_bound",
    "set_volume_exact",
    "simplex_from_projectors",
    "simplex_from_vectors",
    "uniform_barycentric",
    "volume_report",
]
