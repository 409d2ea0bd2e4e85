"""Phase-one simplex method for convex-hull membership.

The same tableau code runs on float arrays or on object arrays of
:class:`fractions.Fraction`, selected by ``mode``.
"""

from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from ..exceptions import DomainError, IterationLimitError
from ..linalg import DEFAULT_TOL

PIVOT_EPS = 1e-12
RATIONAL_DENOMINATOR = 10 ** 12


class Membership(NamedTuple):
    """Outcome of :func:`hull_membership`.

    When inside, ``weights`` are convex weights over the vertices. When
    outside, ``(normal, offset)`` satisfy ``normal @ v + offset <= 0`` at every
    vertex ``v`` and ``normal @ beta + offset > 0``.
    """

    inside: bool
    weights: Optional[np.ndarray]
    normal: Optional[np.ndarray]
    offset: Optional[float]
    objective: float
    pivots: int


def rationalize(x):
    return Fraction(float(x)).limit_denominator(RATIONAL_DENOMINATOR)


def phase_one(a, b, exact=False, eps=PIVOT_EPS):
    """Minimize the sum of artificials for ``a @ w = b, w >= 0`` with Bland's rule.

    Returns the primal point ``w``, the dual vector ``y`` of the phase-one
    problem (``a.T @ y <= 0``, ``b @ y`` equal to the optimum) and the
    optimum value.
    """
    rows, cols = a.shape
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    eps = zero if exact else eps
    sign = np.array([one if x >= zero else -one for x in b], dtype=object if exact else float)
    dtype = object if exact else float
    t = np.empty((rows, cols + rows + 1), dtype=dtype)
    t[:, :cols] = a * sign[:, None]
    t[:, cols : cols + rows] = zero
    for i in range(rows):
        t[i, cols + i] = one
    t[:, -1] = b * sign
    basis = list(range(cols, cols + rows))
    # Reduced costs; artificial columns start at zero.
    cost = np.empty(cols + rows + 1, dtype=dtype)
    cost[:] = -t.sum(axis=0)
    cost[cols : cols + rows] = zero
    cap = 10 * (rows + cols) * cols
    pivots = 0
    while True:
        entering = next((j for j in range(cols + rows) if cost[j] < -eps), None)
        if entering is None:
            break
        col = t[:, entering]
        best = None
        for i in range(rows):
            if col[i] > eps:
                ratio = t[i, -1] / col[i]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            # Phase one is bounded below by zero.
            raise IterationLimitError("phase-one objective unbounded")
        r = best[1]
        t[r] = t[r] / t[r, entering]
        for i in range(rows):
            if i != r and t[i, entering] != zero:
                t[i] = t[i] - t[i, entering] * t[r]
        cost = cost - cost[entering] * t[r]
        basis[r] = entering
        pivots += 1
        if pivots > cap:
            raise IterationLimitError(f"simplex exceeded {cap} pivots")
    w = np.array([zero] * cols, dtype=dtype)
    for i, j in enumerate(basis):
        if j < cols:
            w[j] = t[i, -1]
    y = (one - cost[cols : cols + rows]) * sign
    return w, y, -cost[-1], pivots


def hull_membership(beta, aset, mode="float", tol=DEFAULT_TOL):
    """Decide whether ``beta`` lies in the convex hull of ``aset.vertices``.

    Parameters
    ----------
    beta : array_like
        Barycentric coordinates over the simplex of ``aset``.
    aset : ApproxSet
    mode : {"float", "exact"}
        Floating point with tolerance ``tol`` on the phase-one optimum, or
        exact rational arithmetic on inputs rationalized to denominators of at
        most ``10**12`` and rescaled to sum exactly to one.
    """
    beta = np.asarray(beta, dtype=float)
    verts = np.asarray(aset.vertices, dtype=float)
    if beta.shape != (verts.shape[1],):
        raise DomainError(f"beta must have length {verts.shape[1]}, got {beta.shape}")
    if mode == "float":
        a = np.vstack([verts.T, np.ones(verts.shape[0])])
        b = np.append(beta, 1.0)
        w, y, obj, pivots = phase_one(a, b)
        inside = obj <= tol * (1.0 + np.abs(beta).sum())
        obj = float(obj)
    elif mode in ("exact", "exact-rational"):
        q = np.vectorize(rationalize, otypes=[object])
        # renormalize so every point sits exactly on sum(beta) = 1
        qv = q(verts)
        qv = qv / qv.sum(axis=1)[:, None]
        qb = q(beta)
        qb = qb / qb.sum()
        a = np.vstack([qv.T, np.array([Fraction(1)] * verts.shape[0], dtype=object)])
        b = np.append(qb, Fraction(1))
        w, y, obj, pivots = phase_one(a, b, exact=True)
        inside = obj == 0
        w = w.astype(float)
        y = y.astype(float)
        obj = float(obj)
    else:
        raise DomainError(f"mode must be 'float' or 'exact', got {mode!r}")
    if inside:
        return Membership(True, w.astype(float), None, None, obj, pivots)
    y = y.astype(float)
    return Membership(False, None, y[:-1], float(y[-1]), obj, pivots)
