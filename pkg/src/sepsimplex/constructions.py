"""Explicit separable decompositions built from diagonal-phase twirls.

All constructions work in the Schmidt basis of the input state, where the
pure state reads ``sum_k lambda_k |kk>``. Use
:meth:`SeparableDecomposition.rotated` to carry a certificate back to the
original product basis.
"""

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .exceptions import DimensionError, DomainError, InvariantViolation
from .linalg import DEFAULT_TOL, as_square
from .pencil import ppt_threshold
from .states import DensityMatrix, pencil_matrix

WEIGHT_FLOOR = -1e-12
WEIGHT_SUM_TOL = 1e-10
RESIDUAL_TOL = 1e-10
LEAKAGE_TOL = 1e-12


def _is_prime(k):
    if k < 2:
        return False
    f = 2
    while f * f <= k:
        if k % f == 0:
            return False
        f += 1
    return True


def mian_chowla(count):
    """First ``count`` terms of the greedy B2 sequence starting at 0."""
    seq = []
    diffs = set()
    cand = 0
    while len(seq) < count:
        new = {cand - s for s in seq}
        if len(new) == len(seq) and not new & diffs:
            seq.append(cand)
            diffs |= new
        cand += 1
    return seq


@dataclass(frozen=True)
class TwirlSchedule:
    """Phase data of the cyclic twirl ``U1 = diag(exp(i*e_j*phi))``, ``U2 = conj(U1)``."""

    n: int
    exponents: tuple
    modulus: int

    @property
    def phi(self):
        return 2.0 * np.pi / self.modulus

    def check(self):
        e = self.exponents
        if len(e) != self.n or any(x < 0 for x in e):
            raise InvariantViolation(f"bad exponent list {e}")
        if not _is_prime(self.modulus) or self.modulus <= 2 * max(e):
            raise InvariantViolation(f"modulus {self.modulus} must be a prime above {2 * max(e)}")
        diffs = [(a - b) % self.modulus for a, b in permutations(e, 2)]
        if len(set(diffs)) != len(diffs):
            raise InvariantViolation(f"exponents {e} have a repeated difference mod {self.modulus}")
        return self

    def local_unitary(self, t=1):
        return np.exp(1j * t * self.phi * np.asarray(self.exponents, dtype=float))


def sidon_exponents(n):
    """Twirl schedule from the Mian-Chowla sequence and the smallest prime above twice its maximum."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    e = mian_chowla(n)
    modulus = 2 * e[-1] + 1
    while not _is_prime(modulus):
        modulus += 1
    return TwirlSchedule(n, tuple(e), modulus).check()


def product_seed_projector(sd, signs=None):
    """Unnormalized projector on ``(sum_i s_i sqrt(l_i)|i>) (x) (sum_j sqrt(l_j)|j>)``.

    Its trace is ``(sum_k l_k)**2``.
    """
    a, b = _seed_vectors(sd.lambdas, signs)
    v = np.kron(a, b)
    return np.outer(v, v.conj())


def _seed_vectors(lambdas, signs=None):
    root = np.sqrt(np.asarray(lambdas, dtype=float))
    s = np.ones_like(root) if signs is None else np.asarray(signs, dtype=float)
    return (s * root).astype(complex), root.astype(complex)


def twirl_average(seed, sched):
    """Average of ``(U1^t (x) U2^t) seed (U1^t (x) U2^t)^dagger`` over ``t = 0..N-1``.

    Terms are accumulated in ``t`` order.
    """
    m = as_square(seed, "seed")
    n = sched.n
    if m.shape[0] != n * n:
        raise DimensionError(f"seed is {m.shape[0]}x{m.shape[0]}, schedule needs {n * n}x{n * n}")
    acc = np.zeros_like(m)
    for t in range(sched.modulus):
        u = sched.local_unitary(t)
        w = np.kron(u, u.conj())
        acc += w[:, None] * m * w.conj()[None, :]
    return acc / sched.modulus


def rho_p_closed_form(sd):
    """Normalized twirl of the product seed, written out entry by entry."""
    lam = np.asarray(sd.lambdas, dtype=float)
    n = sd.n
    out = np.diag(np.outer(lam, lam).reshape(-1)).astype(complex)
    diag_idx = np.arange(n) * (n + 1)
    out[np.ix_(diag_idx, diag_idx)] = np.outer(lam, lam)
    return DensityMatrix(n, out / np.sum(lam) ** 2)


def a_block(sd, k, r):
    """Two-qubit block on ``span{|k>,|r>}^(x)2``, separable and of unit trace.

    The off-diagonal couples ``|kk>`` with ``|rr>``; the two mixed labels sit
    on the diagonal.
    """
    n = sd.n
    if k == r or not (0 <= k < n and 0 <= r < n):
        raise DomainError(f"need distinct labels in [0, {n}), got ({k}, {r})")
    lk, lr = float(sd.lambdas[k]), float(sd.lambdas[r])
    if lk + lr == 0:
        raise DomainError(f"block ({k}, {r}) undefined: both Schmidt coefficients vanish")
    x, y = lk / (lk + lr), lr / (lk + lr)
    kk, rr, kr, rk = k * n + k, r * n + r, k * n + r, r * n + k
    out = np.zeros((n * n, n * n), dtype=complex)
    out[kk, kk] = y * y
    out[rr, rr] = x * x
    out[kk, rr] = out[rr, kk] = -x * y
    out[kr, kr] = out[rk, rk] = x * y
    return out


@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    """``target = sum_t weights[t] * |a_t><a_t| (x) |b_t><b_t|`` with unit vectors ``a_t``, ``b_t``."""

    n: int
    weights: np.ndarray
    a: np.ndarray
    b: np.ndarray
    target: DensityMatrix
    labels: tuple = field(default=())

    def __len__(self):
        return self.weights.size

    def reassemble(self):
        v = np.einsum("ti,tj->tij", self.a, self.b).reshape(len(self), -1)
        return np.einsum("t,ti,tj->ij", self.weights, v, v.conj())

    def rotated(self, basis_a, basis_b):
        """Express the certificate in the basis given by the local unitaries."""
        w = np.kron(basis_a, basis_b)
        target = DensityMatrix(self.n, w @ self.target.matrix @ w.conj().T)
        return SeparableDecomposition(
            self.n, self.weights, self.a @ np.asarray(basis_a).T, self.b @ np.asarray(basis_b).T, target, self.labels
        )


@dataclass
class VerificationReport:
    max_residual: float
    min_weight: float
    weight_sum: float
    max_leakage: float
    max_norm_defect: float
    violations: list

    @property
    def passed(self):
        return not self.violations

    def as_dict(self):
        return {
            "pass": self.passed,
            "max_residual": self.max_residual,
            "min_weight": self.min_weight,
            "weight_sum": self.weight_sum,
            "max_leakage": self.max_leakage,
            "max_norm_defect": self.max_norm_defect,
            "violations": list(self.violations),
        }


def verify_decomposition(dec, tol=RESIDUAL_TOL):
    """Check a separable certificate; failures are reported, never raised.

    ``max_leakage`` is the largest second Schmidt coefficient among the term
    vectors ``a_t (x) b_t``.
    """
    violations = []
    if len(dec) == 0:
        residual = float(np.max(np.abs(dec.target.matrix)))
        return VerificationReport(residual, 0.0, 0.0, 0.0, 0.0, ["empty decomposition"])
    residual = float(np.max(np.abs(dec.reassemble() - dec.target.matrix)))
    min_w = float(np.min(dec.weights))
    w_sum = float(np.sum(dec.weights))
    outer = np.einsum("ti,tj->tij", dec.a, dec.b)
    sv = np.linalg.svd(outer, compute_uv=False)
    leakage = float(np.max(sv[:, 1])) if sv.shape[1] > 1 else 0.0
    norm_defect = float(
        max(np.max(np.abs(np.linalg.norm(dec.a, axis=1) - 1)), np.max(np.abs(np.linalg.norm(dec.b, axis=1) - 1)))
    )
    if residual > tol:
        violations.append(f"reassembly residual {residual:.3e} exceeds {tol:g}")
    if min_w < WEIGHT_FLOOR:
        violations.append(f"negative weight {min_w:.3e}")
    if abs(w_sum - 1.0) > WEIGHT_SUM_TOL:
        violations.append(f"weights sum to {w_sum!r}")
    if leakage > LEAKAGE_TOL:
        violations.append(f"term is not a product vector (second Schmidt coefficient {leakage:.3e})")
    if norm_defect > LEAKAGE_TOL:
        violations.append(f"term vector not normalized (defect {norm_defect:.3e})")
    return VerificationReport(residual, min_w, w_sum, leakage, norm_defect, violations)


def _twirl_terms(a, b, sched, labels=None):
    """Unit product vectors of the cyclic twirl of ``|a>|b>``, one per ``t``."""
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    out_a, out_b = [], []
    for t in range(sched.modulus):
        u = sched.local_unitary(t)
        if labels is None:
            out_a.append(u * a)
            out_b.append(u.conj() * b)
        else:
            ua = a.copy()
            ub = b.copy()
            ua[labels] *= u
            ub[labels] *= u.conj()
            out_a.append(ua)
            out_b.append(ub)
    return out_a, out_b


def _basis(n, k):
    e = np.zeros(n, dtype=complex)
    e[k] = 1.0
    return e


def _finish(n, weights, avecs, bvecs, target, labels):
    keep = [i for i, w in enumerate(weights) if w != 0.0]
    dec = SeparableDecomposition(
        n,
        np.array([weights[i] for i in keep], dtype=float),
        np.array([avecs[i] for i in keep], dtype=complex).reshape(-1, n),
        np.array([bvecs[i] for i in keep], dtype=complex).reshape(-1, n),
        target,
        tuple(labels[i] for i in keep),
    )
    report = verify_decomposition(dec)
    if not report.passed:
        raise InvariantViolation("; ".join(report.violations))
    return dec


def threshold_decomposition(sd):
    """Product-state decomposition of the first PPT point on the pencil of ``sd``.

    Twirl terms carry weight ``(sum l)**2 / (N (1 + n**2 M))``; each ordered
    basis product ``|k>|r>`` carries ``(M - [k != r] l_k l_r) / (1 + n**2 M)``.
    """
    n = sd.n
    lam = np.asarray(sd.lambdas, dtype=float)
    m, alpha = ppt_threshold(sd)
    p = np.outer(sd.schmidt_vector(), sd.schmidt_vector().conj())
    target = DensityMatrix(n, pencil_matrix(p, alpha, n))
    denom = 1.0 + n * n * m
    weights, avecs, bvecs, labels = [], [], [], []
    support = int(np.count_nonzero(lam))
    seed_a, seed_b = _seed_vectors(lam)
    twirl_weight = np.sum(lam) ** 2 / denom
    if support == 1:
        weights.append(twirl_weight)
        avecs.append(seed_a / np.linalg.norm(seed_a))
        bvecs.append(seed_b / np.linalg.norm(seed_b))
        labels.append("twirl:0")
    else:
        sched = sidon_exponents(n)
        ta, tb = _twirl_terms(seed_a, seed_b, sched)
        weights += [twirl_weight / sched.modulus] * sched.modulus
        avecs += ta
        bvecs += tb
        labels += [f"twirl:{t}" for t in range(sched.modulus)]
    for k in range(n):
        for r in range(n):
            w = m if k == r else m - lam[k] * lam[r]
            weights.append(w / denom)
            avecs.append(_basis(n, k))
            bvecs.append(_basis(n, r))
            labels.append(f"diag:{k},{r}")
    return _finish(n, weights, avecs, bvecs, target, labels)


def complement_decomposition(sd):
    """Product-state decomposition of ``(I - P)/(n**2 - 1)``.

    Each block ``a_block(sd, k, r)`` is the normalized twirl of the two-label
    seed ``(sqrt(l_r)|k> - sqrt(l_k)|r>) (x) (sqrt(l_r)|k> + sqrt(l_k)|r>)``;
    the remaining mass sits on basis products ``|k>|r>``, ``k != r``.
    """
    n = sd.n
    if n < 2:
        raise DomainError("complementary face needs n >= 2")
    lam = np.asarray(sd.lambdas, dtype=float)
    scale = n * n - 1.0
    v = sd.schmidt_vector()
    target = DensityMatrix(n, (np.eye(n * n) - np.outer(v, v.conj())) / scale)
    pair_sched = sidon_exponents(2)
    weights, avecs, bvecs, labels = [], [], [], []
    for k in range(n):
        for r in range(k + 1, n):
            lk, lr = lam[k], lam[r]
            if lk + lr == 0:
                continue
            a = np.zeros(n, dtype=complex)
            b = np.zeros(n, dtype=complex)
            a[[k, r]] = np.sqrt(lr), -np.sqrt(lk)
            b[[k, r]] = np.sqrt(lr), np.sqrt(lk)
            ta, tb = _twirl_terms(a, b, pair_sched, labels=[k, r])
            weights += [(lk + lr) ** 2 / scale / pair_sched.modulus] * pair_sched.modulus
            avecs += ta
            bvecs += tb
            labels += [f"block:{k},{r}:{t}" for t in range(pair_sched.modulus)]
    for k in range(n):
        for r in range(n):
            if k != r:
                weights.append((1.0 - lam[k] * lam[r]) / scale)
                avecs.append(_basis(n, k))
                bvecs.append(_basis(n, r))
                labels.append(f"diag:{k},{r}")
    return _finish(n, weights, avecs, bvecs, target, labels)


def max_twirl_error(sd):
    """``max |twirl(seed) - (sum l)**2 rho_p|`` for the default schedule."""
    sched = sidon_exponents(sd.n)
    twirled = twirl_average(product_seed_projector(sd), sched)
    closed = np.sum(sd.lambdas) ** 2 * rho_p_closed_form(sd).matrix
    return float(np.max(np.abs(twirled - closed)))


__all__ = [
    "TwirlSchedule",
    "SeparableDecomposition",
    "VerificationReport",
    "mian_chowla",
    "sidon_exponents",
    "product_seed_projector",
    "twirl_average",
    "rho_p_closed_form",
    "a_block",
    "threshold_decomposition",
    "complement_decomposition",
    "verify_decomposition",
    "max_twirl_error",
    "DEFAULT_TOL",
]
