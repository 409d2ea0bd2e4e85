"""JSON wire formats.

Complex numbers are ``[re, im]`` pairs. Floats are written with Python's
shortest round-tripping repr (at most 17 significant digits), so every value
reads back bit-exactly.
"""

import json
import math

import numpy as np

from .constructions import SeparableDecomposition
from .exceptions import InputError
from .geometry.simplex import ApproxSet, approx_vertices, simplex_from_projectors, simplex_from_vectors
from .pencil import SchmidtDecomposition
from .states import DensityMatrix, PureState


class FormatError(InputError):
    """Malformed document; the message names the offending field."""


def _num(x):
    x = float(x)
    if not math.isfinite(x):
        return None
    return x


def complex_list(v):
    return [[_num(z.real), _num(z.imag)] for z in np.asarray(v, dtype=complex).reshape(-1)]


def _pairs(obj, path, length=None):
    try:
        arr = np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{path}: expected a list of [re, im] pairs ({exc})") from None
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FormatError(f"{path}: expected a list of [re, im] pairs, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise FormatError(f"{path}: expected {length} entries, got {arr.shape[0]}")
    return arr[:, 0] + 1j * arr[:, 1]


def _field(doc, key, path):
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected an object")
    if key not in doc:
        raise FormatError(f"{path}: missing field {key!r}")
    return doc[key]


def _int(doc, key, path):
    v = _field(doc, key, path)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise FormatError(f"{path}.{key}: expected a positive integer, got {v!r}")
    return v


def matrix_to_json(m):
    m = np.asarray(m, dtype=complex)
    return {"dim": m.shape[0], "entries": [complex_list(row) for row in m]}


def matrix_from_json(doc, path="$"):
    d = _int(doc, "dim", path)
    rows = _field(doc, "entries", path)
    if not isinstance(rows, list) or len(rows) != d:
        raise FormatError(f"{path}.entries: expected {d} rows")
    return np.array([_pairs(r, f"{path}.entries[{i}]", d) for i, r in enumerate(rows)])


def state_to_json(psi):
    return {"n": psi.n, "amplitudes": complex_list(psi.amplitudes)}


def state_from_json(doc, path="$"):
    n = _int(doc, "n", path)
    return PureState(n, _pairs(_field(doc, "amplitudes", path), f"{path}.amplitudes", n * n))


def schmidt_to_json(sd):
    return {
        "n": sd.n,
        "lambdas": [_num(x) for x in sd.lambdas],
        "basis_a": matrix_to_json(sd.basis_a),
        "basis_b": matrix_to_json(sd.basis_b),
    }


def schmidt_from_json(doc, path="$"):
    n = _int(doc, "n", path)
    lam = np.array(_field(doc, "lambdas", path), dtype=float)
    return SchmidtDecomposition(
        n, lam, matrix_from_json(doc["basis_a"], f"{path}.basis_a"), matrix_from_json(doc["basis_b"], f"{path}.basis_b")
    )


def decomposition_to_json(dec):
    return {
        "n": dec.n,
        "target": matrix_to_json(dec.target.matrix),
        "terms": [
            {"w": _num(w), "a": complex_list(a), "b": complex_list(b)} for w, a, b in zip(dec.weights, dec.a, dec.b)
        ],
    }


def decomposition_from_json(doc, path="$"):
    n = _int(doc, "n", path)
    target = matrix_from_json(_field(doc, "target", path), f"{path}.target")
    if target.shape[0] != n * n:
        raise FormatError(f"{path}.target: dimension {target.shape[0]} does not match n={n}")
    terms = _field(doc, "terms", path)
    if not isinstance(terms, list):
        raise FormatError(f"{path}.terms: expected a list")
    w, a, b = [], [], []
    for i, t in enumerate(terms):
        p = f"{path}.terms[{i}]"
        wi = _field(t, "w", p)
        if not isinstance(wi, (int, float)) or isinstance(wi, bool):
            raise FormatError(f"{p}.w: expected a number, got {wi!r}")
        w.append(float(wi))
        a.append(_pairs(_field(t, "a", p), f"{p}.a", n))
        b.append(_pairs(_field(t, "b", p), f"{p}.b", n))
    return SeparableDecomposition(
        n,
        np.array(w, dtype=float),
        np.array(a, dtype=complex).reshape(-1, n),
        np.array(b, dtype=complex).reshape(-1, n),
        DensityMatrix(n, target),
    )


def simplex_to_json(s):
    if s.vectors is not None:
        return {"n": s.n, "basis_vectors": [complex_list(v) for v in s.vectors]}
    return {"n": s.n, "projectors": [matrix_to_json(p.matrix) for p in s.projectors]}


def simplex_from_json(doc, path="$", tol=1e-9):
    n = _int(doc, "n", path)
    if "basis_vectors" in doc:
        vecs = doc["basis_vectors"]
        if not isinstance(vecs, list):
            raise FormatError(f"{path}.basis_vectors: expected a list")
        rows = []
        for i, v in enumerate(vecs):
            if isinstance(v, dict):
                v = _field(v, "amplitudes", f"{path}.basis_vectors[{i}]")
            rows.append(_pairs(v, f"{path}.basis_vectors[{i}]", n * n))
        return simplex_from_vectors(rows, n, tol)
    if "projectors" in doc:
        ps = [matrix_from_json(p, f"{path}.projectors[{i}]") for i, p in enumerate(doc["projectors"])]
        return simplex_from_projectors(ps, n, tol)
    raise FormatError(f"{path}: need 'basis_vectors' or 'projectors'")


def approx_set_to_json(aset):
    return {
        "n": aset.n,
        "alphas": [_num(a) for a in aset.alphas],
        "simplex": simplex_to_json(aset.simplex),
        "vertices": [[_num(x) for x in row] for row in aset.vertices],
    }


def approx_set_from_json(doc, path="$", tol=1e-9):
    s = simplex_from_json(_field(doc, "simplex", path), f"{path}.simplex", tol)
    alphas = np.array(_field(doc, "alphas", path), dtype=float)
    if alphas.shape != (s.size,):
        raise FormatError(f"{path}.alphas: expected {s.size} values")
    if np.any(alphas <= 0) or np.any(alphas > 1):
        raise FormatError(f"{path}.alphas: values must lie in (0, 1]")
    v = approx_vertices(alphas, s.n)
    if "vertices" in doc:
        stored = np.array(doc["vertices"], dtype=float)
        if stored.shape != v.shape or np.max(np.abs(stored - v)) > 1e-12:
            raise FormatError(f"{path}.vertices: inconsistent with alphas")
    alphas.setflags(write=False)
    v.setflags(write=False)
    return ApproxSet(s, alphas, v)


def dumps(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def load_path(path):
    """Parse a JSON file, mapping syntax errors to :class:`FormatError` with line and column."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
