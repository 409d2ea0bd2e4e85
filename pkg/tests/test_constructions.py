from itertools import permutations

import numpy as np
import pytest

from sepsimplex.constructions import (
    SeparableDecomposition,
    a_block,
    complement_decomposition,
    mian_chowla,
    product_seed_projector,
    rho_p_closed_form,
    sidon_exponents,
    threshold_decomposition,
    twirl_average,
    verify_decomposition,
)
from sepsimplex.exceptions import DimensionError, DomainError
from sepsimplex.linalg import min_pt_eigenvalue, schmidt_coefficients
from sepsimplex.pencil import SchmidtDecomposition, ppt_threshold, schmidt_decompose
from sepsimplex.states import DensityMatrix, PureState, is_ppt, pencil_state

from conftest import random_lambdas, random_state

BELL = SchmidtDecomposition.from_lambdas([1, 1])
PRODUCT = SchmidtDecomposition.from_lambdas([1, 0])
UNEVEN = SchmidtDecomposition.from_lambdas(np.sqrt([0.5, 0.3, 0.2]))


def differences_distinct(exponents, modulus):
    seen = set()
    for a, b in permutations(exponents, 2):
        r = (a - b) % modulus
        if r in seen:
            return False
        seen.add(r)
    return True


@pytest.mark.parametrize(
    "n, exponents, modulus", [(2, (0, 1), 3), (3, (0, 1, 3), 7), (4, (0, 1, 3, 7), 17)]
)
def test_sidon_schedule_examples(n, exponents, modulus):
    sched = sidon_exponents(n)
    assert sched.exponents == exponents
    assert sched.modulus == modulus
    assert differences_distinct(exponents, modulus)


def test_mian_chowla_prefix():
    assert mian_chowla(8) == [0, 1, 3, 7, 12, 20, 30, 44]


@pytest.mark.parametrize("n", range(1, 9))
def test_sidon_property_exhaustive(n):
    sched = sidon_exponents(n)
    assert differences_distinct(sched.exponents, sched.modulus)
    assert sched.modulus > 2 * max(sched.exponents)
    assert all(sched.modulus % f for f in range(2, sched.modulus))


def test_literal_spacing_pattern_can_repeat_differences():
    # k = d = 1 gives 0, 1, 2 whose differences repeat
    assert not differences_distinct((0, 1, 2), 7)


def test_product_seed_examples():
    np.testing.assert_allclose(product_seed_projector(PRODUCT), np.diag([1, 0, 0, 0]), atol=1e-15)
    seed = product_seed_projector(BELL)
    np.testing.assert_allclose(seed, np.full((4, 4), 0.5), atol=1e-15)
    assert np.trace(seed).real == pytest.approx(2.0)


def test_product_seed_trace_identity(rng):
    for n in (2, 3, 4):
        sd = random_lambdas(n, rng)
        assert np.trace(product_seed_projector(sd)).real == pytest.approx(np.sum(sd.lambdas) ** 2, abs=1e-13)


def test_twirl_of_diagonal_seed_is_unchanged():
    seed = np.diag([1.0, 0, 0, 0])
    np.testing.assert_allclose(twirl_average(seed, sidon_exponents(2)), seed, atol=1e-15)


def test_twirl_of_bell_seed():
    out = twirl_average(product_seed_projector(BELL), sidon_exponents(2))
    expected = np.diag([0.5] * 4)
    expected[0, 3] = expected[3, 0] = 0.5
    np.testing.assert_allclose(out, expected, atol=1e-15)
    np.testing.assert_allclose(out, 2 * rho_p_closed_form(BELL).matrix, atol=1e-15)


def test_twirl_uneven_n3():
    out = twirl_average(product_seed_projector(UNEVEN), sidon_exponents(3))
    np.testing.assert_allclose(out, np.sum(UNEVEN.lambdas) ** 2 * rho_p_closed_form(UNEVEN).matrix, atol=1e-12)


def test_twirl_dimension_mismatch():
    with pytest.raises(DimensionError):
        twirl_average(np.eye(9), sidon_exponents(2))


def test_rho_p_examples():
    np.testing.assert_allclose(rho_p_closed_form(PRODUCT).matrix, np.diag([1, 0, 0, 0]), atol=1e-15)
    m = rho_p_closed_form(BELL).matrix
    for i, j in [(0, 0), (0, 3), (3, 0), (3, 3), (1, 1), (2, 2)]:
        assert m[i, j] == pytest.approx(0.25)
    assert np.count_nonzero(np.abs(m) > 1e-15) == 6


def rho_p_by_loops(lam):
    n = len(lam)
    out = np.zeros((n * n, n * n))
    for i in range(n):
        for m in range(n):
            out[i * n + i, m * n + m] += lam[i] * lam[m]
        for k in range(n):
            if i != k:
                out[i * n + k, i * n + k] += lam[i] * lam[k]
    return out / np.sum(lam) ** 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_twirl_identity_random_spectra(n, rng):
    sched = sidon_exponents(n)
    for _ in range(20):
        sd = random_lambdas(n, rng)
        closed = rho_p_closed_form(sd).matrix
        np.testing.assert_allclose(closed, rho_p_by_loops(sd.lambdas), atol=1e-15)
        assert abs(np.trace(closed) - 1) < 1e-14
        out = twirl_average(product_seed_projector(sd), sched)
        assert np.max(np.abs(out - np.sum(sd.lambdas) ** 2 * closed)) <= 1e-12


def test_threshold_decomposition_bell():
    dec = threshold_decomposition(BELL)
    twirl = [w for w, lab in zip(dec.weights, dec.labels) if lab.startswith("twirl")]
    diag = {lab: w for w, lab in zip(dec.weights, dec.labels) if lab.startswith("diag")}
    np.testing.assert_allclose(twirl, [2 / 9] * 3, atol=1e-15)
    assert diag == pytest.approx({"diag:0,0": 1 / 6, "diag:1,1": 1 / 6})
    assert dec.weights.sum() == pytest.approx(1.0, abs=1e-15)
    p = PureState.maximally_entangled(2).projector()
    assert dec.target.allclose(pencil_state(p, 1 / 3), 1e-15)
    assert verify_decomposition(dec).passed


def test_threshold_decomposition_product():
    dec = threshold_decomposition(PRODUCT)
    assert len(dec) == 1
    assert dec.weights[0] == 1.0
    np.testing.assert_allclose(np.abs(dec.a[0]), [1, 0])
    np.testing.assert_allclose(np.abs(dec.b[0]), [1, 0])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_threshold_target_on_ppt_boundary(n, rng):
    for _ in range(5):
        sd = random_lambdas(n, rng)
        dec = threshold_decomposition(sd)
        ok, lo = is_ppt(dec.target)
        assert ok and lo >= -1e-10 and lo <= 1e-8


def test_threshold_weight_identity(rng):
    for n in (2, 3, 4):
        lam = random_lambdas(n, rng).lambdas
        m = lam[0] * lam[1]
        off = sum(lam[k] * lam[r] for k in range(n) for r in range(n) if k != r)
        assert np.sum(lam) ** 2 + n * n * m - off == pytest.approx(1 + n * n * m, abs=1e-13)


def test_a_block_bell():
    out = a_block(BELL, 0, 1)
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = expected[1, 1] = expected[2, 2] = 0.25
    expected[0, 3] = expected[3, 0] = -0.25
    np.testing.assert_allclose(out, expected, atol=1e-15)
    assert abs(np.linalg.eigvalsh(out)[0]) < 1e-15
    assert abs(min_pt_eigenvalue(out)) < 1e-15


def test_a_block_degenerate_limit():
    out = a_block(PRODUCT, 1, 0)
    np.testing.assert_allclose(out, np.diag([0, 0, 0, 1.0]), atol=1e-15)


def test_a_block_requires_support():
    with pytest.raises(DomainError):
        a_block(SchmidtDecomposition.from_lambdas([1, 0, 0]), 1, 2)
    with pytest.raises(DomainError):
        a_block(BELL, 1, 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_a_block_trace_psd_ppt(n, rng):
    for _ in range(5):
        sd = random_lambdas(n, rng)
        for k in range(n):
            for r in range(k + 1, n):
                blk = a_block(sd, k, r)
                assert np.trace(blk).real == pytest.approx(1.0, abs=1e-14)
                assert np.linalg.eigvalsh(blk)[0] >= -1e-12
                assert min_pt_eigenvalue(blk) >= -1e-12


def test_complement_weight_identity(rng):
    for n in (2, 3, 4):
        lam = random_lambdas(n, rng).lambdas
        total = sum((lam[k] + lam[r]) ** 2 for k in range(n) for r in range(k + 1, n))
        total += sum(1 - lam[k] * lam[r] for k in range(n) for r in range(n) if k != r)
        assert total == pytest.approx(n * n - 1, abs=1e-12)


def test_complement_bell():
    dec = complement_decomposition(BELL)
    p = PureState.maximally_entangled(2).projector().matrix
    assert dec.target.allclose((np.eye(4) - p) / 3, 1e-15)
    assert verify_decomposition(dec).max_residual <= 1e-10


@pytest.mark.parametrize("builder", [threshold_decomposition, complement_decomposition])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_decompositions_reassemble(builder, n, rng):
    for _ in range(5):
        dec = builder(random_lambdas(n, rng))
        rep = verify_decomposition(dec)
        assert rep.passed, rep.violations
        assert rep.min_weight >= 0
        for a, b in zip(dec.a, dec.b):
            assert schmidt_coefficients(np.kron(a, b), n)[1] <= 1e-12


@pytest.mark.parametrize("n", [2, 3])
def test_certificates_in_original_basis(n, rng):
    psi = random_state(n, rng)
    sd = schmidt_decompose(psi)
    p = psi.projector()
    alpha = ppt_threshold(sd)[1]
    dec = threshold_decomposition(sd).rotated(sd.basis_a, sd.basis_b)
    assert dec.target.allclose(pencil_state(p, alpha), 1e-12)
    assert verify_decomposition(dec).passed
    comp = complement_decomposition(sd).rotated(sd.basis_a, sd.basis_b)
    assert comp.target.allclose((np.eye(n * n) - p.matrix) / (n * n - 1), 1e-12)
    assert verify_decomposition(comp).passed


def test_verify_flags_negative_weight():
    dec = threshold_decomposition(BELL)
    w = dec.weights.copy()
    w[1] += w[0] + 0.1
    w[0] = -0.1
    rep = verify_decomposition(SeparableDecomposition(dec.n, w, dec.a, dec.b, dec.target))
    assert not rep.passed
    assert any("negative weight" in v for v in rep.violations)


def test_verify_flags_perturbed_target():
    dec = threshold_decomposition(BELL)
    m = dec.target.matrix.copy()
    m[0, 0] += 1e-3
    rep = verify_decomposition(SeparableDecomposition(dec.n, dec.weights, dec.a, dec.b, DensityMatrix(2, m)))
    assert not rep.passed
    assert rep.max_residual == pytest.approx(1e-3, rel=1e-9)


def test_verify_flags_entangled_term():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    dec = SeparableDecomposition(
        2, np.array([1.0]), np.array([[1, 0j]]), np.array([[1, 0j]]), DensityMatrix(2, np.outer(bell, bell))
    )
    assert not verify_decomposition(dec).passed
