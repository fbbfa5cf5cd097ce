import numpy as np
import pytest

from bidisc.errors import InconsistentNormalization, WindowEmpty
from bidisc.gram import MonomialBasis, gram_matrix
from bidisc.measures import Lebesgue
from bidisc.toral import (
    adjoint_kernel_check,
    build_pair,
    moment_identity_residual,
    reconstruct_gram_from_orbit,
    restrict_orbit,
    toral_residual,
    verify_model_hypotheses,
    wandering_check,
)

from conftest import MEASURES

ZERO = Lebesgue(0.0)
LEB = Lebesgue(1.0)


def test_pair_structure():
    P = build_pair(MEASURES["atoms2"], LEB, 2, 2)
    b = P.basis
    for m in range(2):
        for n in range(3):
            assert P.A1[b.index(m + 1, n), b.index(m, n)] == 1
    assert P.A1.sum() == 6
    assert not np.any(P.A1 @ P.A2 - P.A2 @ P.A1)
    assert not np.any(np.linalg.matrix_power(P.A1, 3))


def test_toral_hardy():
    P = build_pair(ZERO, ZERO, 6, 6)
    for i in (1, 2):
        for j in (1, 2):
            assert toral_residual(P, i, j) <= 1e-13


def test_toral_catalog(measure):
    P = build_pair(measure, MEASURES["mixture"], 8, 8)
    for i in (1, 2):
        for j in (1, 2):
            assert toral_residual(P, i, j) <= 1e-12 * P.G.norm()


def test_toral_detects_corruption():
    P = build_pair(LEB, LEB, 6, 6)
    E = np.array(P.G.entries)
    k = P.basis.index(2, 2)
    E[k, k] += 0.1
    assert toral_residual(P.with_entries(E), 1, 2) >= 1e-2


def test_toral_needs_window():
    P = build_pair(LEB, LEB, 2, 2)
    object.__setattr__(P, "basis", MonomialBasis(1, 2))
    with pytest.raises(WindowEmpty):
        toral_residual(P, 1, 1)


def test_moment_identity():
    P = build_pair(LEB, LEB, 8, 8)
    assert moment_identity_residual(P, 0, 0) == 0
    assert moment_identity_residual(P, 1, 0) == 0
    assert moment_identity_residual(P, 2, 1) <= 1e-12
    with pytest.raises(WindowEmpty):
        moment_identity_residual(P, 9, 0)


def test_moment_identity_catalog(measure):
    P = build_pair(measure, MEASURES["atoms2"], 8, 8)
    for k in range(5):
        for l in range(5 - k):
            assert moment_identity_residual(P, k, l) <= 1e-12


def test_structural_zeros(measure):
    P = build_pair(measure, MEASURES["trig0.4"], 6, 6)
    assert wandering_check(P) == 0.0
    assert adjoint_kernel_check(P, 1) == 0.0
    assert adjoint_kernel_check(P, 2) == 0.0


def test_orbit_reconstruction(measure):
    G = gram_matrix(measure, MEASURES["mixture"], MonomialBasis(5, 4))
    d1, d2 = restrict_orbit(G)
    assert np.max(np.abs(reconstruct_gram_from_orbit(d1, d2) - G.entries)) <= 1e-12


def test_orbit_reconstruction_diagonal_case():
    d1 = np.diag([1.0, 2.0])
    d2 = np.diag([1.0, 3.0])
    rec = reconstruct_gram_from_orbit(d1, d2)
    assert rec[3, 3] == 4
    assert np.array_equal(reconstruct_gram_from_orbit(np.eye(3), np.eye(3)), np.eye(9))


def test_orbit_inconsistent_normalization():
    with pytest.raises(InconsistentNormalization):
        reconstruct_gram_from_orbit(np.eye(2), 2 * np.eye(2))


def test_verify_truncated_pair_passes():
    P = build_pair(MEASURES["trig0.4"], MEASURES["atom0"], 4, 4)
    f0 = np.zeros(P.basis.size)
    f0[0] = 1
    rows = verify_model_hypotheses(P.A1, P.A2, f0, P.G.entries, window=P.window(2, 2))
    assert all(r.passed for r in rows if r.passed is not None)
    assert [r.passed for r in rows if r.name == "analytic"] == [None]
    assert any(r.paper_anchor == "Eq. C1" for r in rows)


def test_verify_same_shift_fails_wandering():
    S = np.diag(np.ones(4), -1)
    f0 = np.zeros(5)
    f0[0] = 1
    rows = {r.name: r for r in verify_model_hypotheses(S, S, f0)}
    assert rows["orbit orthogonality (z1 powers)"].passed is False


def test_verify_kernel_failure():
    S = np.diag(np.ones(4), -1)
    f0 = np.zeros(5)
    f0[1] = 1
    rows = {r.name: r for r in verify_model_hypotheses(S, np.zeros((5, 5)), f0)}
    assert rows["f0 in ker T1*"].passed is False
