import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bidisc.bipoly import BiPoly
from bidisc.errors import BasisTooSmall, DomainError
from bidisc.gram import (
    GramMatrix,
    MonomialBasis,
    gram_entry,
    gram_matrix,
    gram_to_csv,
    inner_product,
    kernel_coeffs,
    norm_sq,
    recover_moments,
    richter_rhs,
)
from bidisc.bipoly import hardy_norm_sq
from bidisc.measures import Atoms, Lebesgue

from conftest import CATALOG, MEASURES

ZERO = Lebesgue(0.0)
LEB = Lebesgue(1.0)
ATOM = Atoms(((0.0, 1.0),))
z1, z2 = BiPoly.z1(), BiPoly.z2()


def test_basis_indexing():
    b = MonomialBasis(2, 3)
    assert b.size == 12
    assert b.index(1, 2) == 6
    assert b.pair(6) == (1, 2)
    assert list(b.window(2, 3)) == [0]


def test_gram_entry_examples():
    assert gram_entry(LEB, LEB, (2, 3), (2, 3)) == 6
    assert gram_entry(ATOM, LEB, (1, 2), (3, 5)) == 0
    assert gram_entry(ATOM, ZERO, (2, 0), (3, 0)) == pytest.approx(2)


def test_gram_examples():
    assert np.array_equal(gram_matrix(ZERO, ZERO, MonomialBasis(3, 2)).entries, np.eye(12))
    b = MonomialBasis(3, 3)
    G = gram_matrix(LEB, LEB, b)
    assert np.allclose(G.entries, np.diag([1 + m + n for m, n in b.pairs()]))
    G = gram_matrix(ATOM, ZERO, MonomialBasis(2, 0))
    assert np.allclose(G.entries, [[1, 0, 0], [0, 2, 1], [0, 1, 3]])


def test_gram_matches_entrywise(measure):
    b = MonomialBasis(4, 3)
    mu2 = MEASURES["mixture"]
    G = gram_matrix(measure, mu2, b)
    for i, s in enumerate(b.pairs()):
        for j, t in enumerate(b.pairs()):
            assert G.entries[i, j] == pytest.approx(gram_entry(measure, mu2, s, t), abs=1e-15)


def test_inner_product_examples():
    G = gram_matrix(LEB, LEB, MonomialBasis(2, 2))
    assert inner_product(G, BiPoly.constant(1), BiPoly.constant(1)) == 1
    assert inner_product(G, z1, z2) == 0
    assert norm_sq(G, z1 + z2) == pytest.approx(4)
    with pytest.raises(BasisTooSmall):
        norm_sq(G, z1 * z1 * z1)


def test_richter_examples():
    one = BiPoly.constant(1)
    assert richter_rhs(ATOM, ZERO, one, 1, 0) == pytest.approx(2)
    assert richter_rhs(LEB, LEB, one, 0, 0) == pytest.approx(1)
    assert richter_rhs(LEB, LEB, z2, 2, 0) == pytest.approx(4)


@pytest.mark.parametrize("name", [n for n, _ in CATALOG])
def test_hardy_dominance(name, rng):
    G = gram_matrix(MEASURES[name], MEASURES["trig0.4"], MonomialBasis(5, 5))
    assert np.linalg.eigvalsh(G.entries - np.eye(36))[0] >= -1e-10
    f = BiPoly.random(rng, 5, 5)
    assert norm_sq(G, f) >= hardy_norm_sq(f) - 1e-12


def test_kernel_at_origin(measure):
    G = gram_matrix(measure, MEASURES["atoms2"], MonomialBasis(5, 5))
    c = kernel_coeffs(G, (0, 0))
    e0 = np.zeros(36)
    e0[0] = 1
    assert np.max(np.abs(c - e0)) <= 1e-12


def test_kernel_hardy_is_cauchy():
    w = (0.3 - 0.2j, 0.5j)
    G = gram_matrix(ZERO, ZERO, MonomialBasis(3, 3))
    c = kernel_coeffs(G, w)
    expect = np.conj(np.outer(w[0] ** np.arange(4), w[1] ** np.arange(4)).ravel())
    assert np.allclose(c, expect, atol=1e-15)


def test_kernel_reproduces(measure, rng):
    G = gram_matrix(measure, MEASURES["lebesgue0.5"], MonomialBasis(5, 5))
    for _ in range(5):
        w = (0.9 * rng.random() * np.exp(2j * np.pi * rng.random()), 0.9 * rng.random() * np.exp(2j * np.pi * rng.random()))
        f = BiPoly.random(rng, 5, 5)
        val = G.basis.vector(f) @ G.entries @ np.conj(kernel_coeffs(G, w))
        assert abs(val - f(*w)) <= 1e-10 * (1 + math.sqrt(norm_sq(G, f)))


def test_kernel_outside_disc():
    with pytest.raises(DomainError):
        kernel_coeffs(gram_matrix(ZERO, ZERO, MonomialBasis(1, 1)), (1.0, 0))


def test_recover_moments_examples():
    m1, m2, res = recover_moments(gram_matrix(LEB, LEB, MonomialBasis(4, 4)))
    assert np.allclose(m1.values, LEB.moments(m1.J), atol=1e-12)
    assert res <= 1e-12
    mu = Atoms(((math.pi / 3, 0.5),))
    m1, m2, res = recover_moments(gram_matrix(mu, ZERO, MonomialBasis(4, 4)))
    d = np.arange(-m1.J, m1.J + 1)
    assert np.allclose(m1.values, 0.5 * np.exp(-1j * d * math.pi / 3), atol=1e-12)
    assert np.allclose(m2.values, 0, atol=1e-15)
    assert res <= 1e-12


def test_recover_moments_detects_perturbation():
    G = gram_matrix(LEB, MEASURES["trig0.4"], MonomialBasis(4, 4))
    E = np.array(G.entries)
    b = G.basis
    i, j = b.index(2, 1), b.index(3, 1)
    E[i, j] += 1e-3
    E[j, i] += 1e-3
    _, _, res = recover_moments(GramMatrix(b, E))
    assert res >= 1e-4


def test_recover_moments_needs_room():
    with pytest.raises(BasisTooSmall):
        recover_moments(gram_matrix(LEB, LEB, MonomialBasis(1, 3)))


def test_csv_lists_nonzero_entries():
    text = gram_to_csv(gram_matrix(ATOM, ZERO, MonomialBasis(2, 0)))
    lines = text.strip().splitlines()
    assert lines[0] == "m,n,p,q,re,im"
    assert len(lines) == 1 + 5


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from([n for n, _ in CATALOG]), st.sampled_from([n for n, _ in CATALOG]),
       st.integers(0, 3), st.integers(0, 3))
def test_richter_identity(seed, a, b, k, l):
    mu1, mu2 = MEASURES[a], MEASURES[b]
    p = BiPoly.random(np.random.default_rng(seed), 4, 4)
    G = gram_matrix(mu1, mu2, MonomialBasis(7, 7))
    lhs = norm_sq(G, p.shift(k, l))
    rhs = richter_rhs(mu1, mu2, p, k, l)
    assert abs(lhs - rhs) <= 1e-10 * abs(rhs)
