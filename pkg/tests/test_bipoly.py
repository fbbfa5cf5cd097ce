import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bidisc import bipoly as bp
from bidisc.bipoly import BiPoly
from bidisc.errors import DomainError, SliceNotVanishing

z1, z2 = BiPoly.z1(), BiPoly.z2()


def test_evaluate_examples():
    assert BiPoly.constant(1)(0.3, -2) == 1
    assert (z1 * z2)(2, 3j) == pytest.approx(6j)
    assert (z1 * z1 + z2)(1j, 1) == pytest.approx(0)


def test_partials():
    assert bp.partial(z1 * z1 * z2, 1) == 2 * z1 * z2
    assert bp.partial(BiPoly.constant(4), 2) == BiPoly.zeros()
    assert bp.partial(z2 * z2 * z2, 1) == BiPoly.zeros()


def test_hardy_norm():
    assert bp.hardy_norm_sq(BiPoly.constant(1)) == 1
    assert bp.hardy_norm_sq(3 * z1) == pytest.approx(9)
    assert bp.hardy_norm_sq(z1 + z2) == pytest.approx(2)


def test_slice_profile():
    assert bp.slice_profile(z2, 0.5) == pytest.approx(0.25)
    assert bp.slice_profile(z1, 0.3) == pytest.approx(1.0)
    assert bp.slice_profile(z1 + z2, 0.9) == pytest.approx(1.81)
    with pytest.raises(DomainError):
        bp.slice_profile(z1, 1.0)


def test_slice():
    assert bp.slice(z1 * z2 + z2 * z2, 1, 0) == z2 * z2
    f = BiPoly([[1, 2], [3, 4]])
    assert bp.slice(f, 2, 0) == BiPoly([[1], [3]])
    assert bp.slice(z1 + z2, 1, 2) == 2 + z2


def test_divide_slice_examples():
    assert bp.divide_slice(z1 * z2 - z2, 1, 1) == z2
    assert bp.divide_slice(z1 * z1, 1, 0) == z1
    with pytest.raises(SliceNotVanishing):
        bp.divide_slice(z1 + z2, 1, 0)


def test_gleason_split_examples():
    g1, g2 = bp.gleason_split(z1 * z2, (0, 0))
    assert g1 == z2 and g2 == BiPoly.zeros()
    g1, g2 = bp.gleason_split(BiPoly.constant(5), (0.2, 0.1j))
    assert g1 == BiPoly.zeros() and g2 == BiPoly.zeros()
    g1, g2 = bp.gleason_split(z2 * z2, (0, 0))
    assert g1 == BiPoly.zeros() and g2 == z2


def test_json_round_trip(rng):
    f = BiPoly.random(rng, 3, 2)
    assert BiPoly.from_json(f.to_json()) == f


def test_shift_and_vector(rng):
    f = BiPoly.random(rng, 2, 2)
    g = f.shift(1, 2)
    assert g == z1 * z2 * z2 * f
    v = g.to_vector(4, 4)
    assert BiPoly.from_vector(v, 4, 4) == g


lam = st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 2), lam)
def test_division_round_trip(seed, axis, l):
    q = BiPoly.random(np.random.default_rng(seed), 3, 3)
    back = bp.divide_slice(bp.linear(l, axis) * q, axis, l)
    assert back.max_diff(q) <= 1e-13 * q.max_abs()


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**31), lam, lam)
def test_gleason_identity(seed, l1, l2):
    f = BiPoly.random(np.random.default_rng(seed), 4, 4)
    g1, g2 = bp.gleason_split(f, (l1, l2))
    rec = f(l1, l2) + bp.linear(l1, 1) * g1 + bp.linear(l2, 2) * g2
    assert rec.max_diff(f) <= 1e-12 * (1 + f.max_abs())


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31))
def test_slice_profile_monotone_and_limit(seed):
    f = BiPoly.random(np.random.default_rng(seed), 4, 4)
    prof = [bp.slice_profile(f, r) for r in (0.5, 0.9, 0.99, 0.999)]
    assert all(a <= b for a, b in zip(prof, prof[1:]))
    r = 0.999999
    n = np.arange(f.shape[1])
    gap = np.sum(np.abs(f.coeffs) ** 2 * (1 - r ** (2 * n)))
    assert abs(bp.hardy_norm_sq(f) - bp.slice_profile(f, r) - gap) <= 1e-12 * bp.hardy_norm_sq(f)
