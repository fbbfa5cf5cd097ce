import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bidisc.errors import DomainError, ValidationError
from bidisc.measures import (
    Atoms,
    Lebesgue,
    Mixture,
    MomentSequence,
    TrigDensity,
    circle_integrate,
    measure_from_json,
    poisson,
    toeplitz_feasibility,
    total_mass,
)


def test_lebesgue_moments():
    mu = Lebesgue(1.0)
    assert mu.moment(0) == 1
    assert mu.moment(3) == 0


def test_atom_moments():
    assert Atoms(((0.0, 1.0),)).moment(7) == pytest.approx(1.0)
    assert Atoms(((math.pi, 2.0),)).moment(1) == pytest.approx(-2.0)


def test_poisson_examples():
    assert poisson(Lebesgue(1.0), 0.3 + 0.4j) == pytest.approx(1.0)
    assert poisson(Atoms(((0.0, 1.0),)), 0.5) == pytest.approx(3.0)


def test_poisson_center_is_mass(measure):
    assert poisson(measure, 0.0) == pytest.approx(total_mass(measure), abs=1e-14)


def test_poisson_outside_disc():
    with pytest.raises(DomainError):
        poisson(Lebesgue(1.0), 1.0)


def test_total_mass_examples():
    assert total_mass(Lebesgue(2.0)) == 2.0
    assert total_mass(Atoms(((0.0, 0.5), (math.pi, 0.25)))) == pytest.approx(0.75)
    assert total_mass(TrigDensity({0: 1.0, 1: 0.4})) == pytest.approx(1.0)


def test_trig_density_fills_conjugates():
    mu = TrigDensity({0: 1.0, 2: 0.3 + 0.1j})
    assert mu.moment(-2) == pytest.approx(0.3 - 0.1j)


def test_trig_density_rejects_negative_density():
    with pytest.raises(ValidationError):
        TrigDensity({0: 1.0, 1: 0.6})


def test_invalid_inputs():
    with pytest.raises(ValidationError):
        Lebesgue(-1.0)
    with pytest.raises(ValidationError):
        Atoms(((0.0, 0.0),))


def test_close_atoms_merge():
    mu = Atoms(((0.0, 0.5), (2 * math.pi, 0.5)))
    assert len(mu.atoms) == 1
    assert mu.moment(0) == pytest.approx(1.0)


def test_moment_hermitian(measure):
    for j in range(8):
        assert measure.moment(-j) == pytest.approx(np.conj(measure.moment(j)), abs=0)


def test_circle_quadrature_matches_moments(measure):
    for j in range(-6, 7):
        val = circle_integrate(measure, lambda t: np.exp(-1j * j * t), 64)
        assert abs(val - measure.moment(j)) < 1e-13


def test_toeplitz_examples():
    ms = MomentSequence.of_measure(Lebesgue(1.0), 3)
    res = toeplitz_feasibility(ms)
    assert res.status == "feasible" and res.min_eig == pytest.approx(1.0)

    res = toeplitz_feasibility(MomentSequence.of_measure(Atoms(((0.0, 1.0),)), 2))
    assert res.status == "feasible" and abs(res.min_eig) < 1e-12

    res = toeplitz_feasibility(MomentSequence.from_nonnegative([1.0, 0.8, -0.5]))
    assert res.status == "infeasible"
    assert res.min_eig < 0


def test_json_round_trip(measure):
    back = measure_from_json(measure.to_json())
    assert np.allclose(back.moments(5), measure.moments(5), atol=1e-15)


def test_json_rejects_unknown_type():
    with pytest.raises(ValidationError):
        measure_from_json({"type": "gaussian"})


def test_mixture_sums():
    mu = Mixture((Lebesgue(0.5), Atoms(((math.pi, 0.5),))))
    assert mu.moment(1) == pytest.approx(-0.5)
    assert total_mass(mu) == pytest.approx(1.0)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.floats(0, 2 * math.pi), st.floats(0.01, 3.0)), min_size=1, max_size=4),
    st.floats(0, 0.99),
    st.floats(0, 2 * math.pi),
)
def test_poisson_lower_bound(atoms, r, a):
    mu = Atoms(tuple(atoms))
    w = r * cmath.exp(1j * a)
    lb = total_mass(mu) * (1 - r * r) / 4
    assert poisson(mu, w) - lb >= -1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 0.49), st.floats(0, 2 * math.pi), st.floats(0, 0.99), st.floats(0, 2 * math.pi))
def test_trig_poisson_nonnegative(c, phase, r, a):
    mu = TrigDensity({0: 1.0, 1: c * cmath.exp(1j * phase)})
    assert poisson(mu, r * cmath.exp(1j * a)) >= -1e-12
