import numpy as np
import pytest

from bidisc import kernels
from bidisc._accel import HAVE_NUMBA, backend_name
from bidisc.quadrature import _gl01

from conftest import MEASURES

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def test_backend_name():
    assert backend_name() in ("numba", "numpy")


@needs_numba
@pytest.mark.parametrize("n1,n2", [(0, 0), (2, 5), (6, 6)])
def test_gram_fill_backends_agree(n1, n2):
    m1 = MEASURES["mixture"].moments(n1)
    m2 = MEASURES["trig0.4"].moments(n2)
    a = kernels.gram_fill_numba(m1, m2, n1, n2)
    b = kernels.gram_fill_numpy(m1, m2, n1, n2)
    assert np.array_equal(a, b)


@needs_numba
def test_disc_moments_backends_agree():
    rho, w = _gl01(16)
    phi = 2 * np.pi * np.arange(64) / 64
    P = MEASURES["trig0.4"].poisson(rho[:, None] * np.exp(1j * phi)[None, :])
    a = kernels.disc_moments_numba(rho, w, P, 6)
    b = kernels.disc_moments_numpy(rho, w, P, 6)
    assert np.allclose(a, b, atol=1e-15)


@needs_numba
def test_atom_series_backends_agree():
    a = kernels.atom_series_numba(8, 1000)
    b = kernels.atom_series_numpy(8, 1000)
    assert np.allclose(a, b, rtol=1e-14)
    # telescoping: exact value 1/(N0+1) minus 1/(N0+S+1)
    n0 = np.arange(9)
    assert np.allclose(a, 1 / (n0 + 1) - 1 / (n0 + 1001), rtol=1e-13)


def test_disc_moments_lebesgue_exact():
    rho, w = _gl01(12)
    P = np.ones((12, 16))
    D = kernels.disc_moments(rho, w, P, 3)
    # int_D |z|^{2a} dA = 1/(a+1); off-diagonal entries vanish
    assert np.allclose(D, np.diag(1 / np.arange(1, 5)), atol=1e-14)
