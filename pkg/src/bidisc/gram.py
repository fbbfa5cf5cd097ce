"""Gram matrices of monomials in D(mu1, mu2) and the quantities built on them.

Inner products are linear in the first slot. A Gram matrix ``G`` stores
``G[i, j] = <e_i, e_j>`` for basis monomials ``e_i``, so for coefficient
vectors ``a, b`` we have ``<f, g> = a @ G @ conj(b)``.
"""
import csv
import io
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from . import kernels
from .bipoly import BiPoly
from .errors import BasisTooSmall, DomainError, NotPositiveDefinite, ValidationError
from .measures import MomentSequence


@dataclass(frozen=True)
class MonomialBasis:
    """Monomials ``z1^m z2^n`` with ``m <= n1``, ``n <= n2``, enumerated row-major."""

    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise ValidationError("basis bounds must be nonnegative")

    @property
    def size(self):
        return (self.n1 + 1) * (self.n2 + 1)

    def index(self, m, n):
        if not (0 <= m <= self.n1 and 0 <= n <= self.n2):
            raise IndexError(f"monomial {(m, n)} outside basis {(self.n1, self.n2)}")
        return m * (self.n2 + 1) + n

    def pair(self, i):
        return divmod(i, self.n2 + 1)

    def pairs(self):
        return [(m, n) for m in range(self.n1 + 1) for n in range(self.n2 + 1)]

    def window(self, a, b):
        """Indices of monomials with ``m <= n1 - a`` and ``n <= n2 - b``."""
        return np.array(
            [self.index(m, n) for m in range(self.n1 - a + 1) for n in range(self.n2 - b + 1)],
            dtype=np.intp,
        )

    def fits(self, f):
        d1, d2 = f.bidegree()
        return d1 <= self.n1 and d2 <= self.n2

    def vector(self, f):
        if not self.fits(f):
            raise BasisTooSmall(f"polynomial of bidegree {f.bidegree()} exceeds basis {(self.n1, self.n2)}")
        return f.to_vector(self.n1, self.n2)

    def poly(self, vec):
        return BiPoly.from_vector(vec, self.n1, self.n2)


@dataclass(frozen=True, eq=False)
class GramMatrix:
    basis: MonomialBasis
    entries: np.ndarray
    mu1: object = None
    mu2: object = None

    @property
    def provenance(self):
        return (getattr(self.mu1, "label", None), getattr(self.mu2, "label", None))

    @property
    def metric(self):
        """Hermitian PD ``H`` with ``<x, y> = y^H H x`` (the transpose of ``entries``)."""
        return self.entries.T

    def norm(self):
        """Spectral norm of the matrix."""
        return float(np.linalg.norm(self.entries, 2))

    def enlarged(self, n1, n2):
        if self.mu1 is None or self.mu2 is None:
            raise ValidationError("cannot enlarge a Gram matrix without its measures")
        return gram_matrix(self.mu1, self.mu2, MonomialBasis(n1, n2))

    def cholesky(self):
        return cho_factor(self.entries, lower=True)


def gram_entry(mu1, mu2, mn, pq):
    """``<z1^m z2^n, z1^p z2^q>`` in D(mu1, mu2)."""
    m, n = mn
    p, q = pq
    if min(m, n, p, q) < 0:
        raise ValidationError("monomial exponents must be nonnegative")
    if m != p and n != q:
        return 0j
    if m == p and n == q:
        return 1.0 + m * mu1.moment(0) + n * mu2.moment(0)
    if m == p:
        k = min(n, q)
        return k * mu2.moment(q - n) if k else 0j
    k = min(m, p)
    return k * mu1.moment(p - m) if k else 0j


def gram_matrix(mu1, mu2, basis, check=True):
    """Assemble the Gram matrix on ``basis`` from closed-form moments."""
    if not isinstance(basis, MonomialBasis):
        basis = MonomialBasis(*basis)
    mom1 = mu1.moments(basis.n1)
    mom2 = mu2.moments(basis.n2)
    G = kernels.gram_fill(mom1, mom2, basis.n1, basis.n2)
    if check:
        herm = np.max(np.abs(G - G.conj().T))
        if herm > 1e-13 * (1.0 + np.max(np.abs(G))):
            raise NotPositiveDefinite(f"Gram matrix is not Hermitian (defect {herm:.3e})")
        try:
            cho_factor(G, lower=True)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefinite(f"Cholesky failed for {mu1.label}, {mu2.label}: {exc}") from None
    G.setflags(write=False)
    return GramMatrix(basis, G, mu1, mu2)


def inner_product(G, f, g):
    a = G.basis.vector(f)
    b = G.basis.vector(g)
    return complex(a @ G.entries @ np.conj(b))


def norm_sq(G, f):
    val = inner_product(G, f, f)
    return float(val.real)


def torus_moment_sum(mu, p, axis):
    """``int_{T^2} |p|^2 dmu(eta) dtheta`` with ``eta`` in slot ``axis``, from moments."""
    a = p.coeffs if axis == 1 else p.coeffs.T
    d = a.shape[0] - 1
    mom = mu.moments(d)
    idx = np.arange(d + 1)
    # T[m, m'] = mu_hat(m' - m)
    T = mom[(idx[None, :] - idx[:, None]) + d]
    val = np.einsum("mn,mk,kn->", a, T, np.conj(a))
    return float(val.real)


def richter_rhs(mu1, mu2, p, k, l, G=None):
    """Right-hand side of the shifted-norm formula for ``||z1^k z2^l p||^2``."""
    if k < 0 or l < 0:
        raise ValidationError("shift exponents must be nonnegative")
    if G is None:
        d1, d2 = p.bidegree()
        G = gram_matrix(mu1, mu2, MonomialBasis(d1, d2))
    base = norm_sq(G, p)
    t1 = torus_moment_sum(mu1, p, 1) if k else 0.0
    t2 = torus_moment_sum(mu2, p, 2) if l else 0.0
    return base + k * t1 + l * t2


def _point_vector(basis, w):
    w1, w2 = w
    return np.outer(w1 ** np.arange(basis.n1 + 1), w2 ** np.arange(basis.n2 + 1)).ravel().astype(np.complex128)


def kernel_coeffs(G, w):
    """Coefficients of the truncated reproducing kernel at ``w``.

    Solves ``<z^alpha, kappa_w> = w^alpha`` for every basis monomial.
    """
    w1, w2 = w
    if abs(w1) >= 1 or abs(w2) >= 1:
        raise DomainError("kernel point must lie in the open bidisc")
    rhs = _point_vector(G.basis, (complex(w1), complex(w2)))
    sol = cho_solve(G.cholesky(), rhs)
    return np.conj(sol)


def recover_moments(G):
    """Read circle moments back off a Gram matrix.

    Every admissible ``(m, n)`` gives an estimate of each moment; the
    estimates are averaged and the worst deviation from the average is
    returned as ``consistency_residual``.
    """
    b = G.basis
    if b.n1 < 2 or b.n2 < 2:
        raise BasisTooSmall("moment recovery needs n1, n2 >= 2")
    E = G.entries
    worst = 0.0

    def settle(estimates):
        nonlocal worst
        est = np.asarray(estimates, dtype=np.complex128)
        avg = est.mean()
        worst = max(worst, float(np.max(np.abs(est - avg))))
        return avg

    seq1 = [settle([(E[b.index(m, 0), b.index(m, 0)] - 1.0) / m for m in range(1, b.n1 + 1)])]
    for d in range(1, b.n1):
        seq1.append(settle([
            E[b.index(m, n), b.index(m + d, n)] / m
            for m in range(1, b.n1 - d + 1)
            for n in range(b.n2 + 1)
        ]))
    seq2 = [settle([(E[b.index(0, n), b.index(0, n)] - 1.0) / n for n in range(1, b.n2 + 1)])]
    for d in range(1, b.n2):
        seq2.append(settle([
            E[b.index(m, n), b.index(m, n + d)] / n
            for n in range(1, b.n2 - d + 1)
            for m in range(b.n1 + 1)
        ]))
    return MomentSequence.from_nonnegative(seq1), MomentSequence.from_nonnegative(seq2), worst


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def gram_to_json(G):
    rows = [[[float(c.real), float(c.imag)] for c in row] for row in G.entries]
    return {"basis": {"n1": G.basis.n1, "n2": G.basis.n2}, "entries": rows}


def gram_to_csv(G):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["m", "n", "p", "q", "re", "im"])
    b = G.basis
    for i, j in zip(*np.nonzero(G.entries)):
        m, n = b.pair(int(i))
        p, q = b.pair(int(j))
        c = G.entries[i, j]
        writer.writerow([m, n, p, q, repr(float(c.real)), repr(float(c.imag))])
    return buf.getvalue()
