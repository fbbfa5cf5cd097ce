"""Koszul complex of ``(M_z1 - lam1, M_z2 - lam2)`` on graded polynomial windows.

Stage spaces are spans of monomials with per-stage bidegree caps::

    W0 = P(n1-1, n2-1)  --B2-->  W1 = P(n1-1, n2) + P(n1, n2-1)  --B1-->  W2 = P(n1, n2)

so multiplication by ``z_j - lam_j`` never leaves the target window and the
complex is exact linear algebra. Ranks are measured in the D(mu1, mu2)
metric of each stage: every map is conjugated by Cholesky factors of the
stage Grams before the SVD.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag, solve_triangular

from .bipoly import BiPoly, gleason_split
from .errors import BasisTooSmall, DomainError, RankAmbiguous, ValidationError
from .gram import MonomialBasis, gram_matrix, norm_sq


def multiplication_matrix(src, dst, axis, lam):
    """Matrix of ``f -> (z_axis - lam) f`` from span ``src`` into span ``dst``."""
    M = np.zeros((dst.size, src.size), dtype=np.complex128)
    for m, n in src.pairs():
        s = src.index(m, n)
        p, q = (m + 1, n) if axis == 1 else (m, n + 1)
        if p > dst.n1 or q > dst.n2:
            raise BasisTooSmall(f"z{axis} * z^({m},{n}) leaves the target window")
        M[dst.index(p, q), s] += 1.0
        M[dst.index(m, n), s] -= lam
    return M


@dataclass(frozen=True, eq=False)
class KoszulStage:
    lam: tuple
    n1: int
    n2: int
    W0: MonomialBasis
    W1a: MonomialBasis
    W1b: MonomialBasis
    W2: MonomialBasis
    B2: np.ndarray
    B1: np.ndarray
    H0: np.ndarray
    H1: np.ndarray
    H2: np.ndarray

    @property
    def dims(self):
        return (self.W0.size, self.W1a.size + self.W1b.size, self.W2.size)


def _sub_metric(full, basis, sub):
    idx = [basis.index(m, n) for m, n in sub.pairs()]
    # metric H = entries^T (see GramMatrix.metric)
    return full.entries[np.ix_(idx, idx)].T.copy()


def koszul_build(mu1, mu2, n1, n2, lam):
    if n1 < 2 or n2 < 2:
        raise ValidationError("the Koszul windows need n1, n2 >= 2")
    # lambda outside the bidisc is allowed: the maps are still defined
    l1, l2 = complex(lam[0]), complex(lam[1])
    W0 = MonomialBasis(n1 - 1, n2 - 1)
    W1a = MonomialBasis(n1 - 1, n2)
    W1b = MonomialBasis(n1, n2 - 1)
    W2 = MonomialBasis(n1, n2)
    B2 = np.vstack([
        multiplication_matrix(W0, W1a, 2, l2),
        -multiplication_matrix(W0, W1b, 1, l1),
    ])
    B1 = np.hstack([
        multiplication_matrix(W1a, W2, 1, l1),
        multiplication_matrix(W1b, W2, 2, l2),
    ])
    defect = np.max(np.abs(B1 @ B2))
    if defect > 1e-14:
        raise AssertionError(f"B1 B2 != 0 (defect {defect:.3e})")
    G = gram_matrix(mu1, mu2, W2)
    H0 = _sub_metric(G, W2, W0)
    H1 = block_diag(_sub_metric(G, W2, W1a), _sub_metric(G, W2, W1b))
    H2 = G.metric.copy()
    return KoszulStage((l1, l2), n1, n2, W0, W1a, W1b, W2, B2, B1, H0, H1, H2)


def _orthonormal_map(B, H_src, H_dst):
    # with H = L L^H, y = L^H x is an isometry onto C^n
    Ls = np.linalg.cholesky(H_src)
    Ld = np.linalg.cholesky(H_dst)
    # B_tilde = Ld^H B Ls^{-H}
    X = solve_triangular(Ls, (Ld.conj().T @ B).conj().T, lower=True).conj().T
    return X


def _rank(sv, rank_tol):
    if sv.size == 0 or sv[0] == 0:
        return 0, 0.0, None
    thr = rank_tol * sv[0]
    for s in sv:
        if thr / 10.0 < s < thr * 10.0:
            raise RankAmbiguous(s, thr)
    above = sv[sv > thr]
    return int(above.size), thr, float(above.min())


@dataclass(frozen=True)
class Cohomology:
    dims: tuple
    index: int
    sigma_min_used: float
    thresholds: tuple
    rank_tol: float

    def to_json(self, lam=None):
        out = {}
        if lam is not None:
            out["lambda"] = [[lam[0].real, lam[0].imag], [lam[1].real, lam[1].imag]]
        out.update({
            "dims": list(self.dims),
            "index": self.index,
            "sigma_min_used": self.sigma_min_used,
            "rank_tol": self.rank_tol,
        })
        return out


def cohomology(K, rank_tol=1e-8):
    s2 = np.linalg.svd(_orthonormal_map(K.B2, K.H0, K.H1), compute_uv=False)
    s1 = np.linalg.svd(_orthonormal_map(K.B1, K.H1, K.H2), compute_uv=False)
    r2, t2, m2 = _rank(s2, rank_tol)
    r1, t1, m1 = _rank(s1, rank_tol)
    d0, d1, d2 = K.dims
    h0 = d0 - r2
    h1 = (d1 - r1) - r2
    h2 = d2 - r1
    used = min(v for v in (m1, m2) if v is not None) if (m1 or m2) else 0.0
    return Cohomology((h0, h1, h2), h0 - h1 + h2, used, (t2, t1), rank_tol)


def cohomology_dims(K, rank_tol=1e-8):
    return cohomology(K, rank_tol).dims


def fredholm_index(K, rank_tol=1e-8):
    h0, h1, h2 = cohomology_dims(K, rank_tol)
    return h0 - h1 + h2


def koszul_preimage(K, h1, h2):
    """Solve ``B2 k = (h1, h2)``; returns ``(k, residual)`` with the residual in coefficient norm."""
    y = np.concatenate([K.W1a.vector(h1), K.W1b.vector(h2)])
    x, *_ = np.linalg.lstsq(K.B2, y, rcond=None)
    res = float(np.linalg.norm(K.B2 @ x - y))
    return K.W0.poly(x), res


# ---------------------------------------------------------------------------
# Gleason problem
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GleasonSolution:
    g1: BiPoly
    g2: BiPoly
    residual: float
    objective: float
    mode: str


def _split_residual(G, f, lam, g1, g2):
    l1, l2 = lam
    fl = f(l1, l2)
    v = f - fl - BiPoly([[-l1], [1.0]]) * g1 - BiPoly([[-l2, 1.0]]) * g2
    b = G.basis
    big = G.enlarged(b.n1 + 1, b.n2 + 1)
    # |<v, v>| guards against a rounding-level negative quadratic form
    return float(np.sqrt(abs(big.basis.vector(v) @ big.entries @ np.conj(big.basis.vector(v)))))


def _objective(G, g1, g2):
    return norm_sq(G, g1) + norm_sq(G, g2)


def gleason_solve(G, f, lam, mode="paper_recipe"):
    """Find ``g1, g2`` with ``f - f(lam) = (z1 - lam1) g1 + (z2 - lam2) g2``.

    ``paper_recipe`` divides out one variable at a time. ``min_norm`` returns
    the pair minimizing ``||g1||^2 + ||g2||^2`` in the Gram metric over the
    whole basis, subject to the same identity imposed coefficientwise.
    """
    l1, l2 = complex(lam[0]), complex(lam[1])
    if abs(l1) >= 1 or abs(l2) >= 1:
        raise DomainError("lambda must lie in the open bidisc")
    b = G.basis
    if not b.fits(f):
        raise BasisTooSmall(f"polynomial of bidegree {f.bidegree()} exceeds basis {(b.n1, b.n2)}")
    if mode == "paper_recipe":
        g1, g2 = gleason_split(f, (l1, l2))
    elif mode == "min_norm":
        big = MonomialBasis(b.n1 + 1, b.n2 + 1)
        C = np.hstack([
            multiplication_matrix(b, big, 1, l1),
            multiplication_matrix(b, big, 2, l2),
        ])
        rhs = big.vector(f - f(l1, l2))
        L = np.linalg.cholesky(G.metric)
        # x = L^{-H} y per block, ||x||_H = ||y||
        Linv_h = solve_triangular(L, np.eye(b.size), lower=True).conj().T
        T = block_diag(Linv_h, Linv_h)
        y, *_ = np.linalg.lstsq(C @ T, rhs, rcond=None)
        x = T @ y
        g1 = b.poly(x[: b.size])
        g2 = b.poly(x[b.size:])
    else:
        raise ValidationError(f"unknown Gleason mode {mode!r}")
    g1 = g1.padded(b.n1, b.n2) if b.fits(g1) else g1
    g2 = g2.padded(b.n1, b.n2) if b.fits(g2) else g2
    return GleasonSolution(g1, g2, _split_residual(G, f, (l1, l2), g1, g2), _objective(G, g1, g2), mode)
