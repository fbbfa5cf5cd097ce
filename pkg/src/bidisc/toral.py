"""The coordinate multiplication pair on a truncated monomial basis.

Identities involving adjoints are evaluated as Gram quadratic forms
``<A u, B v>`` over basis vectors ``u, v`` taken from a window where no
degree clipping occurs. On such a window the identities hold exactly, so any
residual above rounding level is a bug or a corrupted input, never a
truncation artifact. The pair itself is never a toral 2-isometry on the
whole truncated space.
"""
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentNormalization, ValidationError, WindowEmpty
from .gram import GramMatrix, MonomialBasis, gram_matrix
from .report import CheckRow


def shift_matrix(basis, axis, target=None):
    """0/1 matrix of multiplication by ``z_axis`` from ``basis`` into ``target``.

    With ``target`` omitted the image is compressed back into ``basis``:
    monomials pushed past the top degree are dropped.
    """
    target = basis if target is None else target
    A = np.zeros((target.size, basis.size))
    for m, n in basis.pairs():
        p, q = (m + 1, n) if axis == 1 else (m, n + 1)
        if p <= target.n1 and q <= target.n2:
            A[target.index(p, n if axis == 1 else q), basis.index(m, n)] = 1.0
    return A


@dataclass(frozen=True, eq=False)
class TruncatedPair:
    basis: MonomialBasis
    A1: np.ndarray
    A2: np.ndarray
    G: GramMatrix

    def window(self, a, b):
        if a > self.basis.n1 or b > self.basis.n2:
            raise WindowEmpty(f"window W({a},{b}) is empty for basis {(self.basis.n1, self.basis.n2)}")
        return self.basis.window(a, b)

    def with_entries(self, entries):
        """Same shifts, a different (for example deliberately corrupted) Gram matrix."""
        entries = np.array(entries, dtype=np.complex128)
        return TruncatedPair(self.basis, self.A1, self.A2, GramMatrix(self.basis, entries, self.G.mu1, self.G.mu2))

    def form(self, X, Y=None):
        """Matrix of ``<X e_s, Y e_t>_G`` over all basis vectors."""
        Y = X if Y is None else Y
        return X.T @ self.G.entries @ np.conj(Y)


def build_pair(mu1, mu2, n1, n2):
    if n1 < 2 or n2 < 2:
        raise ValidationError("the truncated pair needs n1, n2 >= 2")
    basis = MonomialBasis(n1, n2)
    A1 = shift_matrix(basis, 1)
    A2 = shift_matrix(basis, 2)
    if np.any(A1 @ A2 - A2 @ A1):
        raise AssertionError("shift matrices do not commute")
    return TruncatedPair(basis, A1, A2, gram_matrix(mu1, mu2, basis))


def _power(A, k):
    return np.linalg.matrix_power(A, k)


def toral_residual(P, i, j):
    """``max |<(I - Ti*Ti - Tj*Tj + Tj*Ti*TiTj) u, v>|`` over the window W(2,2)."""
    if P.basis.n1 < 2 or P.basis.n2 < 2:
        raise WindowEmpty("toral residual needs n1, n2 >= 2")
    Ai = P.A1 if i == 1 else P.A2
    Aj = P.A1 if j == 1 else P.A2
    w = P.window(2, 2)
    AiAj = Ai @ Aj
    R = P.G.entries - P.form(Ai) - P.form(Aj) + P.form(AiAj)
    return float(np.max(np.abs(R[np.ix_(w, w)])))


def moment_identity_residual(P, k, l):
    """Residual of ``T1*^k T2*^l T2^l T1^k = k T1*T1 + l T2*T2 - (k+l-1) I`` on W(k, l)."""
    if k < 0 or l < 0:
        raise ValidationError("k and l must be nonnegative")
    if k > P.basis.n1 or l > P.basis.n2:
        raise WindowEmpty(f"window W({k},{l}) is empty")
    w = P.window(k, l)
    Akl = _power(P.A1, k) @ _power(P.A2, l)
    R = P.form(Akl) - k * P.form(P.A1) - l * P.form(P.A2) + (k + l - 1) * P.G.entries
    return float(np.max(np.abs(R[np.ix_(w, w)])))


def wandering_check(P):
    """Largest ``|<z^a, z^b>|`` with ``a_i = 0`` and ``b_i != 0`` for some ``i``."""
    pairs = np.array(P.basis.pairs())
    zero = pairs == 0
    # mask[s, t] true when some coordinate i has a_i == 0 and b_i != 0
    mask = np.zeros((len(pairs), len(pairs)), dtype=bool)
    for i in range(2):
        mask |= zero[:, i][:, None] & ~zero[:, i][None, :]
    vals = np.abs(P.G.entries[mask])
    return float(vals.max()) if vals.size else 0.0


def adjoint_kernel_check(P, j):
    """Largest ``|<v, A_j u>|`` for pure powers ``v`` of the other variable."""
    b = P.basis
    if j == 1:
        vs = [b.index(0, n) for n in range(b.n2 + 1)]
        us = P.window(1, 0)
        A = P.A1
    elif j == 2:
        vs = [b.index(m, 0) for m in range(b.n1 + 1)]
        us = P.window(0, 1)
        A = P.A2
    else:
        raise ValueError("j must be 1 or 2")
    M = P.G.entries @ np.conj(A)
    return float(np.max(np.abs(M[np.ix_(vs, us)])))


def restrict_orbit(G):
    """One-variable orbit Grams ``<z1^m, z1^p>`` and ``<z2^n, z2^q>``."""
    b = G.basis
    i1 = [b.index(m, 0) for m in range(b.n1 + 1)]
    i2 = [b.index(0, n) for n in range(b.n2 + 1)]
    E = G.entries
    return E[np.ix_(i1, i1)].copy(), E[np.ix_(i2, i2)].copy()


def reconstruct_gram_from_orbit(data1, data2, tol=1e-12):
    """Full orbit Gram ``<T1^m T2^n f0, T1^p T2^q f0>`` from the two one-variable Grams."""
    d1 = np.asarray(data1, dtype=np.complex128)
    d2 = np.asarray(data2, dtype=np.complex128)
    if abs(d1[0, 0] - d2[0, 0]) > tol:
        raise InconsistentNormalization(
            f"||f0||^2 differs between the orbit data: {d1[0, 0]} vs {d2[0, 0]}"
        )
    for name, d in (("data1", d1), ("data2", d2)):
        if np.max(np.abs(d - d.conj().T)) > tol * (1 + np.max(np.abs(d))):
            raise ValidationError(f"{name} is not Hermitian")
    n1, n2 = d1.shape[0] - 1, d2.shape[0] - 1
    basis = MonomialBasis(n1, n2)
    out = np.zeros((basis.size, basis.size), dtype=np.complex128)
    f0 = d1[0, 0]
    for (m, n) in basis.pairs():
        s = basis.index(m, n)
        for (p, q) in basis.pairs():
            t = basis.index(p, q)
            if m != p and n != q:
                continue
            if m == p and n == q:
                out[s, t] = d1[m, m] + d2[n, n] - f0
            elif m == p:
                out[s, t] = d2[n, q]
            else:
                out[s, t] = d1[m, p]
    return out


# ---------------------------------------------------------------------------
# hypotheses of the model theorem for user-supplied pairs
# ---------------------------------------------------------------------------


def _metric(gram, dim):
    if gram is None or (isinstance(gram, str) and gram == "euclidean"):
        return np.eye(dim, dtype=np.complex128)
    E = np.asarray(getattr(gram, "entries", gram), dtype=np.complex128)
    if E.shape != (dim, dim):
        raise ValidationError(f"Gram matrix shape {E.shape} does not match pair dimension {dim}")
    # entries[k, l] = <e_k, e_l>, so <x, y> = y^H entries^T x
    return E.T


def _adjoint(T, H):
    return np.linalg.solve(H, T.conj().T @ H)


def verify_model_hypotheses(T1, T2, f0, gram="euclidean", window=None, tol=1e-10, max_power=None):
    """Check the finite-dimensional shadows of the model theorem's hypotheses.

    Returns a list of :class:`CheckRow`. Analyticity has no finite witness
    and is reported with ``passed=None``.
    """
    T1 = np.asarray(T1, dtype=np.complex128)
    T2 = np.asarray(T2, dtype=np.complex128)
    f0 = np.asarray(f0, dtype=np.complex128)
    dim = T1.shape[0]
    if T1.shape != (dim, dim) or T2.shape != (dim, dim) or f0.shape != (dim,):
        raise ValidationError("T1, T2 must be square of equal size and f0 a matching vector")
    H = _metric(gram, dim)

    def ip(x, y):
        return np.conj(y) @ H @ x

    def nrm(x):
        return float(np.sqrt(max(ip(x, x).real, 0.0)))

    rows = []
    comm = float(np.max(np.abs(T1 @ T2 - T2 @ T1)))
    rows.append(CheckRow("commuting", "commuting pair", comm, tol, window="all"))
    for j, T in ((1, T1), (2, T2)):
        rows.append(CheckRow(f"f0 in ker T{j}*", "ker T*", nrm(_adjoint(T, H) @ f0), tol, window="all"))

    kmax = min(dim, 12) if max_power is None else int(max_power)
    keys = [(m, n) for m in range(kmax + 1) for n in range(kmax + 1)]
    V = np.empty((len(keys), dim), dtype=np.complex128)
    v1 = f0
    for m in range(kmax + 1):
        v = v1
        for n in range(kmax + 1):
            V[m * (kmax + 1) + n] = v
            v = T2 @ v
        v1 = T1 @ v1
    L = np.linalg.cholesky(H)
    sv = np.linalg.svd(L.conj().T @ V.T, compute_uv=False)
    rank = int(np.sum(sv > 1e-10 * sv[0])) if sv.size and sv[0] > 0 else 0
    rows.append(CheckRow("cyclic orbit spans", "cyclic vector f0", float(dim - rank), 0.0, window="all"))

    # M[a, b] = <V_a, V_b>
    M = V @ H.T @ np.conj(V).T
    ms = np.array([k[0] for k in keys])
    ns = np.array([k[1] for k in keys])
    pure1 = ns == 0
    pure2 = ms == 0
    w1 = np.abs(M[np.ix_(pure1, ns >= 1)])
    w2 = np.abs(M[np.ix_(pure2, ms >= 1)])
    w1 = float(w1.max()) if w1.size else 0.0
    w2 = float(w2.max()) if w2.size else 0.0
    rows.append(CheckRow("orbit orthogonality (z1 powers)", "assumption-k-condition-1", w1, tol, window=f"powers<={kmax}"))
    rows.append(CheckRow("orbit orthogonality (z2 powers)", "assumption-k-condition-2", w2, tol, window=f"powers<={kmax}"))

    if window is not None:
        idx = np.asarray(window, dtype=np.intp)
        worst = 0.0
        for Ti in (T1, T2):
            for Tj in (T1, T2):
                TT = Ti @ Tj
                R = H - Ti.conj().T @ H @ Ti - Tj.conj().T @ H @ Tj + TT.conj().T @ H @ TT
                worst = max(worst, float(np.max(np.abs(R[np.ix_(idx, idx)]))))
        rows.append(CheckRow("toral 2-isometry", "Eq. C1", worst, tol, window=f"{idx.size} vectors"))
    rows.append(CheckRow("analytic", "analytic tuple", None, None, window="not evaluated", passed=None))
    return rows
