"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

The public names (``gram_fill``, ``disc_moments``, ``atom_series``) dispatch
on :data:`bidisc._accel.USE_NUMBA`. The ``*_numba`` and ``*_numpy`` variants
are importable directly for benchmarking and cross-checking.

Both flavours evaluate the same closed-form expressions; only summation order
may differ, so results agree to rounding (bitwise for ``gram_fill``).
"""
import numpy as np

from ._accel import USE_NUMBA, njit

# ---------------------------------------------------------------------------
# Gram matrix of the monomial family
# ---------------------------------------------------------------------------


@njit(cache=True)
def gram_fill_numba(mom1, mom2, n1, n2):
    # mom1[d + n1] holds the circle moment of index d, |d| <= n1 (same for mom2).
    s2 = n2 + 1
    size = (n1 + 1) * s2
    G = np.zeros((size, size), dtype=np.complex128)
    for m in range(n1 + 1):
        for n in range(s2):
            i = m * s2 + n
            for p in range(n1 + 1):
                for q in range(s2):
                    j = p * s2 + q
                    if m != p and n != q:
                        continue
                    if m == p and n == q:
                        G[i, j] = 1.0 + m * mom1[n1] + n * mom2[n2]
                    elif m == p:
                        k = min(n, q)
                        if k > 0:
                            G[i, j] = k * mom2[q - n + n2]
                    else:
                        k = min(m, p)
                        if k > 0:
                            G[i, j] = k * mom1[p - m + n1]
    return G


def gram_fill_numpy(mom1, mom2, n1, n2):
    mom1 = np.asarray(mom1, dtype=np.complex128)
    mom2 = np.asarray(mom2, dtype=np.complex128)
    m, n = np.meshgrid(np.arange(n1 + 1), np.arange(n2 + 1), indexing="ij")
    m = m.ravel()
    n = n.ravel()
    M, P = m[:, None], m[None, :]
    N, Q = n[:, None], n[None, :]
    same_m = M == P
    same_n = N == Q
    G = np.zeros((m.size, m.size), dtype=np.complex128)

    Mf = np.broadcast_to(M, G.shape)
    Nf = np.broadcast_to(N, G.shape)
    diag = same_m & same_n
    G[diag] = 1.0 + Mf[diag] * mom1[n1] + Nf[diag] * mom2[n2]

    col = same_m & ~same_n
    kq = np.minimum(N, Q)
    sel = col & (kq > 0)
    G[sel] = kq[sel] * mom2[(Q - N + n2)[sel]]

    row = ~same_m & same_n
    kp = np.minimum(M, P)
    sel = row & (kp > 0)
    G[sel] = kp[sel] * mom1[(P - M + n1)[sel]]
    return G


# ---------------------------------------------------------------------------
# Disc moments  D[a, b] = int_D z^a conj(z)^b P(z) dA(z)
# ---------------------------------------------------------------------------


@njit(cache=True)
def disc_moments_numba(rho, wrad, pvals, amax):
    # pvals[r, k] = P(rho[r] * exp(2 pi i k / K)); wrad already carries the
    # normalized area factor 2*rho.
    R, K = pvals.shape
    dmax = amax
    # angular Fourier modes F[r, d + dmax] = (1/K) sum_k exp(i d phi_k) P[r, k]
    F = np.zeros((R, 2 * dmax + 1), dtype=np.complex128)
    for d in range(-dmax, dmax + 1):
        for k in range(K):
            phase = np.exp(1j * (2.0 * np.pi * d * k / K))
            for r in range(R):
                F[r, d + dmax] += phase * pvals[r, k]
    F /= K
    D = np.zeros((amax + 1, amax + 1), dtype=np.complex128)
    for a in range(amax + 1):
        for b in range(amax + 1):
            acc = 0.0 + 0.0j
            for r in range(R):
                acc += wrad[r] * rho[r] ** (a + b) * F[r, a - b + dmax]
            D[a, b] = acc
    return D


def disc_moments_numpy(rho, wrad, pvals, amax):
    R, K = pvals.shape
    d = np.arange(-amax, amax + 1)
    phases = np.exp(1j * (2.0 * np.pi * np.outer(d, np.arange(K)) / K))
    F = pvals @ phases.T / K
    a = np.arange(amax + 1)
    powers = rho[:, None, None] ** (a[:, None] + a[None, :])[None, :, :]
    Fab = F[:, (a[:, None] - a[None, :]) + amax]
    return np.einsum("r,rab,rab->ab", wrad, powers, Fab)


# ---------------------------------------------------------------------------
# Truncated telescoping series for atomic Poisson weights
# ---------------------------------------------------------------------------


@njit(cache=True)
def atom_series_numba(n0_max, terms):
    out = np.zeros(n0_max + 1)
    for n0 in range(n0_max + 1):
        acc = 0.0
        # smallest terms first
        for k in range(terms - 1, -1, -1):
            N = n0 + k
            acc += 1.0 / (N + 1.0) - 1.0 / (N + 2.0)
        out[n0] = acc
    return out


def atom_series_numpy(n0_max, terms):
    out = np.zeros(n0_max + 1)
    k = np.arange(terms, dtype=np.float64)[::-1]
    for n0 in range(n0_max + 1):
        N = n0 + k
        out[n0] = np.sum(1.0 / (N + 1.0) - 1.0 / (N + 2.0))
    return out


if USE_NUMBA:
    gram_fill = gram_fill_numba
    disc_moments = disc_moments_numba
    atom_series = atom_series_numba
else:
    gram_fill = gram_fill_numpy
    disc_moments = disc_moments_numpy
    atom_series = atom_series_numpy
