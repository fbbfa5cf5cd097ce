"""Bivariate complex polynomials on a dense rectangular coefficient grid.

``coeffs[m, n]`` is the coefficient of ``z1**m * z2**n``. Trailing zero rows
and columns are allowed; :meth:`BiPoly.bidegree` reports the trimmed bound.
"""
import numpy as np
from scipy.signal import convolve2d

from .errors import DomainError, SliceNotVanishing, ValidationError


class BiPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=np.complex128, copy=True)
        if c.ndim == 0:
            c = c.reshape(1, 1)
        if c.ndim != 2 or c.shape[0] == 0 or c.shape[1] == 0:
            raise ValidationError(f"coefficient grid must be a nonempty 2-D array, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValidationError("coefficients must be finite")
        c.setflags(write=False)
        self.coeffs = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c):
        return cls([[c]])

    @classmethod
    def monomial(cls, m, n, c=1.0):
        a = np.zeros((m + 1, n + 1), dtype=np.complex128)
        a[m, n] = c
        return cls(a)

    @classmethod
    def z1(cls):
        return cls.monomial(1, 0)

    @classmethod
    def z2(cls):
        return cls.monomial(0, 1)

    @classmethod
    def zeros(cls, d1=0, d2=0):
        return cls(np.zeros((d1 + 1, d2 + 1)))

    @classmethod
    def random(cls, rng, d1, d2):
        """Coefficients uniform in the complex unit square ``[0,1) + i[0,1)``."""
        re = rng.random((d1 + 1, d2 + 1))
        im = rng.random((d1 + 1, d2 + 1))
        return cls(re + 1j * im)

    @classmethod
    def from_vector(cls, vec, n1, n2):
        """Inverse of :meth:`to_vector` for the row-major ``(n1, n2)`` basis."""
        return cls(np.asarray(vec).reshape(n1 + 1, n2 + 1))

    # -- shape -------------------------------------------------------------

    @property
    def shape(self):
        return self.coeffs.shape

    def bidegree(self):
        """Trimmed bidegree bound ``(d1, d2)``; the zero polynomial reports ``(0, 0)``."""
        nz = np.nonzero(self.coeffs)
        if nz[0].size == 0:
            return (0, 0)
        return (int(nz[0].max()), int(nz[1].max()))

    def padded(self, d1, d2):
        """Same polynomial on a ``(d1+1) x (d2+1)`` grid; trims only zero rows/columns."""
        e1, e2 = self.bidegree()
        if e1 > d1 or e2 > d2:
            raise ValidationError(f"bidegree {(e1, e2)} does not fit in {(d1, d2)}")
        out = np.zeros((d1 + 1, d2 + 1), dtype=np.complex128)
        r = min(d1 + 1, self.shape[0])
        c = min(d2 + 1, self.shape[1])
        out[:r, :c] = self.coeffs[:r, :c]
        return BiPoly(out)

    def trimmed(self):
        d1, d2 = self.bidegree()
        return BiPoly(self.coeffs[: d1 + 1, : d2 + 1])

    def to_vector(self, n1, n2):
        return self.padded(n1, n2).coeffs.ravel().copy()

    def max_abs(self):
        return float(np.max(np.abs(self.coeffs)))

    # -- arithmetic --------------------------------------------------------

    def _aligned(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other)
        d1 = max(self.shape[0], other.shape[0])
        d2 = max(self.shape[1], other.shape[1])
        a = np.zeros((d1, d2), dtype=np.complex128)
        b = np.zeros((d1, d2), dtype=np.complex128)
        a[: self.shape[0], : self.shape[1]] = self.coeffs
        b[: other.shape[0], : other.shape[1]] = other.coeffs
        return a, b

    def __add__(self, other):
        a, b = self._aligned(other)
        return BiPoly(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._aligned(other)
        return BiPoly(a - b)

    def __rsub__(self, other):
        a, b = self._aligned(other)
        return BiPoly(b - a)

    def __neg__(self):
        return BiPoly(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            return BiPoly(convolve2d(self.coeffs, other.coeffs))
        return BiPoly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def shift(self, k, l):
        """Multiply by ``z1**k * z2**l`` (pure index shift, no rounding)."""
        out = np.zeros((self.shape[0] + k, self.shape[1] + l), dtype=np.complex128)
        out[k:, l:] = self.coeffs
        return BiPoly(out)

    def allclose(self, other, atol=0.0, rtol=0.0):
        a, b = self._aligned(other)
        return bool(np.all(np.abs(a - b) <= atol + rtol * np.abs(b)))

    def max_diff(self, other):
        a, b = self._aligned(other)
        return float(np.max(np.abs(a - b)))

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return bool(np.array_equal(a, b))

    __hash__ = None

    def __repr__(self):
        terms = []
        for (m, n), c in np.ndenumerate(self.coeffs):
            if c != 0:
                terms.append(f"({c:.6g})*z1^{m}*z2^{n}")
        return "BiPoly(" + (" + ".join(terms) or "0") + ")"

    # -- function-level operations ------------------------------------------

    def __call__(self, z1, z2):
        return evaluate(self, (z1, z2))

    def to_json(self):
        d1, d2 = self.shape[0] - 1, self.shape[1] - 1
        rows = [[[float(c.real), float(c.imag)] for c in row] for row in self.coeffs]
        return {"deg": [d1, d2], "coeffs": rows}

    @classmethod
    def from_json(cls, doc):
        try:
            d1, d2 = (int(x) for x in doc["deg"])
            rows = doc["coeffs"]
            arr = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed polynomial JSON: {exc}") from None
        if arr.shape != (d1 + 1, d2 + 1):
            raise ValidationError(f"declared degree {(d1, d2)} does not match coefficient grid {arr.shape}")
        return cls(arr)


def evaluate(f, z):
    """``f(z1, z2)`` by nested Horner: inner in ``z2``, outer in ``z1``."""
    z1, z2 = z
    rows = np.zeros(f.shape[0], dtype=np.complex128)
    for m in range(f.shape[0]):
        acc = 0j
        for c in f.coeffs[m, ::-1]:
            acc = acc * z2 + c
        rows[m] = acc
    acc = 0j
    for c in rows[::-1]:
        acc = acc * z1 + c
    return complex(acc)


def partial(f, axis):
    """Partial derivative in ``z1`` (axis=1) or ``z2`` (axis=2)."""
    c = f.coeffs
    if axis == 1:
        if c.shape[0] == 1:
            return BiPoly(np.zeros((1, c.shape[1])))
        k = np.arange(1, c.shape[0])[:, None]
        return BiPoly(k * c[1:, :])
    if axis == 2:
        if c.shape[1] == 1:
            return BiPoly(np.zeros((c.shape[0], 1)))
        k = np.arange(1, c.shape[1])[None, :]
        return BiPoly(k * c[:, 1:])
    raise ValueError("axis must be 1 or 2")


def hardy_norm_sq(f):
    return float(np.sum(np.abs(f.coeffs) ** 2))


def slice_profile(f, r):
    """``int ||f(., r e^{i theta})||^2_{H^2} dtheta = sum |a_mn|^2 r^(2n)``."""
    if not 0 < r < 1:
        raise DomainError("slice_profile needs 0 < r < 1")
    n = np.arange(f.shape[1])
    return float(np.sum(np.abs(f.coeffs) ** 2 * r ** (2 * n)[None, :]))


def _horner_axis(c, lam):
    # evaluate along axis 0 at lam, keeping the other axis
    acc = np.zeros(c.shape[1], dtype=np.complex128)
    for row in c[::-1]:
        acc = acc * lam + row
    return acc


def slice(f, axis, lam):
    """Substitute ``z_axis = lam``; the result keeps a length-1 axis in that slot."""
    if axis == 1:
        return BiPoly(_horner_axis(f.coeffs, lam)[None, :])
    if axis == 2:
        return BiPoly(_horner_axis(f.coeffs.T, lam)[:, None])
    raise ValueError("axis must be 1 or 2")


def _synthetic_division(c, lam):
    """Divide every column of ``c`` (polynomials in the row index) by ``(x - lam)``.

    Returns ``(quotient, remainder)``; the remainder equals the column values at ``lam``.
    """
    d = c.shape[0] - 1
    if d == 0:
        return np.zeros((1, c.shape[1]), dtype=np.complex128), c[0].copy()
    q = np.zeros((d, c.shape[1]), dtype=np.complex128)
    acc = c[d].copy()
    for k in range(d - 1, -1, -1):
        q[k] = acc
        acc = c[k] + lam * acc
    return q, acc


def divide_slice(f, axis, lam, tol=1e-10):
    """Return ``q`` with ``(z_axis - lam) * q == f``.

    Raises :class:`SliceNotVanishing` if ``f`` does not vanish on ``{z_axis = lam}``
    (remainder coefficients above ``tol * (1 + max|a|)``).
    """
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    c = f.coeffs if axis == 1 else f.coeffs.T
    q, rem = _synthetic_division(c, lam)
    threshold = tol * (1.0 + f.max_abs())
    worst = float(np.max(np.abs(rem)))
    if worst > threshold:
        raise SliceNotVanishing(worst, threshold)
    return BiPoly(q if axis == 1 else q.T)


def gleason_split(f, lam):
    """Polynomials ``g1, g2`` with ``f = f(lam) + (z1-lam1) g1 + (z2-lam2) g2``.

    Divides out the first variable, then the second, from the slice
    ``f(lam1, .)``.
    """
    l1, l2 = lam
    q1, slice1 = _synthetic_division(f.coeffs, l1)
    q2, _ = _synthetic_division(slice1[:, None], l2)
    g1 = BiPoly(q1)
    g2 = BiPoly(q2.T)
    return g1, g2


def linear(lam, axis):
    """The polynomial ``z_axis - lam``."""
    if axis == 1:
        return BiPoly([[-lam], [1.0]])
    return BiPoly([[-lam, 1.0]])
