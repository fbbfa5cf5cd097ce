"""Finite positive measures on the unit circle in closed form.

Three families are supported, plus finite mixtures of them:

* :class:`Lebesgue` -- a multiple of normalized arc length,
* :class:`Atoms` -- finitely many point masses,
* :class:`TrigDensity` -- a nonnegative trigonometric polynomial density
  with respect to normalized arc length.

Moments follow ``moment(mu, j) = int zeta**(-j) dmu(zeta)``.
"""
import json
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import toeplitz

from .errors import DomainError, ValidationError

TWO_PI = 2.0 * np.pi
ATOM_MERGE_TOL = 1e-12
DENSITY_SLACK = 1e-12


class CircleMeasure:
    """Common interface; concrete measures override the four hooks."""

    label = "measure"

    def moment(self, j):
        raise NotImplementedError

    def poisson(self, w):
        raise NotImplementedError

    def components(self):
        """Flat list of non-mixture parts."""
        return [self]

    def to_json(self):
        raise NotImplementedError

    # convenience

    def moments(self, J):
        """Array of moments for ``j = -J, ..., J`` (index ``j + J``)."""
        return np.array([self.moment(j) for j in range(-J, J + 1)], dtype=np.complex128)

    @property
    def total_mass(self):
        return total_mass(self)

    def key(self):
        """Canonical string identity, usable as a cache key."""
        return json.dumps(self.to_json(), sort_keys=True)

    def has_atoms(self):
        return any(isinstance(c, Atoms) and c.atoms for c in self.components())

    def __add__(self, other):
        return Mixture((self, other))

    def __mul__(self, c):
        return scale(self, c)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Lebesgue(CircleMeasure):
    mass: float = 1.0

    def __post_init__(self):
        mass = float(self.mass)
        if not np.isfinite(mass) or mass < 0:
            raise ValidationError(f"Lebesgue mass must be finite and >= 0, got {self.mass!r}")
        object.__setattr__(self, "mass", mass)

    @property
    def label(self):
        return "zero" if self.mass == 0 else f"lebesgue({self.mass:g})"

    def moment(self, j):
        return complex(self.mass) if j == 0 else 0j

    def poisson(self, w):
        return self.mass * np.ones(np.shape(w))

    def to_json(self):
        return {"type": "lebesgue", "mass": self.mass}


@dataclass(frozen=True)
class Atoms(CircleMeasure):
    """Point masses ``((angle, mass), ...)``; angles in radians."""

    atoms: tuple = ()

    def __post_init__(self):
        cleaned = []
        for item in self.atoms:
            try:
                angle, mass = item
            except (TypeError, ValueError):
                raise ValidationError(f"atom must be an (angle, mass) pair, got {item!r}") from None
            angle, mass = float(angle), float(mass)
            if not (np.isfinite(angle) and np.isfinite(mass)):
                raise ValidationError("atom angle and mass must be finite")
            if mass <= 0:
                raise ValidationError(f"atom mass must be > 0, got {mass}")
            cleaned.append((angle % TWO_PI, mass))
        cleaned.sort()
        merged = []
        for angle, mass in cleaned:
            if merged and _angle_gap(merged[-1][0], angle) < ATOM_MERGE_TOL:
                merged[-1] = (merged[-1][0], merged[-1][1] + mass)
            else:
                merged.append((angle, mass))
        if len(merged) > 1 and _angle_gap(merged[0][0], merged[-1][0]) < ATOM_MERGE_TOL:
            first = merged.pop(0)
            merged[-1] = (merged[-1][0], merged[-1][1] + first[1])
        object.__setattr__(self, "atoms", tuple(merged))

    @property
    def label(self):
        inner = ",".join(f"({a:.6g},{m:.6g})" for a, m in self.atoms)
        return f"atoms[{inner}]"

    @property
    def angles(self):
        return np.array([a for a, _ in self.atoms])

    @property
    def masses(self):
        return np.array([m for _, m in self.atoms])

    def moment(self, j):
        return complex(sum(m * np.exp(-1j * j * a) for a, m in self.atoms))

    def poisson(self, w):
        w = np.asarray(w, dtype=np.complex128)
        out = np.zeros(w.shape)
        for a, m in self.atoms:
            zeta = np.exp(1j * a)
            out = out + m * (1.0 - np.abs(w) ** 2) / np.abs(w - zeta) ** 2
        return out

    def to_json(self):
        return {"type": "atoms", "atoms": [{"angle": a, "mass": m} for a, m in self.atoms]}


def _angle_gap(a, b):
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class TrigDensity(CircleMeasure):
    """Density ``sum_j c_j e^{ijt}`` w.r.t. normalized arc length.

    ``coeffs`` maps ``j -> c_j``. Missing negative frequencies are filled in
    by conjugate symmetry; given pairs must already be conjugate.
    """

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        raw = {int(j): complex(c) for j, c in dict(self.coeffs).items()}
        full = {}
        for j, c in raw.items():
            if j == 0:
                if abs(c.imag) > 0:
                    raise ValidationError("c_0 of a density must be real")
                full[0] = complex(c.real)
                continue
            full[j] = c
            mirror = raw.get(-j)
            if mirror is None:
                full[-j] = c.conjugate()
            elif abs(mirror - c.conjugate()) > 1e-14 * (1 + abs(c)):
                raise ValidationError(f"coefficients c_{j} and c_{-j} are not conjugate")
        full.setdefault(0, 0j)
        J = max(abs(j) for j in full)
        object.__setattr__(self, "coeffs", {j: full.get(j, 0j) for j in range(-J, J + 1)})
        if any(not np.isfinite(c) for c in self.coeffs.values()):
            raise ValidationError("density coefficients must be finite")
        lowest = self.density(np.linspace(0, TWO_PI, 8 * J + 16, endpoint=False)).min()
        if lowest < -DENSITY_SLACK:
            raise ValidationError(f"trigonometric density is negative on the validation grid (min {lowest:.3e})")

    @property
    def degree(self):
        return max(abs(j) for j in self.coeffs)

    @property
    def label(self):
        terms = ",".join(f"c{j}={_fmt_c(c)}" for j, c in self.coeffs.items() if j >= 0 and c != 0)
        return f"trig({terms})"

    def density(self, t):
        t = np.asarray(t, dtype=float)
        J = self.degree
        js = np.arange(-J, J + 1)
        c = np.array([self.coeffs[j] for j in js])
        return (np.exp(1j * np.multiply.outer(t, js)) @ c).real

    def moment(self, j):
        return self.coeffs.get(j, 0j)

    def poisson(self, w):
        w = np.asarray(w, dtype=np.complex128)
        r = np.abs(w)
        phase = np.exp(1j * np.angle(w))
        val = np.zeros(w.shape, dtype=np.complex128)
        for j, c in self.coeffs.items():
            val = val + c * r ** abs(j) * phase ** j
        if np.any(np.abs(val.imag) > 1e-12):
            raise AssertionError("Poisson integral of a Hermitian density has a non-negligible imaginary part")
        return val.real

    def to_json(self):
        return {
            "type": "trig_density",
            "coeffs": [{"j": j, "re": c.real, "im": c.imag} for j, c in self.coeffs.items() if j >= 0],
        }


def _fmt_c(c):
    return f"{c.real:g}" if c.imag == 0 else f"{c.real:g}{c.imag:+g}i"


@dataclass(frozen=True)
class Mixture(CircleMeasure):
    parts: tuple = ()

    def __post_init__(self):
        flat = []
        for p in self.parts:
            if not isinstance(p, CircleMeasure):
                raise ValidationError(f"mixture part is not a measure: {p!r}")
            flat.extend(p.components())
        object.__setattr__(self, "parts", tuple(flat))

    @property
    def label(self):
        return "+".join(p.label for p in self.parts) or "zero"

    def components(self):
        return list(self.parts)

    def moment(self, j):
        return complex(sum(p.moment(j) for p in self.parts))

    def poisson(self, w):
        out = np.zeros(np.shape(w))
        for p in self.parts:
            out = out + p.poisson(w)
        return out

    def to_json(self):
        return {"type": "mixture", "parts": [p.to_json() for p in self.parts]}


def scale(mu, c):
    """Return ``c * mu`` for a scalar ``c >= 0``."""
    c = float(c)
    if c < 0:
        raise ValidationError("measures can only be scaled by nonnegative numbers")
    if isinstance(mu, Lebesgue):
        return Lebesgue(c * mu.mass)
    if isinstance(mu, Atoms):
        if c == 0:
            return Lebesgue(0.0)
        return Atoms(tuple((a, c * m) for a, m in mu.atoms))
    if isinstance(mu, TrigDensity):
        return TrigDensity({j: c * v for j, v in mu.coeffs.items()})
    return Mixture(tuple(scale(p, c) for p in mu.components()))


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def moment(mu, j):
    """Circle moment ``int zeta**(-j) dmu``, exact from the closed form."""
    return mu.moment(int(j))


def poisson(mu, w):
    """Poisson integral ``int (1-|w|^2)/|w-zeta|^2 dmu(zeta)`` for ``|w| < 1``.

    Accepts scalars or arrays of points.
    """
    arr = np.asarray(w, dtype=np.complex128)
    if np.any(np.abs(arr) >= 1):
        raise DomainError("Poisson integral requires |w| < 1")
    val = mu.poisson(arr)
    return float(val) if np.ndim(val) == 0 else val


def total_mass(mu):
    m0 = moment(mu, 0)
    if abs(m0.imag) > 1e-14 * (1 + abs(m0.real)):
        raise AssertionError("zeroth moment has a nonzero imaginary part")
    return float(m0.real)


def quadrature_rule(mu, n_nodes):
    """Nodes (angles) and weights with ``int g dmu ~= sum w_k g(t_k)``.

    Atoms are represented exactly. Lebesgue and density parts use the
    ``n_nodes``-point trapezoid rule, exact for trigonometric polynomials of
    degree below ``n_nodes - J`` (``J`` the density degree).
    """
    grid = np.arange(n_nodes) * (TWO_PI / n_nodes)
    angles, weights = [], []
    smooth = np.zeros(n_nodes)
    has_smooth = False
    for part in mu.components():
        if isinstance(part, Lebesgue):
            if part.mass:
                smooth += part.mass
                has_smooth = True
        elif isinstance(part, TrigDensity):
            smooth += part.density(grid)
            has_smooth = True
        elif isinstance(part, Atoms):
            angles.extend(part.angles)
            weights.extend(part.masses)
    if has_smooth:
        angles = list(grid) + angles
        weights = list(smooth / n_nodes) + weights
    return np.asarray(angles, dtype=float), np.asarray(weights, dtype=float)


def circle_integrate(mu, g, n_nodes=256):
    """Integrate a vectorized function of the angle against ``mu``."""
    t, w = quadrature_rule(mu, n_nodes)
    if t.size == 0:
        return 0j
    return complex(np.sum(w * g(t)))


# ---------------------------------------------------------------------------
# moment sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MomentSequence:
    """Hermitian sequence ``values[j + J]``, ``j = -J..J``.

    ``status`` is ``"unchecked"``, ``"feasible"`` or ``"infeasible"``;
    ``min_eig`` is set once Toeplitz feasibility has been evaluated.
    """

    J: int
    values: np.ndarray
    status: str = "unchecked"
    min_eig: float = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (2 * self.J + 1,):
            raise ValidationError(f"expected {2 * self.J + 1} values, got shape {vals.shape}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_nonnegative(cls, seq):
        """Build from ``[v_0, v_1, ..., v_J]``, filling negatives by conjugation."""
        seq = np.asarray(seq, dtype=np.complex128)
        J = seq.size - 1
        vals = np.concatenate([np.conj(seq[:0:-1]), seq])
        return cls(J, vals)

    @classmethod
    def of_measure(cls, mu, J):
        return cls(J, mu.moments(J))

    def __getitem__(self, j):
        return self.values[j + self.J]

    def hermitian_defect(self):
        return float(np.max(np.abs(self.values - np.conj(self.values[::-1]))))

    def toeplitz(self):
        col = self.values[self.J:]
        row = self.values[self.J::-1]
        # T[j, k] = values(j - k)
        return toeplitz(col, row)


def toeplitz_feasibility(ms, tol=1e-10):
    """Smallest eigenvalue of ``[values(j - k)]`` and the resulting verdict."""
    lam = float(np.linalg.eigvalsh(ms.toeplitz())[0])
    status = "feasible" if lam >= -tol else "infeasible"
    return MomentSequence(ms.J, ms.values, status, lam)


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------


def measure_from_json(doc):
    if not isinstance(doc, dict) or "type" not in doc:
        raise ValidationError("measure JSON must be an object with a 'type' field")
    kind = doc["type"]
    try:
        if kind == "lebesgue":
            return Lebesgue(doc["mass"])
        if kind == "atoms":
            return Atoms(tuple((a["angle"], a["mass"]) for a in doc["atoms"]))
        if kind == "trig_density":
            coeffs = {}
            for c in doc["coeffs"]:
                coeffs[int(c["j"])] = complex(float(c.get("re", 0.0)), float(c.get("im", 0.0)))
            return TrigDensity(coeffs)
        if kind == "mixture":
            return Mixture(tuple(measure_from_json(p) for p in doc["parts"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed {kind!r} measure: {exc}") from None
    raise ValidationError(f"unknown measure type {kind!r}")


def measure_to_json(mu):
    return mu.to_json()
