"""Every invariant of the package, run over the measure catalog.

Each check yields :class:`~bidisc.report.CheckRow` objects carrying the
identity they verify, so a failing row points straight at the formula.
Randomized inputs come from one seeded generator consumed in a fixed order.
"""
from dataclasses import dataclass, field

import numpy as np

from . import bipoly as bp
from .bipoly import BiPoly
from .catalog import catalog
from .errors import SliceNotVanishing
from .gram import (
    MonomialBasis,
    gram_matrix,
    inner_product,
    kernel_coeffs,
    norm_sq,
    recover_moments,
    richter_rhs,
    torus_moment_sum,
)
from .koszul import cohomology, gleason_solve, koszul_build, koszul_preimage
from .measures import circle_integrate, poisson, toeplitz_feasibility, total_mass
from .quadrature import QuadSpec, dirichlet_integral_quad, inner_product_quad, torus_integral_quad, trapezoid_character
from .report import CheckRow
from .toral import (
    adjoint_kernel_check,
    build_pair,
    moment_identity_residual,
    reconstruct_gram_from_orbit,
    restrict_orbit,
    toral_residual,
    wandering_check,
)

DEFAULT_TOLERANCES = {
    "hermitian": 0.0,
    "poisson_lb": 1e-12,
    "quad_moment": 1e-12,
    "division": 1e-13,
    "gleason_split": 1e-12,
    "slice": 1e-12,
    "hardy_psd": 1e-10,
    "richter": 1e-10,
    "moments": 1e-10,
    "kernel_origin": 1e-12,
    "kernel_reproducing": 1e-10,
    "oracle_bounded": 1e-8,
    "oracle_atom": 1e-5,
    "torus": 1e-10,
    "trapezoid": 1e-12,
    "toral": 1e-12,
    "moment_identity": 1e-12,
    "orbit": 1e-12,
    "rank_tol": 1e-8,
    "gleason": 1e-10,
    "exactness": 1e-10,
}


@dataclass
class SuiteConfig:
    n1: int = 8
    n2: int = 8
    seed: int = 0
    quad: QuadSpec = field(default_factory=QuadSpec)
    tol: dict = field(default_factory=dict)
    oracle_degree: int = 6
    koszul_n: int = 6
    random_degree: int = 4

    def t(self, name):
        return self.tol.get(name, DEFAULT_TOLERANCES[name])


def _rand_lambda(rng, radius):
    r = radius * np.sqrt(rng.random(2))
    a = 2 * np.pi * rng.random(2)
    return complex(r[0] * np.exp(1j * a[0])), complex(r[1] * np.exp(1j * a[1]))


# ---------------------------------------------------------------------------
# per-measure checks
# ---------------------------------------------------------------------------


def measure_checks(cfg, rng):
    rows = []
    for name, mu in catalog():
        herm = max(abs(mu.moment(-j) - np.conj(mu.moment(j))) for j in range(0, 12))
        rows.append(CheckRow(f"moment hermitian [{name}]", "moment definition", herm, cfg.t("hermitian")))

        r = 0.999 * np.sqrt(rng.random(200))
        w = r * np.exp(2j * np.pi * rng.random(200))
        P = poisson(mu, w)
        lb = total_mass(mu) * (1 - np.abs(w) ** 2) / 4
        rows.append(CheckRow(f"poisson positivity [{name}]", "Poisson integral", float(max(0.0, -P.min())), 0.0))
        rows.append(CheckRow(f"poisson lower bound [{name}]", "Eq. Poisson-lb", float(max(0.0, np.max(lb - P))), cfg.t("poisson_lb")))

        err = max(abs(circle_integrate(mu, lambda t, j=j: np.exp(-1j * j * t), cfg.quad.angular_nodes) - mu.moment(j))
                  for j in range(-10, 11))
        rows.append(CheckRow(f"circle quadrature vs moments [{name}]", "moment definition", err, cfg.t("quad_moment")))
    return rows


# ---------------------------------------------------------------------------
# polynomial checks
# ---------------------------------------------------------------------------


def bipoly_checks(cfg, rng, count=100):
    d = cfg.random_degree
    div_err = 0.0
    for _ in range(count):
        q = BiPoly.random(rng, int(rng.integers(0, d + 1)), int(rng.integers(0, d + 1)))
        axis = int(rng.integers(1, 3))
        lam = _rand_lambda(rng, 0.95)[0]
        f = bp.linear(lam, axis) * q
        back = bp.divide_slice(f, axis, lam)
        div_err = max(div_err, back.max_diff(q) / q.max_abs())
    rows = [CheckRow("division round trip", "Theorem D-mu-estimate", div_err, cfg.t("division"))]

    raised = 0
    trials = 20
    for _ in range(trials):
        f = BiPoly.random(rng, d, d)
        lam = _rand_lambda(rng, 0.95)[0]
        try:
            bp.divide_slice(f, int(rng.integers(1, 3)), lam)
        except SliceNotVanishing:
            raised += 1
    rows.append(CheckRow("non-divisible inputs rejected", "Theorem D-mu-estimate", float(trials - raised), 0.0))

    gl = 0.0
    for _ in range(count):
        f = BiPoly.random(rng, int(rng.integers(0, d + 1)), int(rng.integers(0, d + 1)))
        lam = _rand_lambda(rng, 0.999)
        g1, g2 = bp.gleason_split(f, lam)
        rec = f(*lam) + bp.linear(lam[0], 1) * g1 + bp.linear(lam[1], 2) * g2
        gl = max(gl, rec.max_diff(f) / (1 + f.max_abs()))
    rows.append(CheckRow("gleason split identity", "observation-h", gl, cfg.t("gleason_split")))

    mono = 0.0
    gap = 0.0
    comm = 0.0
    for _ in range(20):
        f = BiPoly.random(rng, d, d)
        prof = [bp.slice_profile(f, r) for r in (0.5, 0.9, 0.99, 0.999)]
        mono = max(mono, max(0.0, *(a - b for a, b in zip(prof, prof[1:]))))
        r = 0.999999
        n = np.arange(f.shape[1])
        expect = float(np.sum(np.abs(f.coeffs) ** 2 * (1 - r ** (2 * n))[None, :]))
        gap = max(gap, abs((bp.hardy_norm_sq(f) - bp.slice_profile(f, r)) - expect) / bp.hardy_norm_sq(f))
        comm = max(comm, bp.partial(bp.partial(f, 1), 2).max_diff(bp.partial(bp.partial(f, 2), 1)))
    rows.append(CheckRow("slice profile monotone", "Eq. Hardy-fact", mono, 0.0))
    rows.append(CheckRow("slice profile limit", "Eq. Hardy-fact", gap, cfg.t("slice")))
    rows.append(CheckRow("mixed partials commute", "partial derivatives", comm, 0.0))
    return rows


# ---------------------------------------------------------------------------
# per-pair checks
# ---------------------------------------------------------------------------


def gram_checks(cfg, rng, name, mu1, mu2, richter_polys=5):
    rows = []
    basis = MonomialBasis(cfg.n1, cfg.n2)
    G = gram_matrix(mu1, mu2, basis)
    E = G.entries
    rows.append(CheckRow(f"gram normalization [{name}]", "kernel at origin", abs(E[0, 0] - 1), 0.0))

    lam_min = float(np.linalg.eigvalsh(E - np.eye(basis.size))[0])
    rows.append(CheckRow(f"hardy dominance [{name}]", "Lemma Rmk-Hardy-inclusion", max(0.0, -lam_min), cfg.t("hardy_psd")))

    mixed = 0.0
    for i, (m, n) in enumerate(basis.pairs()):
        for j, (p, q) in enumerate(basis.pairs()):
            if m != p and n != q:
                mixed = max(mixed, abs(E[i, j]))
    rows.append(CheckRow(f"mixed monomials orthogonal [{name}]", "inner-p-formula", mixed, 0.0))

    d = cfg.random_degree
    worst = 0.0
    for _ in range(richter_polys):
        p = BiPoly.random(rng, d, d)
        Gp = gram_matrix(mu1, mu2, MonomialBasis(d + 3, d + 3))
        for k in range(4):
            for l in range(4):
                lhs = norm_sq(Gp, p.shift(k, l))
                rhs = richter_rhs(mu1, mu2, p, k, l, G=Gp)
                worst = max(worst, abs(lhs - rhs) / abs(rhs))
    rows.append(CheckRow(f"richter identity [{name}]", "formula-Richter", worst, cfg.t("richter")))

    m1, m2, spread = recover_moments(G)
    err = max(np.max(np.abs(m1.values - mu1.moments(m1.J))), np.max(np.abs(m2.values - mu2.moments(m2.J))))
    rows.append(CheckRow(f"moment recovery [{name}]", "Proposition unitary-measure", float(err), cfg.t("moments")))
    rows.append(CheckRow(f"moment recovery spread [{name}]", "inner-p-formula", spread, cfg.t("moments")))
    feas = min(toeplitz_feasibility(m1).min_eig, toeplitz_feasibility(m2).min_eig)
    rows.append(CheckRow(f"recovered moments toeplitz PSD [{name}]", "trigonometric moment problem",
                         max(0.0, -feas), cfg.t("moments")))

    c0 = kernel_coeffs(G, (0, 0))
    e0 = np.zeros(basis.size)
    e0[0] = 1
    rows.append(CheckRow(f"kernel at origin [{name}]", "Lemma r-kernel", float(np.max(np.abs(c0 - e0))), cfg.t("kernel_origin")))
    rep = 0.0
    for _ in range(20):
        w = _rand_lambda(rng, 0.9)
        c = kernel_coeffs(G, w)
        f = BiPoly.random(rng, cfg.n1, cfg.n2)
        a = basis.vector(f)
        val = a @ E @ np.conj(c)
        fn = np.sqrt(norm_sq(G, f))
        rep = max(rep, abs(val - f(*w)) / (1 + fn))
    rows.append(CheckRow(f"kernel reproducing [{name}]", "Lemma r-kernel", float(rep), cfg.t("kernel_reproducing")))

    d1, d2 = restrict_orbit(G)
    rec = reconstruct_gram_from_orbit(d1, d2)
    rows.append(CheckRow(f"orbit reconstruction [{name}]", "Lemma lemma-inner-formula(ii)",
                         float(np.max(np.abs(rec - E))), cfg.t("orbit")))
    return rows


def oracle_checks(cfg, rng, name, mu1, mu2):
    rows = []
    deg = cfg.oracle_degree
    G = gram_matrix(mu1, mu2, MonomialBasis(deg, deg))
    atoms = mu1.has_atoms() or mu2.has_atoms()
    worst = 0.0
    worst_tail = 0.0
    pairs = G.basis.pairs()
    monos = [BiPoly.monomial(m, n) for m, n in pairs]
    for i, f in enumerate(monos):
        for j, g in enumerate(monos):
            r = inner_product_quad(mu1, mu2, f, g, cfg.quad)
            e = G.entries[i, j]
            if atoms:
                tol = max(cfg.t("oracle_atom"), r.tail_bound)
            else:
                tol = cfg.t("oracle_bounded") * (1 + abs(e))
            worst = max(worst, abs(r.value - e) / tol)
            worst_tail = max(worst_tail, r.tail_bound)
    anchor = "inner-p-formula vs Dirichlet integral"
    rows.append(CheckRow(f"gram vs quadrature oracle [{name}]", anchor, worst, 1.0,
                         context={"max_tail_bound": worst_tail}))

    d = cfg.random_degree
    dev = 0.0
    for _ in range(3):
        f = BiPoly.random(rng, d, d)
        Gf = gram_matrix(mu1, mu2, MonomialBasis(d, d))
        r = dirichlet_integral_quad(mu1, mu2, f, cfg.quad)
        expect = norm_sq(Gf, f) - bp.hardy_norm_sq(f)
        tol = max(cfg.t("oracle_atom"), r.tail_bound) if atoms else cfg.t("oracle_bounded") * (1 + abs(expect))
        dev = max(dev, abs(r.value - expect) / tol)
    rows.append(CheckRow(f"dirichlet integral vs gram [{name}]", "Dirichlet integral", dev, 1.0))

    if not atoms:
        tor = 0.0
        for _ in range(3):
            p = BiPoly.random(rng, d, d)
            for mu, axis in ((mu1, 1), (mu2, 2)):
                a = torus_integral_quad(mu, p, axis, cfg.quad)
                b = torus_moment_sum(mu, p, axis)
                tor = max(tor, abs(a - b) / (1 + abs(b)))
        rows.append(CheckRow(f"torus integral vs moment sum [{name}]", "formula-Richter", tor, cfg.t("torus")))
    return rows


def toral_checks(cfg, name, mu1, mu2):
    rows = []
    P = build_pair(mu1, mu2, cfg.n1, cfg.n2)
    nG = P.G.norm()
    for i in (1, 2):
        for j in (1, 2):
            rows.append(CheckRow(f"toral 2-isometry ({i},{j}) [{name}]", "Eq. C1", toral_residual(P, i, j),
                                 cfg.t("toral") * nG, window="W(2,2)"))
    worst = 0.0
    for k in range(5):
        for l in range(5 - k):
            worst = max(worst, moment_identity_residual(P, k, l))
    rows.append(CheckRow(f"moment identity k+l<=4 [{name}]", "formula-moment", worst, cfg.t("moment_identity"),
                         window="W(k,l)"))
    rows.append(CheckRow(f"wandering subspace [{name}]", "Corollary wandering-s", wandering_check(P), 0.0))
    for j in (1, 2):
        rows.append(CheckRow(f"adjoint kernel j={j} [{name}]", "Corollary description-kernel",
                             adjoint_kernel_check(P, j), 0.0))
    return rows


def koszul_checks(cfg, rng, name, mu1, mu2, n_gleason=5):
    rows = []
    n = cfg.koszul_n
    grid = np.linspace(-0.3, 0.3, 5)
    bad = []
    for a in grid:
        for b in grid:
            lam = (complex(a, 0.0), complex(0.0, b))
            c = cohomology(koszul_build(mu1, mu2, n, n, lam), cfg.t("rank_tol"))
            if c.dims != (0, 0, 1) or c.index != 1:
                bad.append([a, b])
    c0 = cohomology(koszul_build(mu1, mu2, n, n, (0, 0)), cfg.t("rank_tol"))
    rows.append(CheckRow(f"koszul dims at origin [{name}]", "Eq. K / Corollary exact-middle",
                         float(c0.dims != (0, 0, 1)), 0.0, context={"dims": list(c0.dims)}))
    rows.append(CheckRow(f"fredholm index grid [{name}]", "Eq. index", float(len(bad)), 0.0,
                         context={"failing_lambda": bad} if bad else None))

    lam = _rand_lambda(rng, 0.3)
    K = koszul_build(mu1, mu2, n, n, lam)
    k = BiPoly.random(rng, n - 1, n - 1)
    g = bp.linear(lam[0], 1) * k
    h = bp.linear(lam[1], 2) * k
    back, _ = koszul_preimage(K, h, -g)
    rows.append(CheckRow(f"middle exactness witness [{name}]", "exactness-a-new", back.max_diff(k),
                         cfg.t("exactness")))

    G = gram_matrix(mu1, mu2, MonomialBasis(cfg.random_degree, cfg.random_degree))
    res = 0.0
    gap = 0.0
    for _ in range(n_gleason):
        f = BiPoly.random(rng, cfg.random_degree, cfg.random_degree)
        lam = _rand_lambda(rng, 0.9)
        a = gleason_solve(G, f, lam, "paper_recipe")
        b = gleason_solve(G, f, lam, "min_norm")
        fn = np.sqrt(norm_sq(G, f))
        res = max(res, a.residual / (1 + fn), b.residual / (1 + fn))
        gap = max(gap, (b.objective - a.objective) / (1 + a.objective))
    rows.append(CheckRow(f"gleason residual [{name}]", "Theorem Gleason-new", res, cfg.t("gleason")))
    rows.append(CheckRow(f"min-norm objective <= recipe [{name}]", "Eq. eq3", max(0.0, gap), 1e-12))
    return rows


def quadrature_self_test(cfg):
    K = cfg.quad.angular_nodes
    err = max(abs(trapezoid_character(k, K)) for k in range(1, K // 2))
    return [CheckRow("trapezoid kills nonzero characters", "quadrature exactness", err, cfg.t("trapezoid"))]


def run_suite(cfg):
    rng = np.random.default_rng(cfg.seed)
    rows = []
    rows += measure_checks(cfg, rng)
    rows += bipoly_checks(cfg, rng)
    rows += quadrature_self_test(cfg)
    for n1, m1 in catalog():
        for n2, m2 in catalog():
            name = f"{n1},{n2}"
            rows += gram_checks(cfg, rng, name, m1, m2)
            rows += oracle_checks(cfg, rng, name, m1, m2)
            rows += toral_checks(cfg, name, m1, m2)
            rows += koszul_checks(cfg, rng, name, m1, m2)
    return rows
