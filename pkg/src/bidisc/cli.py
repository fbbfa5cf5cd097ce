"""Command-line front end.

Every command prints (or writes with ``--out``) one JSON report with the
computed result and a list of check rows. Exit status: 0 when all checks
pass, 1 when any check fails, 2 on invalid input.
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bipoly as bp
from .bipoly import BiPoly
from .catalog import catalog
from .errors import (
    BasisTooSmall,
    BidiscError,
    DomainError,
    InconsistentNormalization,
    ValidationError,
    WindowEmpty,
)
from .gram import (
    GramMatrix,
    MonomialBasis,
    gram_matrix,
    gram_to_csv,
    gram_to_json,
    kernel_coeffs,
    norm_sq,
    recover_moments,
    richter_rhs,
)
from .koszul import cohomology, gleason_solve, koszul_build
from .measures import Lebesgue, measure_from_json, toeplitz_feasibility
from .quadrature import QuadSpec, dirichlet_integral_quad, inner_product_quad
from .report import CheckRow, dumps, emit_report, rows_to_csv
from .suite import DEFAULT_TOLERANCES, SuiteConfig, run_suite
from .toral import (
    adjoint_kernel_check,
    build_pair,
    moment_identity_residual,
    reconstruct_gram_from_orbit,
    restrict_orbit,
    toral_residual,
    verify_model_hypotheses,
    wandering_check,
)

COMMANDS = (
    "gram", "oracle-compare", "richter-check", "toral-check", "moment-check", "wandering-check",
    "kernel", "adjoint-kernel", "gleason", "koszul", "recover-moments", "reconstruct-orbit",
    "verify-pair", "suite",
)
INPUT_ERRORS = (ValidationError, DomainError, BasisTooSmall, WindowEmpty, InconsistentNormalization)


# ---------------------------------------------------------------------------
# input parsing
# ---------------------------------------------------------------------------


def _read_json(text_or_path):
    s = str(text_or_path).strip()
    if s.startswith("{") or s.startswith("["):
        src = s
    else:
        try:
            src = Path(s).read_text()
        except OSError as exc:
            raise ValidationError(f"cannot read {s}: {exc.strerror}") from None
    try:
        return json.loads(src)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON in {s}: {exc}") from None


def load_measure(spec):
    """Measure from a JSON file, inline JSON, or ``catalog:NAME``."""
    if spec is None:
        return Lebesgue(0.0)
    if spec.startswith("catalog:"):
        name = spec.split(":", 1)[1]
        table = dict(catalog())
        if name not in table:
            raise ValidationError(f"unknown catalog measure {name!r}; choose from {sorted(table)}")
        return table[name]
    return measure_from_json(_read_json(spec))


def load_poly(spec):
    return None if spec is None else BiPoly.from_json(_read_json(spec))


def parse_lambda(text):
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise ValidationError(f"--lambda expects re,im,re,im; got {text!r}") from None
    if len(parts) != 4 or not all(np.isfinite(parts)):
        raise ValidationError(f"--lambda expects four finite numbers; got {text!r}")
    return complex(parts[0], parts[1]), complex(parts[2], parts[3])


def parse_tols(items):
    out = {}
    for item in items or ():
        name, sep, val = item.partition("=")
        if not sep:
            raise ValidationError(f"--tol expects NAME=VAL; got {item!r}")
        if name not in DEFAULT_TOLERANCES:
            raise ValidationError(f"unknown tolerance {name!r}; known: {', '.join(sorted(DEFAULT_TOLERANCES))}")
        try:
            v = float(val)
        except ValueError:
            raise ValidationError(f"tolerance {name} is not a number: {val!r}") from None
        if not (v > 0 and np.isfinite(v)):
            raise ValidationError(f"tolerance {name} must be positive")
        out[name] = v
    return out


def _complex_array(obj, name, ndim):
    """Nested lists of depth ``ndim`` whose leaves are numbers or ``[re, im]`` pairs."""

    def leaf(x):
        if isinstance(x, (int, float)) and not isinstance(x, bool):
            return complex(x)
        if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
            return complex(x[0], x[1])
        raise ValidationError(f"{name}: entries must be numbers or [re, im] pairs")

    def walk(x, depth):
        if depth == 0:
            return leaf(x)
        if not isinstance(x, list):
            raise ValidationError(f"{name}: expected a {ndim}-dimensional array")
        return [walk(v, depth - 1) for v in x]

    try:
        return np.array(walk(obj, ndim), dtype=np.complex128)
    except ValueError as exc:
        raise ValidationError(f"{name}: ragged array ({exc})") from None


def load_gram(spec):
    doc = _read_json(spec)
    try:
        b = MonomialBasis(int(doc["basis"]["n1"]), int(doc["basis"]["n2"]))
        E = np.array([[complex(*c) for c in row] for row in doc["entries"]], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed Gram JSON: {exc}") from None
    if E.shape != (b.size, b.size):
        raise ValidationError(f"Gram entries have shape {E.shape}, basis needs {(b.size, b.size)}")
    return GramMatrix(b, E)


# ---------------------------------------------------------------------------
# context shared by the commands
# ---------------------------------------------------------------------------


class Ctx:
    def __init__(self, args):
        self.args = args
        self.mu1 = load_measure(args.measure1)
        self.mu2 = load_measure(args.measure2)
        self.poly = load_poly(args.poly)
        self.lam = parse_lambda(args.lam) if args.lam else (0j, 0j)
        self.tol = parse_tols(args.tol)
        self.quad = QuadSpec(args.radial, args.angular, args.atom_terms)
        self.seed = args.seed
        self.rng = np.random.default_rng(args.seed)

    def t(self, name):
        return self.tol.get(name, DEFAULT_TOLERANCES[name])

    def basis(self, default=(6, 6)):
        n = self.args.basis or default
        return MonomialBasis(int(n[0]), int(n[1]))

    def gram(self, default=(6, 6)):
        return gram_matrix(self.mu1, self.mu2, self.basis(default))

    def meta(self):
        out = {
            "measure1": self.mu1.label,
            "measure2": self.mu2.label,
            "seed": self.seed,
        }
        if self.args.basis:
            out["basis"] = list(self.args.basis)
        if self.tol:
            out["tolerance_overrides"] = dict(sorted(self.tol.items()))
        return out


def _lam_json(lam):
    return [[lam[0].real, lam[0].imag], [lam[1].real, lam[1].imag]]


def _random_polys(ctx, count, d1=4, d2=4):
    if ctx.poly is not None:
        return [ctx.poly]
    return [BiPoly.random(ctx.rng, d1, d2) for _ in range(count)]


# ---------------------------------------------------------------------------
# commands: each returns (payload, rows)
# ---------------------------------------------------------------------------


def cmd_gram(ctx):
    G = ctx.gram()
    E = G.entries
    rows = [
        CheckRow("normalization <1, 1> = 1", "Lemma r-kernel", abs(E[0, 0] - 1), 0.0),
        CheckRow("hermitian", "inner-p-formula", float(np.max(np.abs(E - E.conj().T))), 0.0),
        CheckRow("hardy dominance G - I >= 0", "Lemma Rmk-Hardy-inclusion",
                 max(0.0, -float(np.linalg.eigvalsh(E - np.eye(len(E)))[0])), ctx.t("hardy_psd")),
    ]
    payload = {"measure1": ctx.mu1.to_json(), "measure2": ctx.mu2.to_json(), **gram_to_json(G)}
    return payload, rows, gram_to_csv(G)


def cmd_oracle_compare(ctx):
    atoms = ctx.mu1.has_atoms() or ctx.mu2.has_atoms()
    if ctx.poly is not None:
        f = ctx.poly
        d1, d2 = f.bidegree()
        G = gram_matrix(ctx.mu1, ctx.mu2, MonomialBasis(d1, d2))
        r = dirichlet_integral_quad(ctx.mu1, ctx.mu2, f, ctx.quad)
        closed = norm_sq(G, f) - bp.hardy_norm_sq(f)
        tol = max(ctx.t("oracle_atom"), r.tail_bound) if atoms else ctx.t("oracle_bounded") * (1 + abs(closed))
        rows = [CheckRow("dirichlet integral: quadrature vs gram", "Dirichlet integral", abs(r.value - closed), tol)]
        return {**r.to_json(), "gram_value": closed}, rows, None
    G = ctx.gram(default=(4, 4))
    monos = [BiPoly.monomial(m, n) for m, n in G.basis.pairs()]
    worst_err, worst_tail, worst_at = 0.0, 0.0, None
    rows = []
    for i, f in enumerate(monos):
        for j, g in enumerate(monos):
            r = inner_product_quad(ctx.mu1, ctx.mu2, f, g, ctx.quad)
            e = G.entries[i, j]
            tol = max(ctx.t("oracle_atom"), r.tail_bound) if atoms else ctx.t("oracle_bounded") * (1 + abs(e))
            err = abs(r.value - e)
            if err / tol > worst_err:
                worst_err, worst_at = err / tol, [list(G.basis.pair(i)), list(G.basis.pair(j))]
            worst_tail = max(worst_tail, r.tail_bound)
    rows.append(CheckRow("gram entries vs quadrature (error / tolerance)", "inner-p-formula", worst_err, 1.0,
                         context={"worst_pair": worst_at} if worst_at else None))
    payload = {"entries_compared": len(monos) ** 2, "max_error_ratio": worst_err, "max_tail_bound": worst_tail}
    return payload, rows, None


def cmd_richter(ctx):
    polys = _random_polys(ctx, 5)
    rows = []
    for k in range(4):
        for l in range(4):
            worst = 0.0
            for p in polys:
                d1, d2 = p.bidegree()
                G = gram_matrix(ctx.mu1, ctx.mu2, MonomialBasis(d1 + k, d2 + l))
                lhs = norm_sq(G, p.shift(k, l))
                rhs = richter_rhs(ctx.mu1, ctx.mu2, p, k, l)
                worst = max(worst, abs(lhs - rhs) / abs(rhs))
            rows.append(CheckRow(f"shifted norm k={k} l={l}", "formula-Richter", worst, ctx.t("richter")))
    return {"polynomials": len(polys)}, rows, None


def _pair(ctx):
    b = ctx.basis(default=(8, 8))
    return build_pair(ctx.mu1, ctx.mu2, b.n1, b.n2)


def cmd_toral(ctx):
    P = _pair(ctx)
    nG = P.G.norm()
    rows = [
        CheckRow(f"toral 2-isometry i={i} j={j}", "Eq. C1", toral_residual(P, i, j), ctx.t("toral") * nG,
                 window="W(2,2)")
        for i in (1, 2) for j in (1, 2)
    ]
    return {"gram_norm": nG}, rows, None


def cmd_moment(ctx):
    P = _pair(ctx)
    rows = []
    for k in range(5):
        for l in range(5 - k):
            if k <= P.basis.n1 and l <= P.basis.n2:
                rows.append(CheckRow(f"moment identity k={k} l={l}", "formula-moment",
                                     moment_identity_residual(P, k, l), ctx.t("moment_identity"),
                                     window=f"W({k},{l})"))
    return None, rows, None


def cmd_wandering(ctx):
    P = _pair(ctx)
    return None, [CheckRow("wandering subspace orthogonality", "Corollary wandering-s", wandering_check(P), 0.0)], None


def cmd_adjoint_kernel(ctx):
    P = _pair(ctx)
    rows = [CheckRow(f"pure powers in ker T{j}*", "Corollary description-kernel", adjoint_kernel_check(P, j), 0.0)
            for j in (1, 2)]
    return None, rows, None


def cmd_kernel(ctx):
    G = ctx.gram()
    w = ctx.lam
    c = kernel_coeffs(G, w)
    rows = []
    if w == (0j, 0j):
        e0 = np.zeros(G.basis.size)
        e0[0] = 1
        rows.append(CheckRow("kernel at origin is 1", "Lemma r-kernel", float(np.max(np.abs(c - e0))),
                             ctx.t("kernel_origin")))
    worst = 0.0
    b = G.basis
    for f in _random_polys(ctx, 5, b.n1, b.n2):
        val = b.vector(f) @ G.entries @ np.conj(c)
        worst = max(worst, abs(val - f(*w)) / (1 + np.sqrt(norm_sq(G, f))))
    rows.append(CheckRow("reproducing property", "Lemma r-kernel", float(worst), ctx.t("kernel_reproducing")))
    return {"point": _lam_json(w), "coeffs": [[v.real, v.imag] for v in c]}, rows, None


def cmd_gleason(ctx):
    G = ctx.gram(default=(4, 4))
    f = ctx.poly if ctx.poly is not None else BiPoly.random(ctx.rng, G.basis.n1, G.basis.n2)
    fn = np.sqrt(norm_sq(G, f))
    sols = {m: gleason_solve(G, f, ctx.lam, m) for m in ("paper_recipe", "min_norm")}
    rows = [CheckRow(f"gleason residual ({m})", "Theorem Gleason-new", s.residual / (1 + fn), ctx.t("gleason"))
            for m, s in sols.items()]
    a, b = sols["paper_recipe"].objective, sols["min_norm"].objective
    rows.append(CheckRow("min_norm objective <= paper_recipe objective", "Eq. eq3",
                         max(0.0, (b - a) / (1 + a)), 1e-12))
    payload = {"lambda": _lam_json(ctx.lam), "f": f.to_json()}
    for m, s in sols.items():
        payload[m] = {"g1": s.g1.trimmed().to_json(), "g2": s.g2.trimmed().to_json(),
                      "residual": s.residual, "objective": s.objective}
    return payload, rows, None


def cmd_koszul(ctx):
    b = ctx.basis(default=(6, 6))
    K = koszul_build(ctx.mu1, ctx.mu2, b.n1, b.n2, ctx.lam)
    c = cohomology(K, ctx.t("rank_tol"))
    inside = all(abs(x) < 1 for x in ctx.lam)
    if inside:
        rows = [
            CheckRow("cohomology dims (0, 0, 1)", "Corollary exact-middle", float(c.dims != (0, 0, 1)), 0.0,
                     context={"dims": list(c.dims)}),
            CheckRow("fredholm index 1", "Eq. index", float(abs(c.index - 1)), 0.0),
        ]
    else:
        rows = [CheckRow("index outside the bidisc", "Eq. index", None, None, window="not asserted", passed=None)]
    return c.to_json(ctx.lam), rows, None


def _gram_source(ctx, default=(6, 6)):
    if ctx.args.gram:
        return load_gram(ctx.args.gram), False
    return ctx.gram(default), True


def cmd_recover(ctx):
    G, known = _gram_source(ctx)
    m1, m2, spread = recover_moments(G)
    f1, f2 = toeplitz_feasibility(m1), toeplitz_feasibility(m2)
    rows = [
        CheckRow("moment estimates agree", "inner-p-formula", spread, ctx.t("moments")),
        CheckRow("toeplitz PSD (measure 1)", "trigonometric moment problem", max(0.0, -f1.min_eig), ctx.t("moments")),
        CheckRow("toeplitz PSD (measure 2)", "trigonometric moment problem", max(0.0, -f2.min_eig), ctx.t("moments")),
    ]
    if known:
        err = max(np.max(np.abs(m1.values - ctx.mu1.moments(m1.J))), np.max(np.abs(m2.values - ctx.mu2.moments(m2.J))))
        rows.append(CheckRow("matches closed-form moments", "Proposition unitary-measure", float(err), ctx.t("moments")))

    def seq(ms):
        return {"J": ms.J, "moments": [[v.real, v.imag] for v in ms.values], "status": ms.status, "min_eig": ms.min_eig}

    return {"mu1": seq(f1), "mu2": seq(f2), "consistency_residual": spread}, rows, None


def cmd_reconstruct(ctx):
    G, _ = _gram_source(ctx)
    d1, d2 = restrict_orbit(G)
    rec = reconstruct_gram_from_orbit(d1, d2)
    err = float(np.max(np.abs(rec - G.entries)))
    rows = [CheckRow("orbit data reproduce the Gram", "Lemma lemma-inner-formula(ii)", err, ctx.t("orbit"))]
    return {"max_entry_error": err}, rows, None


def _pair_from_json(doc):
    if not isinstance(doc, dict):
        raise ValidationError("pair JSON must be an object with T1, T2, f0")
    try:
        T1 = _complex_array(doc["T1"], "T1", 2)
        T2 = _complex_array(doc["T2"], "T2", 2)
        f0 = _complex_array(doc["f0"], "f0", 1)
    except KeyError as exc:
        raise ValidationError(f"pair JSON is missing {exc}") from None
    gram = doc.get("gram", "euclidean")
    if not (isinstance(gram, str) and gram == "euclidean"):
        gram = _complex_array(gram, "gram", 2)
    return T1, T2, f0, gram, doc.get("window"), doc.get("max_power")


def cmd_verify_pair(ctx):
    if ctx.args.pair:
        T1, T2, f0, gram, window, kmax = _pair_from_json(_read_json(ctx.args.pair))
    else:
        P = _pair(ctx)
        T1, T2 = P.A1, P.A2
        f0 = np.zeros(P.basis.size)
        f0[0] = 1
        gram, window, kmax = P.G.entries, P.window(2, 2).tolist(), None
    tol = ctx.tol.get("toral", 1e-10)
    rows = verify_model_hypotheses(T1, T2, f0, gram=gram, window=window, tol=tol, max_power=kmax)
    return {"dimension": int(np.asarray(T1).shape[0])}, rows, None


def cmd_suite(ctx):
    b = ctx.basis(default=(8, 8))
    cfg = SuiteConfig(n1=b.n1, n2=b.n2, seed=ctx.seed, quad=ctx.quad, tol=ctx.tol)
    return None, run_suite(cfg), None


HANDLERS = {
    "gram": cmd_gram,
    "oracle-compare": cmd_oracle_compare,
    "richter-check": cmd_richter,
    "toral-check": cmd_toral,
    "moment-check": cmd_moment,
    "wandering-check": cmd_wandering,
    "kernel": cmd_kernel,
    "adjoint-kernel": cmd_adjoint_kernel,
    "gleason": cmd_gleason,
    "koszul": cmd_koszul,
    "recover-moments": cmd_recover,
    "reconstruct-orbit": cmd_reconstruct,
    "verify-pair": cmd_verify_pair,
    "suite": cmd_suite,
}


def build_parser():
    p = argparse.ArgumentParser(prog="bidisc", description="Dirichlet-type spaces on the bidisc.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--basis", nargs=2, type=int, metavar=("N1", "N2"), help="monomial truncation")
    p.add_argument("--measure1", metavar="FILE", help="measure JSON (file, inline, or catalog:NAME); default zero")
    p.add_argument("--measure2", metavar="FILE")
    p.add_argument("--poly", metavar="FILE", help="polynomial JSON {deg, coeffs}")
    p.add_argument("--lambda", dest="lam", metavar="RE,IM,RE,IM", help="point of the bidisc")
    p.add_argument("--gram", metavar="FILE", help="Gram JSON for recover-moments / reconstruct-orbit")
    p.add_argument("--pair", metavar="FILE", help="operator pair JSON for verify-pair")
    p.add_argument("--radial", type=int, default=64, help="Gauss-Legendre radial nodes")
    p.add_argument("--angular", type=int, default=256, help="trapezoid angular nodes")
    p.add_argument("--atom-terms", type=int, default=10**6, help="terms of the atom series")
    p.add_argument("--tol", action="append", metavar="NAME=VAL", help="override a named tolerance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="FILE", help="write the JSON report here instead of stdout")
    p.add_argument("--csv", nargs="?", const="", metavar="FILE",
                   help="also write CSV (Gram entries for `gram`, check rows otherwise); "
                        "default path is --out with a .csv suffix")
    return p


def _fail(msg, code):
    print(f"bidisc: error: {msg}", file=sys.stderr)
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        ctx = Ctx(args)
        payload, rows, csv_text = HANDLERS[args.command](ctx)
    except INPUT_ERRORS as exc:
        return _fail(f"{type(exc).__name__}: {exc}", 2)
    except BidiscError as exc:
        return _fail(f"{type(exc).__name__}: {exc}", 1)

    doc = emit_report(args.command, rows, payload, ctx.meta())
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.csv is not None:
        path = args.csv or (str(Path(args.out).with_suffix(".csv")) if args.out else None)
        if path is None:
            return _fail("--csv without a path needs --out", 2)
        Path(path).write_text(csv_text if csv_text is not None else rows_to_csv(rows))

    failing = [r for r in rows if r.passed is False]
    for r in failing:
        print(f"FAIL {r.name} [{r.paper_anchor}]: value={r.value!r} tolerance={r.tolerance!r}", file=sys.stderr)
    return 1 if failing else 0


if __name__ == "__main__":
    sys.exit(main())
