"""
Inflex — Harness de verificación
Registro de comprobaciones con su anclaje, resolución de parámetros
(flags > entorno > config_harness.json > defaults) y ejecución concurrente.

Cada comprobación devuelve uno o varios VerificationReport; las excepciones
inesperadas se convierten en reportes "fail" con {"error": ...}.
"""
import logging
import re
from concurrent.futures import Executor, ThreadPoolExecutor
from typing import Any, Iterable

import numpy as np

from inflex.core.algebra import X, InflexError, to_text
from inflex.core.constants import EXIT_FAIL, EXIT_OK
from inflex.core.elimination import (
    component_geometry_checks,
    cusp_locus,
    delta_star_checks,
    edge_restriction_separability,
    nondegeneracy_check,
    surface_discriminant_check,
)
from inflex.core.ffarith import (
    c2_matches_d4_p2,
    c2_singular_points,
    char3_checks,
    fiber_correction_check,
    padic_check,
    satotate_check,
    strategy_agreement_check,
)
from inflex.core.lattice import (
    RefusedStatementError,
    corrections_for,
    d4_genus_check,
    newton_check,
    weierstrass_genus_check,
)
from inflex.core.pencils import (
    HypothesisError,
    PencilSpec,
    atomic_inflection,
    bielliptic_Qm,
    coefficient_check,
    d6_factor,
    d6_newton_checks,
    defining_identity_check,
    graded_weight_class,
    legendre_half_genus_table,
    legendre_symmetry_check,
    wronskian_away_column_check,
)
from inflex.core.ramification import (
    a1_parity_check,
    gv_sum_identity,
    mu_B_check,
    series_cross_check,
    vandermonde_N,
)
from inflex.core.reports import CheckDescriptor, ReportBuilder, UnknownCheckError, VerificationReport
from inflex.services.config_loader import load_harness_config

logger = logging.getLogger(__name__)

_RANGE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


# ── Parámetros ────────────────────────────────────────────────────────────────

def parse_range(text: str | int | Iterable[int]) -> list[int]:
    """'2..10', '3,5,7', a single integer, or an iterable of integers."""
    if isinstance(text, int):
        return [text]
    if not isinstance(text, str):
        return sorted({int(v) for v in text})
    match = _RANGE.match(text)
    if match:
        lo, hi = int(match.group(1)), int(match.group(2))
        if lo > hi:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    try:
        return sorted({int(v) for v in text.split(",") if v.strip()})
    except ValueError:
        raise ValueError(f"cannot read {text!r} as an integer range") from None


def parse_triple(text: str | Iterable[int]) -> tuple[int, int, int]:
    values = [int(v) for v in text.split(",")] if isinstance(text, str) else [int(v) for v in text]
    if len(values) != 3:
        raise ValueError(f"expected three comma-separated integers, got {text!r}")
    return tuple(values)


# ── Comprobaciones compuestas ─────────────────────────────────────────────────

def _newton(statement_id: str):
    def run(m, abc=(1, 1, 1)):
        return newton_check(statement_id, parse_range(m), parse_triple(abc))
    return run


def _coefficients(theorem_id: str):
    def run(m, abc=(1, 1, 1)):
        return coefficient_check(theorem_id, parse_range(m), parse_triple(abc))
    return run


def _weierstrass_homogeneity(m) -> VerificationReport:
    """μ₃ acts by x ↦ ζx, λ ↦ ζ²λ; P_m has weighted class (−m) mod 3."""
    m_values = parse_range(m)
    rb = ReportBuilder("weierstrass.graded-homogeneity", {"m": m_values})
    for k in m_values:
        cls = graded_weight_class(atomic_inflection(PencilSpec("weierstrass"), k).poly, {"x": 1, "lam": 2}, 3)
        rb.expect(f"m={k}", cls.residue, (-k) % 3, {"m": k, **cls.to_dict()})
    return rb.finish()


def _d6_class(m) -> VerificationReport:
    m_values = parse_range(m)
    rb = ReportBuilder("d6.class-and-factor", {"m": m_values})
    for k in m_values:
        cls = graded_weight_class(atomic_inflection(PencilSpec("d6"), k).poly, {"x": 1, "z": 3}, 3)
        rb.expect(f"m={k} class", cls.residue, (-k) % 3, {"m": k, **cls.to_dict()})
        if k >= 4:
            fac = d6_factor(k)
            rb.expect_true(f"m={k} x^e(4z-1) peels", fac.factors, fac.to_dict())
    return rb.finish()


def _bielliptic_parity(m) -> VerificationReport:
    m_values = parse_range(m)
    rb = ReportBuilder("bielliptic.even-support", {"m": m_values})
    for k in m_values:
        try:
            Q = bielliptic_Qm(k)
            rb.expect_true(f"m={k}", True)
            rb.record(f"m={k} terms", len(Q.terms()))
        except HypothesisError as exc:
            rb.expect_true(f"m={k}", False, {"m": k, "error": str(exc)})
    return rb.finish()


def _legendre_symmetry(a, m) -> list[VerificationReport]:
    return [legendre_symmetry_check(ai, mi) for ai in parse_range(a) for mi in parse_range(m)]


def _legendre_genus_table(m) -> VerificationReport:
    m_values = parse_range(m)
    rb = ReportBuilder("legendre.u-half.genus-table", {"m": m_values})
    for k in m_values:
        rb.record(f"m={k}", legendre_half_genus_table(k)["genus"])
    rb.note("conditional on the Legendre singularity-support conjecture")
    return rb.finish()


def _defining_identity(family, m) -> list[VerificationReport]:
    families = [f.strip() for f in family.split(",")] if isinstance(family, str) else list(family)
    return [defining_identity_check(PencilSpec(f), k) for f in families for k in parse_range(m)]


def _vandermonde(n, d, ell) -> VerificationReport:
    g = (d - 1) * (n - 1) // 2
    vn = vandermonde_N(n, g, ell)
    rb = ReportBuilder("ramification.vandermonde-N", {"n": n, "d": d, "ell": ell})
    rb.record("orders", vn.orders)
    rb.record("det", vn.det)
    rb.record("lower_det", vn.lower_det)
    rb.expect_true("det N = lower block det", vn.det == vn.lower_det, vn.to_dict())
    return rb.finish()


def _gv_n2(max_alpha) -> list[VerificationReport]:
    return [gv_sum_identity(2, alpha, beta) for alpha in range(2, int(max_alpha) + 1) for beta in range(1, alpha)]


def random_separable_curve(d: int, rng: np.random.Generator, spread: int = 20):
    """Π (x − r_i) over d distinct integer roots; the first root is the expansion point."""
    roots = [int(r) for r in rng.choice(np.arange(-spread, spread + 1), size=d, replace=False)]
    f = X.ring.one
    for r in roots:
        f = f * (X - r)
    return f, roots[0]


def _series(cases, samples, seed) -> list[VerificationReport]:
    rng = np.random.default_rng(int(seed))
    reports = []
    for n, d, ell in cases:
        for _ in range(int(samples)):
            f, gamma = random_separable_curve(d, rng)
            logger.debug(f"[Harness] series cross-check on {to_text(f)} at x={gamma}")
            reports.append(series_cross_check(n, d, ell, f, gamma))
    return reports


def _discriminants(m, strategy="auto") -> list[VerificationReport]:
    return [surface_discriminant_check(k, strategy=strategy) for k in parse_range(m)]


def _edge_separability(m) -> list[VerificationReport]:
    return [edge_restriction_separability(k) for k in parse_range(m)]


def _fiber(p) -> list[VerificationReport]:
    return [fiber_correction_check(q) for q in parse_range(p)]


# ── Registro ──────────────────────────────────────────────────────────────────

def _descriptor(id: str, runner, anchor: str, quote: str, kind: str = "theorem",
                corrections: tuple[str, ...] = (), **params) -> CheckDescriptor:
    return CheckDescriptor(id, runner, anchor, quote, kind, params, corrections)


# Anchors are source headings, quotes are verbatim source text.
_HASSE = "Hasse inflection polynomials"
_LEGENDRE = "Symmetries and singularities of superelliptic Legendre inflectionary curves"
_WEIERSTRASS = "Singularities and genera of superelliptic Weierstrass inflectionary curves"
_SPECIAL = "Inflectionary curves from special pencils of bielliptic curves"
_SURFACES = "Inflectionary surfaces from bielliptic curves"
_ARITHMETIC = "Arithmetic inflection of linear series on superelliptic curves"


def _corrections(*statement_ids: str) -> tuple[str, ...]:
    return tuple(c.describe() for sid in statement_ids for c in corrections_for(sid))


CHECKS: dict[str, CheckDescriptor] = {d.id: d for d in (
    _descriptor("pencils.defining-identity", _defining_identity, _HASSE,
                r"its zeroes parameterize the $x$-coordinates of zeroes of $D^m y^{\ell}$", "identity",
                family="weierstrass,d4,legendre", m="1..6"),
    _descriptor("pencils.away-wronskian", lambda n, d, ell: wronskian_away_column_check(n, d, ell),
                "A determinantal formula",
                "these local Wronskians are naturally related to explicit determinants in the atomic Hasse "
                "inflection polynomials", "identity", n=3, d=4, ell=9),
    _descriptor("legendre.generic.newton-polygon", _newton("legendre.generic"), _LEGENDRE,
                r"{\rm New}(P^{\ell}_m)= \text{Conv}((ma+mc-m,0), (ma+mb+mc-m,0), (ma-m,mc), (ma+mb-m,mc))",
                m="1..6", abc="1,1,1"),
    _descriptor("legendre.u-half.newton-polygon", _newton("legendre.u-half"), _LEGENDRE,
                r"NP^{\ell}_m:= \text{Conv}((0,m),(m-2,m),(m-2,2),(2m-1,1),(2m-1,0),(2m,0))",
                m="2..12", abc="1,1,1"),
    _descriptor("weierstrass.centered.newton-polygon", _newton("weierstrass.centered"), _WEIERSTRASS,
                r"with respect to affine coordinates centered in $(x=1,\la=-3)$", m="3..12"),
    _descriptor("d4.origin.newton-polygon", _newton("d4.origin"), _SPECIAL,
                r"is the lattice simplex with vertices $(0,m)$, $(2m,0)$ and $(4m,0)$", m="1..8"),
    _descriptor("d4.centered.newton-polygon", _newton("d4.centered"), _SPECIAL,
                r"The Newton polygons $\text{New}_p(\mc{C}_m)$ of $\mc{C}_m$ in "
                r"$p=(\pm \sqrt{\frac{-1}{2}},\frac{1}{4})$ satisfy", "conjecture", m="3..8",
                corrections=_corrections("d4.centered")),
    _descriptor("legendre.generic.vertices", _coefficients("legendre.generic.vertices"), _LEGENDRE,
                "the coefficients in $P^{\\ell}_m$ of the critical monomials", m="1..8", abc="1,1,1"),
    _descriptor("legendre.u-half.coefficients", _coefficients("legendre.u-half.coefficients"), _LEGENDRE,
                r"we will also need to prove additional vanishing statements for coefficients that arise because "
                r"$u=\frac{1}{2}$", m="2..12", abc="1,1,1"),
    _descriptor("weierstrass.centered.coefficients", _coefficients("weierstrass.centered.coefficients"),
                _WEIERSTRASS, r"$v^1_m=(0, \lceil m/2 \rceil), v^2_m=(0,m), v^3_m=(1,\frac{m-1}{2}), "
                r"v^4_m=(m-2,1), v^5_m=(2m-1,0)$, and $v^6_m=(2m,0)$", m="3..10"),
    _descriptor("d4.vertices", _coefficients("d4.vertices"), _SPECIAL,
                r"[(0,m)]P^{\ell}_m=\frac{1}{m!}(u)_m", m="1..8",
                corrections=_corrections("d4.vertices")),
    _descriptor("weierstrass.inner-edge", _coefficients("weierstrass.inner-edge"), _WEIERSTRASS,
                r"[(2j,k-j)]P^{\ell,\ast}_m= c_{j,k} \cdot (u)_k (\!(2u-2k+1)\!)^j", "conjecture", m="6..12"),
    _descriptor("weierstrass.resultant-table", lambda m: nondegeneracy_check(parse_range(m)), _WEIERSTRASS,
                "Non-degeneracy may be decided by computing the resultants", "table", m="6..10"),
    _descriptor("weierstrass.edge-separability", _edge_separability, _WEIERSTRASS,
                "are Newton non-degenerate for every positive integer $m \\geq 6$", "conjecture", m="6..12"),
    _descriptor("weierstrass.graded-homogeneity", _weierstrass_homogeneity, _WEIERSTRASS,
                r"is equipped with a $\mu_3$-symmetry given by $(x \mapsto g x,\la \mapsto g^{-1} \la)$", m="1..15"),
    _descriptor("weierstrass.genus", lambda m: weierstrass_genus_check(parse_range(m)), _WEIERSTRASS,
                r"is geometrically irreducible, and of geometric genus $\lceil \frac{(m-1)^2}{4} \rceil$",
                "conjecture", m="3..10"),
    _descriptor("weierstrass.char3", lambda: char3_checks(), _WEIERSTRASS,
                r"Reducing coefficients modulo 3, we see that $\mc{C}^{\ell}_4$ is reducible, while "
                r"$\mc{C}^{\ell}_5$ is {\it non-reduced}."),
    _descriptor("weierstrass.padic-valuations", lambda samples, seed: padic_check(int(samples), int(seed)),
                _WEIERSTRASS, "A classical theorem of Legendre establishes", "identity", samples=50, seed=0),
    _descriptor("legendre.symmetry", _legendre_symmetry, _LEGENDRE, "has symmetries", a="1..2", m="1..8"),
    _descriptor("legendre.u-half.genus-table", _legendre_genus_table,
                "Inflectionary curves from superelliptic Legendre and Weierstrass pencils",
                r"$p_g=~\max(0,\binom{2m-1}{2}-3 \lfloor \frac{(m-1)^2}{2} \rfloor -3m+3)$", "table", m="1..8"),
    _descriptor("d4.genus", lambda m: d4_genus_check(parse_range(m)), _SPECIAL,
                "has geometric genus 0 when $m=3$", "conjecture", m="3",
                corrections=_corrections("d4.genus", "d4.centered")),
    _descriptor("d6.class-and-factor", _d6_class, _SPECIAL,
                r"the inflection polynomial $P^{\ell}_m$ factors as "
                r"$P^{\ell}_m=x^{(-m) \text{ mod }3} \cdot (4z-1) P^{\ell}_{m,*}$", m="1..10"),
    _descriptor("d6.newton-polygons", lambda m: [d6_newton_checks(k) for k in parse_range(m)], _SPECIAL,
                r"it is natural to examine the Newton polygons of inflection polynomials that arise from the "
                r"$D_6$ pencil", "conjecture", m="3,5,6", corrections=_corrections("d6.centered")),
    _descriptor("bielliptic.even-support", _bielliptic_parity,
                "Inflectionary curves and surfaces from bielliptic curves of genus two",
                r"is divisible by $x$ whenever $m>1$ is odd", m="1..10"),
    _descriptor("bielliptic.discriminant", _discriminants, "Further components of the inflectionary discriminant",
                "the reduced subscheme of the inflectionary discriminant decomposes as", m="3..4", strategy="auto"),
    _descriptor("bielliptic.delta-star", lambda: delta_star_checks(), _SURFACES,
                r"has nodes in the points $(3\zeta^j,3\zeta^{-j})$"),
    _descriptor("bielliptic.cusp-locus", lambda: cusp_locus(), _SURFACES,
                r"divided into two groups of four each for $t=1 \pm \sqrt{\frac{-1}{3}}$"),
    _descriptor("bielliptic.components", lambda: component_geometry_checks(),
                "Further components of the inflectionary discriminant", "are smooth rational curves"),
    _descriptor("ramification.mu-B", lambda n, alpha, beta: mu_B_check(n, alpha, beta), _ARITHMETIC,
                r"is precisely the local inflectionary multiplicity $\mu(\mc{B})$", n=3, alpha=3, beta=1),
    _descriptor("ramification.vandermonde-N", _vandermonde, _ARITHMETIC,
                r"$N(n,g,\ell)=(\binom{\mu_j}{i})_{0 \leq i,j \leq \ell-g}$", "identity", n=3, d=4, ell=9),
    _descriptor("ramification.gv-identity", lambda n, alpha, beta: gv_sum_identity(n, alpha, beta), _ARITHMETIC,
                "a seemingly novel decomposition of a Vandermonde determinant as a linear combination of "
                "determinants of matrices $M(p)$", n=3, alpha=3, beta=1),
    _descriptor("ramification.gv-n2", _gv_n2, _ARITHMETIC, "Let $n=2$, so $X$ is a hyperelliptic curve.",
                max_alpha=6),
    _descriptor("ramification.a1-parity", lambda max_n, max_g, max_ell: a1_parity_check(max_n, max_g, max_ell),
                "A global inflection formula",
                r"whenever either $\ell$ or the dimension of $|\ell \infty_X|$ as a vector space is even",
                max_n=4, max_g=6, max_ell=20),
    _descriptor("ramification.series-cross-check", _series, _ARITHMETIC,
                r"The lowest $y$-adically valued term of $w(\mc{B})$ is equal to", "identity",
                cases=[(2, 5, 6), (3, 4, 9)], samples=5, seed=0),
    _descriptor("d4.c2.definition", lambda: c2_matches_d4_p2(), _SPECIAL,
                r"as a curve in $\mb{A}^2_{x,s}$, $\mc{C}_2$ has defining equation", "identity"),
    _descriptor("d4.c2.singular-points", lambda: c2_singular_points(), _SPECIAL,
                r"has singular points $[0:1:0]$ and $[0:0:1]$"),
    _descriptor("d4.c2.count-strategies", lambda bound: strategy_agreement_check(int(bound)), _SPECIAL,
                "We need only to look at the fibers over the singular points in the resolution.", "plumbing",
                bound=200),
    _descriptor("d4.c2.fiber-correction", _fiber, _SPECIAL, "which yields", p="5,7,11,13"),
    _descriptor("d4.c2.sato-tate", lambda bound, bins: satotate_check(int(bound), int(bins)), _SPECIAL,
                "equidistributed with respect to the Sato-Tate measure on an elliptic curve without complex "
                "multiplication", "conjecture", bound=10000, bins=40),
)}


# Keys of config_harness.json that feed check parameters.
_CONFIG_PARAM_KEYS = {
    "d4.c2.sato-tate": {"bound": "prime_bound", "bins": "histogram_bins"},
    "bielliptic.discriminant": {"strategy": "resultant_strategy"},
}


def catalog() -> list[CheckDescriptor]:
    return [CHECKS[k] for k in sorted(CHECKS)]


def get_check(check_id: str) -> CheckDescriptor:
    desc = CHECKS.get(check_id)
    if desc is None:
        raise UnknownCheckError(f"unknown check {check_id!r}")
    return desc


def resolve_params(desc: CheckDescriptor, overrides: dict | None = None, config: dict | None = None) -> dict:
    """Descriptor defaults, then config (m_ranges and global keys), then explicit overrides."""
    params = dict(desc.params)
    config = config or {}
    for name, key in _CONFIG_PARAM_KEYS.get(desc.id, {}).items():
        if key in config:
            params[name] = config[key]
    preset = (config.get("m_ranges") or {}).get(desc.id)
    if preset is not None and "m" in params:
        params["m"] = preset
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in params:
            logger.debug(f"[Harness] {desc.id} ignores parameter {key!r}")
            continue
        params[key] = value
    return params


# ── Ejecución ─────────────────────────────────────────────────────────────────

def _error_report(desc: CheckDescriptor, params: dict, exc: Exception, verdict: str = "fail") -> VerificationReport:
    rb = ReportBuilder(desc.id, params)
    if verdict == "refused":
        return rb.refuse(str(exc))
    rb.expect("completed", False, True, {"error": f"{type(exc).__name__}: {exc}"})
    return rb.finish()


def run_check(check_id: str, overrides: dict | None = None, config: dict | None = None) -> list[VerificationReport]:
    desc = get_check(check_id)
    params = resolve_params(desc, overrides, config)
    logger.info(f"[Harness] running {desc.id} with {params}")
    try:
        result = desc.runner(**params)
    except RefusedStatementError as exc:
        return [_error_report(desc, params, exc, "refused")]
    except (InflexError, ValueError, ArithmeticError) as exc:
        return [_error_report(desc, params, exc)]
    except Exception as exc:
        logger.exception(f"[Harness] {desc.id} crashed")
        return [_error_report(desc, params, exc)]
    return list(result) if isinstance(result, (list, tuple)) else [result]


def run_checks(check_ids: Iterable[str] | str, overrides: dict | None = None, threads: int | None = None,
               config: dict | None = None, executor: Executor | None = None) -> list[VerificationReport]:
    """Run several checks, concurrently when threads > 1; reports ordered by id."""
    config = config if config is not None else load_harness_config()
    if check_ids == "all":
        ids = sorted(CHECKS)
    else:
        ids = sorted(set(check_ids))
        for cid in ids:
            get_check(cid)
    threads = int(threads or config.get("threads") or 1)

    def job(cid: str) -> list[VerificationReport]:
        return run_check(cid, overrides, config)

    if executor is not None:
        batches = list(executor.map(job, ids))
    elif threads > 1 and len(ids) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(job, ids))
    else:
        batches = [job(cid) for cid in ids]
    reports = [r for batch in batches for r in batch]
    return sorted(reports, key=lambda r: r.id)


def summarize(reports: Iterable[VerificationReport]) -> dict[str, int]:
    out = {"pass": 0, "fail": 0, "refused": 0}
    for r in reports:
        out[r.verdict] += 1
    return out


def exit_code(reports: Iterable[VerificationReport]) -> int:
    """0 when every verdict is pass or refused, 1 on any fail."""
    return EXIT_FAIL if any(r.verdict == "fail" for r in reports) else EXIT_OK


def describe(desc: CheckDescriptor) -> dict[str, Any]:
    return desc.to_dict()
