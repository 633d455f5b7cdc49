"""
Inflex — Eliminación
Lugares singulares por resultantes, discriminantes de la superficie bielíptica
y sus componentes, la curva Δ* con sus nodos y cúspides, y los resultantes de
no degeneración de Weierstrass.
"""
import logging
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field

from sympy import Poly, Symbol, factor_list
from sympy.polys.domains import QQ

from inflex.core.algebra import (
    CYCLOTOMIC3,
    LAM,
    RING,
    S1,
    S2,
    SQRT_MINUS_THIRD,
    T,
    U,
    W,
    X,
    Z,
    InflexError,
    MPoly,
    QuotientRing,
    ZeroPolynomialError,
    coefficient,
    const,
    discriminant,
    divides,
    exact_divide,
    gcd_squarefree,
    hasse_derivative,
    leading_coefficient,
    multiplicity,
    poly_gcd,
    proportional,
    resultant,
    substitute,
    to_text,
    translate,
    var,
    variables_of,
)
from inflex.core.lattice import (
    Center,
    LatticePolygon,
    centered,
    interior_lattice_points,
    lower_hull_delta,
    newton_polygon,
)
from inflex.core.pencils import (
    WEIERSTRASS_CENTER,
    PencilSpec,
    atomic_inflection,
    bielliptic_Qm,
    halve_x,
)
from inflex.core.reports import ReportBuilder, VerificationReport
from inflex.services.fixtures import bielliptic_components, load_component, nondegeneracy_row

logger = logging.getLogger(__name__)


class UnsupportedRingError(InflexError):
    """Point coordinates outside QQ and the registered quotient rings."""


# ── Puntos singulares ─────────────────────────────────────────────────────────

@dataclass
class SingularityReport:
    label: str
    point: dict
    verified: bool
    values: dict[str, str]
    polygon: LatticePolygon | None = None
    delta: int | None = None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "point": {k: str(v) for k, v in self.point.items()},
            "verified": self.verified,
            "values": self.values,
            "polygon": self.polygon.to_dict() if self.polygon else None,
            "delta": self.delta,
        }


def _check_coordinate(value, quotient: QuotientRing | None) -> None:
    if isinstance(value, int) or QQ.of_type(value):
        return
    if isinstance(value, MPoly):
        allowed = {quotient.name} if quotient else set()
        extra = set(variables_of(value)) - allowed
        if value.ring != RING or extra:
            raise UnsupportedRingError(f"coordinate {value} involves {sorted(extra)} outside the point ring")
        return
    raise UnsupportedRingError(f"unsupported coordinate type {type(value).__name__}")


def verify_singular_point(P: MPoly, point: dict, quotient: QuotientRing | None = None,
                          label: str = "") -> SingularityReport:
    """
    Exact evaluation of P and both partials at ``point`` ({name: coordinate}).
    A verified point also gets its local Newton polygon and δ.
    """
    if len(point) != 2:
        raise ValueError("a plane point needs exactly two coordinates")
    for value in point.values():
        _check_coordinate(value, quotient)
    names = tuple(point)
    center = Center(dict(point), quotient, label or str(tuple(str(v) for v in point.values())))
    values = {}
    for tag, F in (("P", P), (f"P_{names[0]}", hasse_derivative(P, names[0], 1)),
                   (f"P_{names[1]}", hasse_derivative(P, names[1], 1))):
        values[tag] = substitute(F, point, quotient)
    verified = not any(values.values())
    report = SingularityReport(center.label, dict(point), verified, {k: to_text(v) for k, v in values.items()})
    if verified:
        local = centered(P, names, center)
        report.polygon = newton_polygon(local, names, quotient)
        _, report.delta = lower_hull_delta(local, names, quotient)
    logger.debug(f"[Elim] punto {center.label}: singular={verified}, δ={report.delta}")
    return report


@dataclass
class SingularEliminant:
    param: str
    eliminant: MPoly
    resultants: dict[str, MPoly]
    degenerate: list[str] = field(default_factory=list)
    rational_roots: list = field(default_factory=list)
    factor_degrees: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "param": self.param,
            "eliminant": to_text(self.eliminant),
            "degenerate": self.degenerate,
            "rational_roots": [str(r) for r in self.rational_roots],
            "factor_degrees": self.factor_degrees,
        }


def singular_candidates(P: MPoly, param: str, strategy: str = "auto",
                        executor: Executor | None = None) -> SingularEliminant:
    """
    R(param) = squarefree part of gcd(res_x(P, P_x), res_x(P, P_param)).
    Every singular point of P = 0 has its param-coordinate among the roots of R.
    """
    names = set(variables_of(P))
    if not {"x", param} <= names:
        raise ValueError(f"P must involve both x and {param}")
    resultants, degenerate = {}, []
    for tag, name in (("res_x(P,P_x)", "x"), (f"res_x(P,P_{param})", param)):
        d = hasse_derivative(P, name, 1)
        r = resultant(P, d, "x", strategy, executor)
        resultants[tag] = r
        if not r:
            degenerate.append(tag)
            logger.warning(f"[Elim] {tag} se anula idénticamente")
    nonzero = [r for r in resultants.values() if r]
    if not nonzero:
        raise ZeroPolynomialError("both resultants vanish; P has a repeated factor in x")
    g = nonzero[0]
    for r in nonzero[1:]:
        g = poly_gcd(g, r)
    if g.is_ground:
        R = RING.one
    else:
        _, R = gcd_squarefree(g, [param])
        R = R.monic()
    out = SingularEliminant(param, R, resultants, degenerate)
    if not R.is_ground:
        sym = Symbol(param)
        out.rational_roots = sorted(Poly(R.as_expr(), sym).ground_roots())
        out.factor_degrees = sorted(Poly(f, sym).degree() for f, _ in factor_list(R.as_expr())[1])
    logger.info(f"[Elim] eliminante en {param}: grado {R.degree(var(param))}, "
                f"raíces racionales {[str(r) for r in out.rational_roots]}")
    return out


# ── Discriminante de la superficie bielíptica ─────────────────────────────────

@dataclass
class LedgerEntry:
    name: str
    component: MPoly
    divides: bool
    multiplicity: int
    full_multiplicity: int

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "component": to_text(self.component),
            "divides": self.divides,
            "multiplicity": self.multiplicity,
            "full_multiplicity": self.full_multiplicity,
        }


@dataclass
class ComponentLedger:
    target: MPoly
    entries: list[LedgerEntry]

    def product_divides(self) -> bool:
        product = RING.one
        for e in self.entries:
            if e.divides:
                product *= e.component
        return divides(product, self.target)

    def to_dict(self) -> dict:
        return {"entries": [e.to_dict() for e in self.entries],
                "product_divides": self.product_divides()}


@dataclass
class SurfaceDiscriminant:
    """
    Q_m(x) = R(x²) gives disc_x(Q_m) ≐ R(0)·disc_{x²}(R)², so the reduced
    locus is that of lc(R)·R(0)·disc_{x²}(R). lc(R) is where a root of Q_m
    escapes to x = ∞; it is non-constant once the x-degree of P_m drops
    (u = 1/2, m ≥ 4).
    """
    m: int
    ell: int
    constant_term: MPoly
    leading: MPoly
    discriminant: MPoly
    reduced: MPoly
    ledger: ComponentLedger
    variable: str = "x^2"

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "ell": self.ell,
            "variable": self.variable,
            "constant_term": to_text(self.constant_term),
            "leading_coefficient": to_text(self.leading),
            "reduced_terms": len(self.reduced.terms()),
            "ledger": self.ledger.to_dict(),
        }


def surface_discriminant(m: int, ell: int = 1, strategy: str = "auto",
                         executor: Executor | None = None) -> SurfaceDiscriminant:
    """Discriminant of Q_m in x², its reduced locus and the ledger of tabulated components."""
    if m < 2:
        raise ValueError("the inflectionary discriminant starts at m = 2")
    R = halve_x(bielliptic_Qm(m, ell))
    logger.info(f"[Elim] Δ_{m}: discriminante en x² de grado {R.degree(X)}")
    disc = discriminant(R, "x", strategy, executor)
    if not disc:
        raise ZeroPolynomialError(f"the discriminant of Q_{m} vanishes identically")
    r0 = R.coeff_wrt(X, 0)
    lc = leading_coefficient(R, "x")
    target = disc * r0 if r0 else disc
    if not lc.is_ground:
        target *= lc
    _, reduced = gcd_squarefree(target, ["s1", "s2"])
    entries = []
    for fixture in bielliptic_components(m):
        comp = fixture.poly
        ok = divides(comp, reduced)
        full = 0
        if ok:
            full = (2 * multiplicity(comp, disc) + (multiplicity(comp, r0) if r0 else 0)
                    + (0 if lc.is_ground else multiplicity(comp, lc)))
        entries.append(LedgerEntry(fixture.name, comp, ok,
                                   multiplicity(comp, reduced) if ok else 0, full))
    return SurfaceDiscriminant(m, ell, r0, lc, disc, reduced, ComponentLedger(reduced, entries))


def surface_discriminant_check(m: int, ell: int = 1, strategy: str = "auto",
                               executor: Executor | None = None) -> VerificationReport:
    rb = ReportBuilder("bielliptic.discriminant", {"m": m, "ell": ell, "strategy": strategy})
    rb.note("resultant taken in the variable x²; x = 0 enters through R(0) and x = ∞ through lc(R)")
    result = surface_discriminant(m, ell, strategy, executor)
    for entry in result.ledger.entries:
        rb.expect(f"{entry.name} divides", entry.divides, True, {"component": entry.name})
        if entry.divides:
            rb.expect(f"{entry.name} multiplicity", entry.multiplicity, 1, entry.to_dict())
            rb.record(f"{entry.name} multiplicity in disc_x", entry.full_multiplicity)
    rb.expect_true("product of components divides", result.ledger.product_divides())
    rb.record("ledger", result.to_dict())
    return rb.finish()


# ── Δ*: parametrización, nodos y cúspides ─────────────────────────────────────

DELTA_STAR_HOMOGENEOUS: MPoly = (-S1**2 * S2**2 + 4 * S1**3 * Z + 4 * S2**3 * Z
                                 - 18 * S1 * S2 * Z**2 + 27 * Z**4)

DELTA_STAR_PARAMETRIZATION: dict[str, MPoly] = {
    "s1": (T - 2) * (3 * T**3 - 6 * T**2 + 12 * T - 8),
    "s2": T * (3 * T**3 - 12 * T**2 + 24 * T - 16),
    "z": T**2 * (T - 2)**2,
}

CUSP_PARAMETER_POLY: MPoly = 3 * T**2 - 6 * T + 4

# (3ζ, 3ζ⁻¹) para ζ = 1, w, w² en Q[w]/(w²+w+1).
DELTA_STAR_NODES: tuple[tuple[MPoly, MPoly], ...] = (
    (const(3), const(3)),
    (3 * W, 3 * (-1 - W)),
    (3 * (-1 - W), 3 * W),
)


def _vanishes_with_gradient(F: MPoly, point: dict, quotient: QuotientRing | None) -> bool:
    return all(not substitute(G, point, quotient)
               for G in (F, hasse_derivative(F, "s1", 1), hasse_derivative(F, "s2", 1)))


def delta_star_checks() -> VerificationReport:
    rb = ReportBuilder("bielliptic.delta-star")
    affine = load_component("delta_star").poly
    rb.expect("dehomogenized quartic = fixture", to_text(substitute(DELTA_STAR_HOMOGENEOUS, {"z": 1})),
              to_text(affine))
    composed = substitute(DELTA_STAR_HOMOGENEOUS, DELTA_STAR_PARAMETRIZATION)
    rb.expect("parametrization lies on the quartic", to_text(composed), "0")
    at_one = {k: substitute(v, {"t": 1}) for k, v in DELTA_STAR_PARAMETRIZATION.items()}
    rb.expect("t=1 image", [to_text(at_one[k]) for k in ("s1", "s2", "z")], ["-1", "-1", "1"])
    smooth = {"s1": -1, "s2": -1}
    rb.expect_true("(-1,-1) on the quartic", not substitute(affine, smooth))
    rb.expect_true("(-1,-1) is smooth", not _vanishes_with_gradient(affine, smooth, None))
    for j, (a, b) in enumerate(DELTA_STAR_NODES):
        quotient = CYCLOTOMIC3 if j else None
        rb.expect_true(f"node (3ζ^{j}, 3ζ^-{j})",
                       _vanishes_with_gradient(affine, {"s1": a, "s2": b}, quotient),
                       {"node": j})
    return rb.finish()


def _strip_factor(G: MPoly, F: MPoly) -> tuple[MPoly, int]:
    e = 0
    while divides(F, G):
        G = exact_divide(G, F)
        e += 1
    return G, e


def cusp_fibre_degree(c: MPoly = CUSP_PARAMETER_POLY) -> int:
    """
    x-degree of gcd_x(res_t(c, g), res_t(c, D¹g), res_t(c, D²g)): the
    x-coordinates of the cusps over both roots of c together.
    """
    g = _cusp_family()
    h = None
    for F in (g, hasse_derivative(g, "x", 1), hasse_derivative(g, "x", 2)):
        r = resultant(c, F, "t")
        h = r if h is None else poly_gcd(h, r)
    return h.degree(X)


def _cusp_family() -> MPoly:
    s = DELTA_STAR_PARAMETRIZATION
    return s["z"] * X**6 - s["s1"] * X**4 + s["s2"] * X**2 - s["z"]


def cusp_locus() -> VerificationReport:
    """
    Cusps of Δ*: t with a triple root of g(t, x) = z x⁶ − s1 x⁴ + s2 x² − z.
    res_x(g, D¹g) vanishes along the whole parametrization, so the gcd runs
    over the nonzero resultants among res_x(g, D²g) and res_x(D¹g, D²g).
    """
    rb = ReportBuilder("bielliptic.cusp-locus")
    g = _cusp_family()
    d1, d2 = hasse_derivative(g, "x", 1), hasse_derivative(g, "x", 2)
    r1 = resultant(g, d1, "x")
    rb.record("res_x(g, D¹g) vanishes", not r1)
    if r1:
        rb.note("res_x(g, D¹g) is not identically zero")
    gcd = None
    for tag, (A, B) in (("res_x(g, D²g)", (g, d2)), ("res_x(D¹g, D²g)", (d1, d2))):
        r = resultant(A, B, "x")
        if not r:
            rb.note(f"{tag} vanishes identically; left out of the gcd")
            continue
        gcd = r if gcd is None else poly_gcd(gcd, r)
    if gcd is None:
        return rb.refuse("every resultant vanishes")
    for tag, F in (("t", T), ("t-2", T - 2)):
        gcd, e = _strip_factor(gcd, F)
        if e:
            rb.note(f"removed ({tag})^{e} coming from z(t) = t²(t−2)²")
    rb.record("gcd", to_text(gcd.monic()) if not gcd.is_ground else to_text(gcd))
    rb.expect_true("3t²−6t+4 divides the gcd", divides(CUSP_PARAMETER_POLY, gcd))
    for sign in (1, -1):
        root = 1 + sign * W
        rb.expect_true(f"t = 1 {'+' if sign > 0 else '-'} √(−1/3) is a root",
                       not substitute(CUSP_PARAMETER_POLY, {"t": root}, SQRT_MINUS_THIRD))
    disc = 6 ** 2 - 4 * 3 * 4
    rb.expect_true("3t²−6t+4 has no rational root", disc < 0 or math.isqrt(disc) ** 2 != disc,
                   {"discriminant": disc})
    try:
        rb.record("cusp fibre x-degree", cusp_fibre_degree())
        rb.note("eight cusp solutions expected, four over each root")
    except ZeroPolynomialError as exc:
        rb.note(f"fibre count skipped: {exc}")
    return rb.finish()


# ── Envolvente inferior de Weierstrass ────────────────────────────────────────

def gamma_jk(j: int, k: int) -> MPoly:
    """γ_{j,k}(u) = 6^j / ((k−j)! ∏ i(2i+1)) · ∏_{i=1..j} (u − (k − i + 1/2))."""
    if not 1 <= j < k:
        raise ValueError("γ_{j,k} needs 1 ≤ j < k")
    scale = QQ(6 ** j, math.factorial(k - j) * math.prod(i * (2 * i + 1) for i in range(1, j + 1)))
    out = const(scale)
    for i in range(1, j + 1):
        out *= U - QQ(2 * (k - i) + 1, 2)
    return out


def lower_hull_polynomials(k: int, parity: str) -> MPoly:
    """Q_{k,odd} or Q_{k,even}: monic of degree k−1 in λ, coefficients in u."""
    if k < 2:
        raise ValueError("lower-hull polynomials start at k = 2")
    if parity == "odd":
        return LAM ** (k - 1) + math.factorial(k) * sum(
            (gamma_jk(j, k) * LAM ** (k - 1 - j) for j in range(1, k)), RING.zero)
    if parity == "even":
        inner = sum(((2 * j + 1) * gamma_jk(j, k) * LAM ** (k - 1 - j) for j in range(1, k - 1)), RING.zero)
        return LAM ** (k - 1) + 2 * 3 ** (k - 2) * (inner + gamma_jk(k - 1, k))
    raise ValueError(f"parity must be 'odd' or 'even', not {parity!r}")


def _parity(m: int) -> str:
    return "odd" if m % 2 else "even"


def nondegeneracy_resultant(m: int) -> MPoly:
    """res_λ(Q_k, D¹_λ Q_k) with k = ⌊m/2⌋, a polynomial in u."""
    if m < 6:
        raise ValueError("the non-degeneracy resultants start at m = 6")
    Q = lower_hull_polynomials(m // 2, _parity(m))
    return resultant(Q, hasse_derivative(Q, "lam", 1), "lam")


def nondegeneracy_check(m_values) -> VerificationReport:
    m_values = sorted(set(m_values))
    rb = ReportBuilder("weierstrass.resultant-table", {"m": m_values})
    for m in m_values:
        if m < 6:
            rb.note(f"m={m} below the table")
            continue
        res = nondegeneracy_resultant(m)
        row = nondegeneracy_row(m)
        if row is None:
            rb.note(f"m={m}: no tabulated row; only the value at u=1/2 is checked")
        else:
            c = proportional(res, row)
            rb.expect_true(f"m={m} proportional to the table", c is not None,
                           {"m": m, "computed": to_text(res), "table": to_text(row)})
            if c is not None:
                rb.record(f"m={m} scalar", str(c))
        at_half = substitute(res, {"u": QQ(1, 2)})
        rb.expect_true(f"m={m} nonzero at u=1/2", bool(at_half), {"m": m})
    return rb.finish()


def is_separable(h: MPoly, name: str) -> bool:
    """gcd(h, D¹h) is constant."""
    if not h:
        raise ZeroPolynomialError("separability of the zero polynomial")
    d = hasse_derivative(h, name, 1)
    if not d:
        return True
    return poly_gcd(h, d).is_ground


def inner_edge_restriction(m: int, ell: int = 1, n: int | None = None) -> MPoly:
    """
    λ^{-1}·P*_m restricted to the inner lower-hull edge at x = 1 (and x^{-1}
    for odd m); P*_m is the Weierstrass P_m centered at (1, −3).
    """
    if m < 6:
        raise ValueError("the inner-edge restriction is stated for m ≥ 6")
    n = n if n is not None else 2 * ell
    P = translate(atomic_inflection(PencilSpec("weierstrass", n=n, ell=ell), m).poly, WEIERSTRASS_CENTER)
    k = m // 2
    offset = m % 2
    h = RING.zero
    for j in range(k):
        c = coefficient(P, {"x": 2 * j + offset, "lam": k - j})
        h += c * LAM ** (k - j - 1)
    return h


def edge_restriction_separability(m: int, ell: int = 1, n: int | None = None) -> VerificationReport:
    n = n if n is not None else 2 * ell
    rb = ReportBuilder("weierstrass.edge-separability", {"m": m, "ell": ell, "n": n})
    h = inner_edge_restriction(m, ell, n)
    rb.record("restriction", to_text(h))
    if h.is_ground:
        return rb.refuse("the edge restriction is constant in λ")
    separable = is_separable(h, "lam")
    rb.expect_true("separable in λ", separable, {"m": m, "restriction": to_text(h)})
    u = QQ(ell, n)
    Q = substitute(lower_hull_polynomials(m // 2, _parity(m)), {"u": u})
    rb.record("proportional to the lower-hull polynomial", proportional(h, Q) is not None)
    res_at_u = substitute(nondegeneracy_resultant(m), {"u": u})
    rb.expect("consistent with the resultant at u", separable, bool(res_at_u),
              {"m": m, "resultant_at_u": to_text(res_at_u)})
    return rb.finish()


# ── Geometría de las componentes ──────────────────────────────────────────────

def _newton_s(P: MPoly) -> LatticePolygon:
    return newton_polygon(P, ("s1", "s2"))


def _no_affine_singularity(F: MPoly) -> bool:
    """gcd over s2 of res_s1(F, F_s1) and res_s1(F, F_s2) is a nonzero constant."""
    g = None
    for name in ("s1", "s2"):
        d = hasse_derivative(F, name, 1)
        if not d:
            continue
        if d.is_ground:
            return True
        r = resultant(F, d, "s1")
        g = r if g is None else poly_gcd(g, r)
    return g is not None and bool(g) and g.is_ground


def component_geometry_checks() -> list[VerificationReport]:
    reports = []
    base = _newton_s(load_component("delta_star").poly)

    rb = ReportBuilder("bielliptic.components.newton")
    for name, factor, interior in (("bielliptic_m4_3", 1, 3), ("bielliptic_m4_4", 2, 17),
                                   ("bielliptic_m5_3", 5, 131)):
        poly = _newton_s(load_component(name).poly)
        rb.expect(f"New({name}) = {factor}·New(Δ*)", poly, base.dilate(factor), poly.to_dict())
        rb.expect(f"{name} interior points", interior_lattice_points(poly)[0], interior)
    rb.record("bielliptic_m3_2 interior points", interior_lattice_points(_newton_s(load_component("bielliptic_m3_2").poly))[0])
    reports.append(rb.finish())

    rb = ReportBuilder("bielliptic.components.singular-points")
    quartic = load_component("bielliptic_m4_3").poly
    for j, (a, b) in enumerate(DELTA_STAR_NODES):
        point = {"s1": a * QQ(-5, 3), "s2": b * QQ(-5, 3)}
        rb.expect_true(f"Δ_4,3 singular at (−5ζ^{j}, −5ζ^-{j})",
                       _vanishes_with_gradient(quartic, point, CYCLOTOMIC3 if j else None), {"node": j})
    reports.append(rb.finish())

    rb = ReportBuilder("bielliptic.components.smooth")
    for name in ("bielliptic_m4_1", "bielliptic_m4_2", "bielliptic_m5_2"):
        rb.expect_true(f"{name} smooth", _no_affine_singularity(load_component(name).poly), {"component": name})
    reports.append(rb.finish())
    return reports
