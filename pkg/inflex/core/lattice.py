"""
Inflex — Polígonos de Newton
Envolventes convexas enteras, sumas de Minkowski, puntos interiores (Pick),
envolventes inferiores con invariantes δ y el cálculo de géneros.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterable, Sequence

from sympy.polys.domains import QQ

from inflex.core.algebra import (
    CYCLOTOMIC3,
    SQRT_MINUS_HALF,
    W,
    InflexError,
    MPoly,
    QuotientRing,
    ZeroPolynomialError,
    const,
    hasse_derivative,
    substitute,
    support,
    var,
)
from inflex.core.pencils import PencilSpec, atomic_inflection, d6_phi1, d6_phi2
from inflex.core.reports import ReportBuilder, UnknownCheckError, VerificationReport

logger = logging.getLogger(__name__)

Point = tuple[int, int]


class StatementError(InflexError):
    """Parameters outside the range of a stated polygon."""


class RefusedStatementError(StatementError):
    """The stated polygon cannot be read unambiguously for these parameters."""


class CenterNotOnCurveError(InflexError):
    pass


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


# ── Polígonos ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class LatticePolygon:
    """
    Convex lattice polygon: vertices counterclockwise from the lexicographic
    minimum, no three consecutive vertices collinear. One vertex is a point,
    two a segment.
    """
    vertices: tuple[Point, ...]

    @classmethod
    def hull(cls, points: Iterable[Sequence[int]]) -> "LatticePolygon":
        pts = sorted({(int(p[0]), int(p[1])) for p in points})
        if not pts:
            raise ValueError("hull of an empty point set")
        if len(pts) == 1:
            return cls((pts[0],))
        lower: list[Point] = []
        for p in pts:
            while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
                lower.pop()
            lower.append(p)
        upper: list[Point] = []
        for p in reversed(pts):
            while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
                upper.pop()
            upper.append(p)
        return cls(tuple(lower[:-1] + upper[:-1]))

    # ── Propiedades ───────────────────────────────────────────────────────────

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) < 3

    @property
    def area2(self) -> int:
        """Twice the area (shoelace)."""
        v = self.vertices
        if len(v) < 3:
            return 0
        return sum(v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1]
                   for i in range(len(v)))

    @property
    def boundary_points(self) -> int:
        v = self.vertices
        if len(v) == 1:
            return 1
        if len(v) == 2:
            return math.gcd(v[1][0] - v[0][0], v[1][1] - v[0][1]) + 1
        return sum(math.gcd(v[(i + 1) % len(v)][0] - v[i][0], v[(i + 1) % len(v)][1] - v[i][1])
                   for i in range(len(v)))

    def edges(self) -> list[Point]:
        v = self.vertices
        if len(v) == 1:
            return []
        if len(v) == 2:
            d = (v[1][0] - v[0][0], v[1][1] - v[0][1])
            return [d, (-d[0], -d[1])]
        return [(v[(i + 1) % len(v)][0] - v[i][0], v[(i + 1) % len(v)][1] - v[i][1])
                for i in range(len(v))]

    def contains(self, p: Sequence[int], strict: bool = False) -> bool:
        v = self.vertices
        if len(v) == 1:
            return not strict and tuple(p) == v[0]
        if len(v) == 2:
            if strict or _cross(v[0], v[1], p) != 0:
                return False
            return min(v[0][0], v[1][0]) <= p[0] <= max(v[0][0], v[1][0]) and \
                min(v[0][1], v[1][1]) <= p[1] <= max(v[0][1], v[1][1])
        for i in range(len(v)):
            c = _cross(v[i], v[(i + 1) % len(v)], p)
            if c < 0 or (strict and c == 0):
                return False
        return True

    def translate(self, dx: int, dy: int) -> "LatticePolygon":
        return LatticePolygon.hull((x + dx, y + dy) for x, y in self.vertices)

    def dilate(self, k: int) -> "LatticePolygon":
        if k < 1:
            raise ValueError("dilation factor must be positive")
        return LatticePolygon.hull((k * x, k * y) for x, y in self.vertices)

    def to_dict(self) -> dict:
        return {"vertices": [list(p) for p in self.vertices]}


def newton_polygon(P: MPoly, names: tuple[str, str], quotient: QuotientRing | None = None) -> LatticePolygon:
    """Convex hull of the exponent support of P in the two named variables."""
    pts = support(P, names, quotient)
    if not pts:
        raise ZeroPolynomialError("Newton polygon of the zero polynomial")
    return LatticePolygon.hull(pts)


def _half(d: Point) -> int:
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def _angle_cmp(a: Point, b: Point) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _bottom(poly: LatticePolygon) -> Point:
    return min(poly.vertices, key=lambda p: (p[1], p[0]))


def minkowski_sum(A: LatticePolygon, B: LatticePolygon) -> LatticePolygon:
    """Edge merge: start at the sum of the bottom vertices, walk the edges by angle."""
    a0, b0 = _bottom(A), _bottom(B)
    current = (a0[0] + b0[0], a0[1] + b0[1])
    edges = sorted(A.edges() + B.edges(), key=cmp_to_key(_angle_cmp))
    points = [current]
    for dx, dy in edges:
        current = (current[0] + dx, current[1] + dy)
        points.append(current)
    return LatticePolygon.hull(points)


def interior_lattice_points(P: LatticePolygon) -> tuple[int, list[Point]]:
    """Strict interior lattice points, cross-checked against Pick's theorem."""
    if P.is_degenerate:
        return 0, []
    xs = [p[0] for p in P.vertices]
    ys = [p[1] for p in P.vertices]
    inside = [(x, y) for x in range(min(xs) + 1, max(xs)) for y in range(min(ys) + 1, max(ys))
              if P.contains((x, y), strict=True)]
    pick2 = P.area2 - P.boundary_points + 2
    if pick2 != 2 * len(inside):
        raise InflexError(f"Pick mismatch on {P.vertices}: enumerated {len(inside)}, Pick {pick2 / 2}")
    return len(inside), inside


# ── Envolvente inferior y δ ───────────────────────────────────────────────────

@dataclass(frozen=True)
class LowerHull:
    vertices: tuple[Point, ...]

    def height(self, i: int) -> int | None:
        """⌊chain(i)⌋, or None outside the chain's x-range."""
        v = self.vertices
        if len(v) == 1:
            return v[0][1] if i == v[0][0] else None
        for (x0, y0), (x1, y1) in zip(v, v[1:]):
            if x0 <= i <= x1 and x1 > x0:
                return (y0 * (x1 - x0) + (y1 - y0) * (i - x0)) // (x1 - x0)
        return None

    def to_dict(self) -> dict:
        return {"vertices": [list(p) for p in self.vertices]}


def lower_hull(points: Iterable[Point]) -> LowerHull:
    """Lower chain from the leftmost-lowest point to the first vertex of minimal height."""
    pts = sorted(set(points))
    chain: list[Point] = []
    for p in pts:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
            chain.pop()
        chain.append(p)
    ymin = min(p[1] for p in chain)
    end = next(i for i, p in enumerate(chain) if p[1] == ymin)
    return LowerHull(tuple(chain[:end + 1]))


def lower_hull_delta(P: MPoly, names: tuple[str, str],
                     quotient: QuotientRing | None = None) -> tuple[LowerHull, int]:
    """
    δ = #{(i, j) : i, j ≥ 1 on or below the lower hull} for P centered at a
    point of the curve.
    """
    pts = support(P, names, quotient)
    if not pts:
        raise ZeroPolynomialError("δ of the zero polynomial")
    if (0, 0) in pts:
        raise CenterNotOnCurveError("the center does not lie on the curve")
    hull = lower_hull(pts)
    x_start, x_end = hull.vertices[0][0], hull.vertices[-1][0]
    delta = 0
    for i in range(max(1, x_start), x_end + 1):
        h = hull.height(i)
        if h is not None and h >= 1:
            delta += h
    return hull, delta


# ── Correcciones a los enunciados ─────────────────────────────────────────────

@dataclass(frozen=True)
class Correction:
    """A stated value that the computation contradicts; the check asserts ``observed``."""
    statement_id: str
    m: int
    stated: str
    observed: str
    reason: str

    def describe(self) -> str:
        return f"{self.statement_id} m={self.m}: stated {self.stated}, observed {self.observed}; {self.reason}"


CORRECTIONS: tuple[Correction, ...] = (
    Correction("d4.centered", 3, "vertex (2,1), δ = 2", "vertex (1,1), δ = 1",
               "[x·s] of P_3 centered at (√(−1/2), 1/4) is √2·i/2 ≠ 0; the stated polygons hold at m = 4, 5"),
    Correction("d4.genus", 3, "g = 0", "g = 2",
               "p_a = 10 minus δ = 6 at the origin and δ = 1 at each of the two conjugate centers"),
    Correction("d6.centered", 3, "vertex (2,2)", "vertex (3,2)",
               "P_3 centered at (∛(−1/2), 1/4) carries x³z², so the top edge ends at (3,2); "
               "the lower hull keeps δ = 1 and the m ≥ 5 polygons hold"),
    Correction("d4.vertices", 1, "[x^(2m)] = (5u)_m/m!, [x^(4m)] = (3u)_m/m!",
               "[x^(2m)] = (3u)_m/m!, [x^(4m)] = (5u)_m/m!",
               "P_1 = u·(5x⁴ + 3x² + s) fixes the labels, and they persist for every m"),
)


def corrections_for(statement_id: str, m: int | None = None) -> list[Correction]:
    return [c for c in CORRECTIONS if c.statement_id == statement_id and (m is None or c.m == m)]


# ── Polígonos enunciados ──────────────────────────────────────────────────────

def _m(params: dict, low: int = 1) -> int:
    m = int(params.get("m", 0))
    if m < low:
        raise StatementError(f"statement needs m ≥ {low}, got m={m}")
    return m


def _legendre_generic(params: dict) -> list[Point]:
    m = _m(params)
    a, b, c = params.get("abc", (1, 1, 1))
    return [(m * a + m * c - m, 0), (m * (a + b + c) - m, 0), (m * a - m, m * c), (m * a + m * b - m, m * c)]


def _legendre_newton_f(params: dict) -> list[Point]:
    a, b, c = params.get("abc", (1, 1, 1))
    return [(a + c, 0), (a + b + c, 0), (a, c), (a + b, c)]


def _legendre_half(params: dict) -> list[Point]:
    m = _m(params, 2)
    return [(0, m), (m - 2, m), (m - 2, 2), (2 * m - 1, 1), (2 * m - 1, 0), (2 * m, 0)]


def _weierstrass_centered(params: dict) -> list[Point]:
    m = _m(params, 3)
    pts = [(0, (m + 1) // 2), (0, m), (m - 2, 1), (2 * m - 1, 0), (2 * m, 0)]
    if m % 2:
        pts.append((1, (m - 1) // 2))
    return pts


def _weierstrass_ambient(params: dict) -> list[Point]:
    m = _m(params)
    return [(0, 0), (2 * m, 0), (0, m)]


def _d4_origin(params: dict) -> list[Point]:
    m = _m(params)
    return [(0, m), (2 * m, 0), (4 * m, 0)]


def _d4_ambient(params: dict) -> list[Point]:
    m = _m(params)
    return [(0, 0), (4 * m, 0), (0, m)]


def _d4_centered(params: dict) -> list[Point]:
    m = _m(params, 3)
    table = {
        3: [(0, 3), (0, 2), (1, 1), (5, 0), (12, 0)],
        4: [(0, 4), (0, 2), (2, 1), (8, 0), (16, 0)],
        5: [(0, 5), (0, 3), (1, 2), (3, 1), (9, 0), (20, 0)],
    }
    if m not in table:
        raise RefusedStatementError(
            "the D4 centered polygon for m ≥ 6 has a vertex '(⌈m/2⌉,' with a missing coordinate")
    return table[m]


def _d6_vertices(m: int) -> dict[str, Point]:
    phi2 = d6_phi2(m)
    return {
        "v1": (2 * m - (2 * m) % 3, 0),
        "v2": (4 * m + 6 * ((m - 4) // 6) + d6_phi1((m - 4) % 6), 0),
        "v3": (0, phi2),
        "v4": (3, phi2),
        "v5": (0, (2 * m) // 3),
        "v6": (0, (m - 1) // 2),
        "v7": (m - 2, 0),
        "v8": (1, (m - 3) // 2),
    }


def _d6_origin(params: dict) -> list[Point]:
    m = _m(params, 3)
    if m == 3:
        return [(0, 2), (3, 2), (6, 0), (15, 0)]
    if m == 4:
        return [(0, 2), (6, 0), (12, 0)]
    v = _d6_vertices(m)
    pts = [v["v1"], v["v2"], v["v3"], v["v5"]]
    if m % 6 in (1, 2, 3):
        pts.append(v["v4"])
    return pts


def _d6_centered(params: dict) -> list[Point]:
    m = _m(params, 3)
    if m == 3:
        return [(0, 2), (3, 2), (1, 1), (5, 0), (15, 0)]
    if m == 4:
        raise RefusedStatementError("no centered D6 polygon is stated for m = 4")
    v = _d6_vertices(m)
    pts = [v["v2"], v["v3"], v["v6"], v["v7"]]
    if m % 6 in (1, 2, 3):
        pts.append(v["v4"])
    if m % 2:
        pts.append(v["v8"])
    return pts


STATEMENT_POLYGONS = {
    "legendre.generic":     _legendre_generic,
    "legendre.newton-f":    _legendre_newton_f,
    "legendre.u-half":      _legendre_half,
    "weierstrass.centered": _weierstrass_centered,
    "weierstrass.ambient":  _weierstrass_ambient,
    "d4.origin":            _d4_origin,
    "d4.ambient":           _d4_ambient,
    "d4.centered":          _d4_centered,
    "d6.origin":            _d6_origin,
    "d6.centered":          _d6_centered,
}


def expected_polygon(statement_id: str, params: dict) -> LatticePolygon:
    """Literal polygon of a registered statement, conditional vertices resolved."""
    builder = STATEMENT_POLYGONS.get(statement_id)
    if builder is None:
        raise UnknownCheckError(f"unknown polygon statement {statement_id!r}")
    return LatticePolygon.hull(builder(params))


# ── Comprobación de polígonos calculados ──────────────────────────────────────

@dataclass(frozen=True)
class Center:
    """Point of the (x, param) plane; coordinates may live in a quotient ring."""
    coords: dict
    quotient: QuotientRing | None = None
    label: str = ""

    def shift(self, names: tuple[str, str]) -> dict:
        return {n: var(n) + (c if isinstance(c, MPoly) else const(c)) for n, c in zip(names, self.coords_for(names))}

    def coords_for(self, names: tuple[str, str]) -> list:
        return [self.coords[n] for n in names]

    def to_dict(self) -> dict:
        return {"label": self.label, "coords": {k: str(v) for k, v in self.coords.items()}}


WEIERSTRASS_CENTERS: tuple[Center, ...] = (
    Center({"x": 1, "lam": -3}, None, "(1,-3)"),
    Center({"x": W, "lam": 3 + 3 * W}, CYCLOTOMIC3, "(ζ,-3ζ²)"),
    Center({"x": -1 - W, "lam": -3 * W}, CYCLOTOMIC3, "(ζ²,-3ζ)"),
)

D4_CENTERS: tuple[Center, ...] = (
    Center({"x": 0, "s": 0}, None, "(0,0)"),
    Center({"x": W, "s": QQ(1, 4)}, SQRT_MINUS_HALF, "(√(-1/2),1/4)"),
    Center({"x": -W, "s": QQ(1, 4)}, SQRT_MINUS_HALF, "(-√(-1/2),1/4)"),
)


def centered(P: MPoly, names: tuple[str, str], center: Center) -> MPoly:
    """P in coordinates centered at ``center``."""
    return substitute(P, center.shift(names), center.quotient)


@dataclass(frozen=True)
class NewtonStatement:
    id: str
    family: str
    names: tuple[str, str]
    u_mode: str
    center: Center | None = None
    kind: str = "theorem"


NEWTON_STATEMENTS: dict[str, NewtonStatement] = {
    s.id: s for s in (
        NewtonStatement("legendre.generic", "legendre", ("x", "lam"), "symbolic"),
        NewtonStatement("legendre.u-half", "legendre", ("x", "lam"), "spec"),
        NewtonStatement("weierstrass.centered", "weierstrass", ("x", "lam"), "spec", WEIERSTRASS_CENTERS[0]),
        NewtonStatement("d4.origin", "d4", ("x", "s"), "symbolic"),
        NewtonStatement("d4.centered", "d4", ("x", "s"), "spec", D4_CENTERS[1], kind="conjecture"),
    )
}


def newton_check(statement_id: str, m_values: Iterable[int],
                 abc: tuple[int, int, int] = (1, 1, 1)) -> VerificationReport:
    """New(P_m), in the statement's coordinates, against the stated polygon."""
    st = NEWTON_STATEMENTS.get(statement_id)
    if st is None:
        raise UnknownCheckError(f"unknown Newton polygon statement {statement_id!r}")
    m_values = sorted(set(m_values))
    rb = ReportBuilder(f"{statement_id}.newton-polygon", {"m": m_values, "abc": list(abc)})
    spec = PencilSpec(st.family, abc=tuple(abc) if st.family == "legendre" else (1, 1, 1))
    compared = 0
    for m in m_values:
        try:
            expected = expected_polygon(statement_id, {"m": m, "abc": tuple(abc)})
        except StatementError as exc:
            rb.note(f"m={m}: {exc}")
            continue
        for c in corrections_for(statement_id, m):
            rb.note(c.describe())
        P = atomic_inflection(spec, m, st.u_mode).poly
        quotient = None
        if st.center is not None:
            P = centered(P, st.names, st.center)
            quotient = st.center.quotient
        got = newton_polygon(P, st.names, quotient)
        compared += 1
        rb.expect(f"m={m}", got, expected,
                  {"m": m, "computed": got.to_dict(), "expected": expected.to_dict()})
    if not compared:
        return rb.refuse("no m in range has a readable stated polygon")
    return rb.finish()


# ── Género ────────────────────────────────────────────────────────────────────

@dataclass
class GenusReport:
    arithmetic_genus: int
    deltas: list[dict]
    geometric_genus: int
    assumptions: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "arithmetic_genus": self.arithmetic_genus,
            "deltas": self.deltas,
            "geometric_genus": self.geometric_genus,
            "assumptions": self.assumptions,
        }


def is_singular_at(P: MPoly, names: tuple[str, str], center: Center) -> bool:
    """P and both partials vanish at the center (exactly, in its ring)."""
    for F in (P, hasse_derivative(P, names[0], 1), hasse_derivative(P, names[1], 1)):
        value = substitute(F, dict(zip(names, center.coords_for(names))), center.quotient)
        if value:
            return False
    return True


def genus_report(spec: PencilSpec, m: int, ambient: LatticePolygon, centers: Sequence[Center],
                 names: tuple[str, str] | None = None, u_mode=None,
                 assumptions: Sequence[str] = ()) -> GenusReport:
    """p_a = interior points of the ambient polygon; g = p_a − Σ δ over the centers."""
    names = names or ("x", spec.parameters[0])
    P = atomic_inflection(spec, m, u_mode).poly
    p_a, _ = interior_lattice_points(ambient)
    deltas = []
    for center in centers:
        if not is_singular_at(P, names, center):
            raise InflexError(f"center {center.label} is not a singular point of C_{m}")
        _, delta = lower_hull_delta(centered(P, names, center), names, center.quotient)
        deltas.append({"center": center.label, "delta": delta})
    g = p_a - sum(d["delta"] for d in deltas)
    logger.info(f"[Lattice] genus of {spec.kind} C_{m}: p_a={p_a}, g={g}")
    return GenusReport(p_a, deltas, g, list(assumptions))


def weierstrass_genus_check(m_values: Iterable[int]) -> VerificationReport:
    m_values = sorted(set(m_values))
    rb = ReportBuilder("weierstrass.genus", {"m": m_values})
    for m in m_values:
        if m < 3:
            rb.note(f"m={m} below the statement range")
            continue
        report = genus_report(PencilSpec("weierstrass"), m, expected_polygon("weierstrass.ambient", {"m": m}),
                              WEIERSTRASS_CENTERS, ("x", "lam"),
                              assumptions=["irreducible", "weierstrass.singularity-support (conjecture)"])
        rb.record(f"m={m} report", report)
        rb.expect(f"m={m} genus", report.geometric_genus, -(-(m - 1) ** 2 // 4), {"m": m, "report": report.to_dict()})
    return rb.finish()


def d4_genus_check(m_values: Iterable[int]) -> VerificationReport:
    m_values = sorted(set(m_values))
    rb = ReportBuilder("d4.genus", {"m": m_values})
    for m in m_values:
        if m < 3:
            rb.note(f"m={m} below the statement range")
            continue
        report = genus_report(PencilSpec("d4"), m, expected_polygon("d4.ambient", {"m": m}),
                              D4_CENTERS, ("x", "s"),
                              assumptions=["irreducible", "d4.singularities (conjecture)"])
        expected = 2 if m == 3 else -(-(m * m - 2 * m + 2) // 2)
        for c in corrections_for("d4.genus", m):
            rb.note(c.describe())
        rb.record(f"m={m} report", report)
        rb.expect(f"m={m} genus", report.geometric_genus, expected, {"m": m, "report": report.to_dict()})
    return rb.finish()
