"""
Inflex — REST API v1
Endpoints documentados con OpenAPI sobre el harness y los cálculos exactos.

Base URL: /api/v1
OpenAPI docs: /docs   (Swagger UI)
              /redoc  (ReDoc)
"""
import logging
from typing import Any, Optional

from fastapi import APIRouter, HTTPException, Path, Query
from pydantic import BaseModel, Field

from inflex.core.algebra import InflexError, to_text
from inflex.core.ffarith import curve_model, point_count_record
from inflex.core.lattice import D4_CENTERS, WEIERSTRASS_CENTERS, centered, interior_lattice_points, newton_polygon
from inflex.core.modp import BadPrimeError
from inflex.core.pencils import FAMILIES, PencilSpec, atomic_inflection
from inflex.core.reports import UnknownCheckError
from inflex.services import export, harness
from inflex.services.config_loader import load_harness_config

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1", tags=["API v1"])

_CENTERS = {"weierstrass": WEIERSTRASS_CENTERS, "d4": D4_CENTERS}


# ── Pydantic schemas ──────────────────────────────────────────────────────────

class CheckOut(BaseModel):
    id: str
    anchor: str
    quote: str
    kind: str
    params: dict[str, Any]
    corrections: list[str] = []


class ReportOut(BaseModel):
    id: str
    params: dict[str, Any]
    verdict: str                      # pass | fail | refused
    computed: Any = None
    expected: Any = None
    counterexample: Any = None
    notes: list[str] = []
    millis: int = 0


class CheckRunIn(BaseModel):
    params: dict[str, Any] = Field(default_factory=dict, description="Overrides, e.g. {\"m\": \"2..6\"}")


class PencilIn(BaseModel):
    family: str = Field(..., description="legendre | weierstrass | d4 | d6 | bielliptic | custom")
    m: int = Field(..., ge=1, le=40)
    u: Optional[str] = Field(None, description="'spec', 'symbolic' or a rational such as 1/2")
    n: Optional[int] = Field(None, ge=2)
    ell: int = Field(1, ge=1)
    abc: list[int] = Field(default_factory=lambda: [1, 1, 1])
    f: Optional[str] = None


class InflectOut(BaseModel):
    m: int
    spec: dict[str, Any]
    u_mode: str
    poly: str
    denominator_primes: list[int]


class NewtonIn(PencilIn):
    center: Optional[int] = Field(None, ge=0, description="index of a singular center of the family")
    svg: bool = False


class NewtonOut(BaseModel):
    family: str
    m: int
    center: str
    vertices: list[list[int]]
    interior_points: int
    svg: Optional[str] = None


class CountOut(BaseModel):
    curve: str
    p: int
    count: int
    e: int
    e_tilde: Optional[float] = None
    strategy: str


# ── Helpers ───────────────────────────────────────────────────────────────────

def _spec(body: PencilIn) -> PencilSpec:
    if body.family not in FAMILIES:
        raise HTTPException(status_code=422, detail=f"Familia desconocida: {body.family}")
    try:
        return PencilSpec(body.family, n=body.n or 2 * body.ell, ell=body.ell, abc=tuple(body.abc),
                          custom=body.f or "")
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


# ── Endpoints ─────────────────────────────────────────────────────────────────

@router.get(
    "/checks",
    response_model=list[CheckOut],
    summary="Catálogo de comprobaciones",
    description="Lista todas las comprobaciones registradas con su anclaje, cita y parámetros por defecto.",
)
def list_checks():
    return [d.to_dict() for d in harness.catalog()]


@router.post(
    "/checks/{check_id}",
    response_model=list[ReportOut],
    summary="Ejecutar comprobación",
    description=(
        "Ejecuta una comprobación registrada y devuelve sus reportes. "
        "Los parámetros enviados reemplazan a los de config_harness.json."
    ),
)
def run_check(check_id: str, body: CheckRunIn | None = None):
    try:
        harness.get_check(check_id)
    except UnknownCheckError:
        raise HTTPException(status_code=404, detail=f"Comprobación no encontrada: {check_id}")
    overrides = (body.params if body else {}) or {}
    try:
        for key in ("m", "p"):
            if overrides.get(key) is not None:
                harness.parse_range(overrides[key])
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    reports = harness.run_check(check_id, overrides, load_harness_config())
    logger.info(f"[API] {check_id}: {harness.summarize(reports)}")
    return [r.to_dict() for r in reports]


@router.post(
    "/inflect",
    response_model=InflectOut,
    summary="Polinomio de inflexión",
    description="Devuelve P^ℓ_m en forma canónica junto con el soporte primo de sus denominadores.",
)
def inflect(body: PencilIn):
    spec = _spec(body)
    try:
        return atomic_inflection(spec, body.m, body.u).to_dict()
    except (InflexError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@router.post(
    "/newton",
    response_model=NewtonOut,
    summary="Polígono de Newton",
    description="Vértices del polígono de Newton de P_m, opcionalmente centrado y con SVG.",
)
def newton(body: NewtonIn):
    spec = _spec(body)
    names = ("x", spec.parameters[0])
    try:
        P = atomic_inflection(spec, body.m, body.u).poly
        quotient, label = None, "origin"
        if body.center is not None:
            options = _CENTERS.get(spec.kind, ())
            if body.center >= len(options):
                raise HTTPException(status_code=422, detail=f"Sin centro #{body.center} para {spec.kind}")
            center = options[body.center]
            P, quotient, label = centered(P, names, center), center.quotient, center.label
        polygon = newton_polygon(P, names, quotient)
        count, _ = interior_lattice_points(polygon)
    except InflexError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    svg = export.polygon_svg(polygon, f"New(P_{body.m}) {spec.kind} at {label}") if body.svg else None
    logger.debug(f"[API] newton {spec.kind} m={body.m}: {to_text(P)[:60]}")
    return {"family": spec.kind, "m": body.m, "center": label,
            "vertices": [list(v) for v in polygon.vertices], "interior_points": count, "svg": svg}


@router.get(
    "/count/{curve}/{p}",
    response_model=CountOut,
    summary="Conteo de puntos",
    description="Número de puntos sobre F_p de la clausura de la curva y su término de error.",
)
def count(
    curve: str = Path(..., description="d4-c2, weierstrass:<m> o d4:<m>"),
    p: int = Path(..., ge=2),
    strategy: Optional[str] = Query(None, description="fiberwise | brute"),
):
    try:
        model = curve_model(curve)
    except UnknownCheckError as exc:
        raise HTTPException(status_code=404, detail=str(exc))
    strategy = strategy or ("fiberwise" if curve == "d4-c2" else "brute")
    try:
        record = point_count_record(p, strategy, model.genus, curve)
    except BadPrimeError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except (InflexError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return {"curve": curve, **record.to_dict()}
