"""
Inflex — Fixtures de datos publicados
Polinomios de componentes y tablas de resultantes copiados tal cual de la
fuente, con cabecera de procedencia en comentarios //.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

from inflex.core.algebra import MPoly, parse_poly
from inflex.core.reports import UnknownCheckError
from inflex.services.config_loader import DATA_DIR, load_json_file

logger = logging.getLogger(__name__)

COMPONENTS_DIR = DATA_DIR / "components"

# Componentes impresos de Δ^ℓ_m por m (bielliptic, ℓ=1).
BIELLIPTIC_COMPONENTS: dict[int, tuple[str, ...]] = {
    2: ("delta_star",),
    3: ("delta_star", "bielliptic_m3_1", "bielliptic_m3_2"),
    4: ("delta_star", "bielliptic_m4_1", "bielliptic_m4_2", "bielliptic_m4_3", "bielliptic_m4_4"),
    5: ("delta_star", "bielliptic_m5_1", "bielliptic_m5_2", "bielliptic_m5_3"),
}


@dataclass(frozen=True)
class Fixture:
    name: str
    poly: MPoly
    provenance: tuple[str, ...]


@lru_cache(maxsize=None)
def load_component(name: str) -> Fixture:
    path = COMPONENTS_DIR / f"{name}.poly"
    if not path.exists():
        raise UnknownCheckError(f"unknown component fixture {name!r}")
    header, body = [], []
    for line in path.read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if stripped.startswith("//"):
            header.append(stripped[2:].strip())
        elif stripped:
            body.append(stripped)
    poly = parse_poly(" ".join(body))
    logger.debug(f"[Fixtures] {name}: {len(poly.terms())} terms")
    return Fixture(name, poly, tuple(header))


def bielliptic_components(m: int) -> list[Fixture]:
    """Tabulated components for Δ^ℓ_m; Δ* alone beyond the tabulated range."""
    return [load_component(name) for name in BIELLIPTIC_COMPONENTS.get(m, ("delta_star",))]


@lru_cache(maxsize=1)
def _resultant_rows() -> dict:
    return load_json_file(DATA_DIR / "nondegeneracy_resultants.json")


def nondegeneracy_row(m: int) -> MPoly | None:
    """Tabulated res_λ(Q, D_λQ) for this m as a polynomial in u, or None."""
    text = _resultant_rows().get(str(m))
    return parse_poly(text) if text else None


def tabulated_orders() -> list[int]:
    return sorted(int(k) for k in _resultant_rows())
