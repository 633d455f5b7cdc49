"""
Inflex — Carga centralizada de configuración JSON.

Los archivos JSON del proyecto (config_harness.json, tablas en inflex/data/)
admiten comentarios estilo JavaScript (//). Esta función es la única fuente de
verdad para leerlos y parsearlos.
"""
import json
import logging
import os
import re
from pathlib import Path

from inflex.core.constants import (
    CONFIG_FILENAME,
    DEFAULT_THREADS,
    SATO_TATE_DEFAULT_BINS,
    SATO_TATE_DEFAULT_BOUND,
)

logger = logging.getLogger(__name__)

BASE_DIR = Path(__file__).resolve().parent.parent.parent
DATA_DIR = Path(__file__).resolve().parent.parent / "data"


# ── Valores por defecto ───────────────────────────────────────────────────────

# Se usan cuando config_harness.json falta o no define la clave.
HARNESS_DEFAULTS: dict = {
    "threads": DEFAULT_THREADS,
    "resultant_strategy": "auto",
    "m_ranges": {},
    "prime_bound": SATO_TATE_DEFAULT_BOUND,
    "histogram_bins": SATO_TATE_DEFAULT_BINS,
}


# ── Carga de JSON ─────────────────────────────────────────────────────────────

def load_json_file(path: Path) -> dict:
    """
    Carga un archivo JSON strippeando comentarios estilo // antes de parsear.

    Args:
        path: Ruta absoluta al archivo JSON.

    Returns:
        Diccionario parseado. Devuelve {} si el archivo no existe.

    Raises:
        json.JSONDecodeError: Si el contenido no es JSON válido.
    """
    if not path.exists():
        return {}
    raw = path.read_text(encoding="utf-8")
    clean = re.sub(r'(?m)^\s*//[^\n]*|\s//[^\n]*', '', raw)
    return json.loads(clean)


def config_path() -> Path:
    """INFLEX_CONFIG overrides the default file at the project root."""
    override = os.environ.get("INFLEX_CONFIG")
    return Path(override) if override else BASE_DIR / CONFIG_FILENAME


def load_harness_config(path: Path | None = None) -> dict:
    """
    Defaults, then the JSON file, then environment overrides.

    CLI flags are applied on top by the caller.
    """
    path = path or config_path()
    raw = load_json_file(path)
    cfg = {**HARNESS_DEFAULTS, **{k: v for k, v in raw.items() if k in HARNESS_DEFAULTS}}
    unknown = sorted(set(raw) - set(HARNESS_DEFAULTS))
    if unknown:
        logger.warning(f"[Config] claves ignoradas en {path.name}: {unknown}")
    env_threads = os.environ.get("INFLEX_THREADS")
    if env_threads:
        try:
            cfg["threads"] = max(1, int(env_threads))
        except ValueError:
            logger.warning(f"[Config] INFLEX_THREADS={env_threads!r} no es un entero; se ignora")
    logger.debug(f"[Config] harness config from {path}: {cfg}")
    return cfg
