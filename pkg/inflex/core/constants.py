"""
Inflex — Constantes globales del proyecto.
Editar aquí para cambiar rangos, cotas y nombres de variables sin buscar en el código.
"""

# ─── Anillo global de polinomios ──────────────────────────────────────────────
# Orden fijo de variables; todo MPoly vive en QQ[GLOBAL_VARS].
GLOBAL_VARS: tuple[str, ...] = (
    "x", "lam", "s1", "s2", "s", "z", "u", "t", "w", "y",
)
PARAMETER_VARS: frozenset[str] = frozenset({"lam", "s1", "s2", "s", "z", "t"})

# ─── Series formales ──────────────────────────────────────────────────────────
SERIES_PRECISION_MARGIN: int = 5   # precisión por defecto = μ(B) + margen

# ─── Caminos de Plücker ───────────────────────────────────────────────────────
GV_MAX_PRODUCTS: int = 20000       # tope de productos de caminos enumerados

# ─── Recursión de inflexión ───────────────────────────────────────────────────
MAX_INFLECTION_ORDER: int = 40     # cota dura para m en atomic_inflection

# ─── Resultantes ──────────────────────────────────────────────────────────────
RESULTANT_STRATEGIES: tuple[str, ...] = ("auto", "direct", "interpolate")
INTERPOLATION_MIN_SYLVESTER: int = 14   # "auto" interpola desde este tamaño

# ─── Cuerpos finitos ──────────────────────────────────────────────────────────
C2_BAD_PRIMES: frozenset[int] = frozenset({2, 3, 5})   # p | 30: reducción degenerada
C2_DEGREE: int = 8                                     # homogeneización en P²(x,s,y)
BRUTE_FORCE_MAX_PRIME: int = 2000                      # malla p² con numpy
SATO_TATE_MIN_BOUND: int = 100
SATO_TATE_DEFAULT_BOUND: int = 10000
SATO_TATE_DEFAULT_BINS: int = 40
SATO_TATE_KS_THRESHOLD: float = 0.08
HASSE_SLACK: int = 4                                   # |e| ≤ 2√p + 4

# ─── Harness ──────────────────────────────────────────────────────────────────
VERDICTS: tuple[str, ...] = ("pass", "fail", "refused")
EXIT_OK: int = 0      # todo pass / refused
EXIT_FAIL: int = 1    # algún fail
EXIT_USAGE: int = 2   # error de uso
DEFAULT_THREADS: int = 1
CONFIG_FILENAME: str = "config_harness.json"

# ─── Exportación ──────────────────────────────────────────────────────────────
POINT_COUNT_CSV_HEADER: tuple[str, ...] = ("p", "count", "e", "e_tilde")
HISTOGRAM_CSV_HEADER: tuple[str, ...] = ("bin_left", "bin_right", "frequency")
SVG_SCALE: int = 24   # píxeles por unidad de red

# ─── Aplicación ───────────────────────────────────────────────────────────────
APP_NAME: str = "Inflex"
APP_VERSION: str = "1.0.0"
