"""
Inflex — Núcleo algebraico exacto
Racionales, polinomios dispersos multivariados, derivadas de Hasse, anillos
cociente, resultantes, divisibilidad exacta y reducción módulo p.

Every polynomial lives in the single global ring QQ[GLOBAL_VARS]. Unused
generators simply carry exponent zero, so equality of two polynomials is
equality of their term maps.
"""
import logging
import math
from concurrent.futures import Executor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

from sympy import sympify
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, ring

from inflex.core.constants import (
    GLOBAL_VARS,
    INTERPOLATION_MIN_SYLVESTER,
    RESULTANT_STRATEGIES,
)

logger = logging.getLogger(__name__)

RING, X, LAM, S1, S2, S, Z, U, T, W, Y = ring(",".join(GLOBAL_VARS), QQ)

MPoly = PolyElement
Scalar = Union[int, "QQ.dtype"]


# ── Errores ───────────────────────────────────────────────────────────────────

class InflexError(Exception):
    """Base class for every domain error raised by the package."""


class UnknownVariableError(InflexError):
    pass


class NotDivisibleError(InflexError):
    pass


class ZeroPolynomialError(InflexError):
    pass


class BadDenominatorError(InflexError):
    def __init__(self, p: int, monomial: str):
        super().__init__(f"denominator divisible by {p} at monomial {monomial}")
        self.p = p
        self.monomial = monomial


class NotSimpleRootError(InflexError):
    pass


class PrecisionError(InflexError):
    pass


# ── Racionales y variables ────────────────────────────────────────────────────

def rational(value) -> "QQ.dtype":
    """Coerce int, Fraction, 'a/b' strings or QQ elements to an exact rational."""
    if isinstance(value, str):
        num, _, den = value.strip().partition("/")
        return QQ(int(num), int(den)) if den else QQ(int(num))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return QQ(int(value.numerator), int(value.denominator))
    return QQ.convert(value)


def var(name: str) -> MPoly:
    """Generator of the global ring called ``name``."""
    try:
        return RING.gens[GLOBAL_VARS.index(name)]
    except ValueError:
        raise UnknownVariableError(f"unknown variable {name!r}") from None


def var_index(name: str) -> int:
    try:
        return GLOBAL_VARS.index(name)
    except ValueError:
        raise UnknownVariableError(f"unknown variable {name!r}") from None


def variables_of(P: MPoly) -> list[str]:
    """Names of the generators that actually occur in ``P``, in global order."""
    used = [False] * len(GLOBAL_VARS)
    for monom in P.itermonoms():
        for i, e in enumerate(monom):
            if e:
                used[i] = True
    return [name for name, flag in zip(GLOBAL_VARS, used) if flag]


def parse_poly(text: str) -> MPoly:
    """Parse ``"3/2*x^2*lam - 1"`` style text into the global ring."""
    return RING.from_expr(sympify(text.replace("^", "**")))


def const(value) -> MPoly:
    return RING.ground_new(rational(value))


# ── Serialización canónica ────────────────────────────────────────────────────

def _coeff_text(c) -> str:
    num, den = int(c.numerator), int(c.denominator)
    return f"{num}" if den == 1 else f"{num}/{den}"


def _monomial_text(monom: Sequence[int]) -> str:
    parts = []
    for name, e in zip(GLOBAL_VARS, monom):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def to_text(P: MPoly) -> str:
    """Deterministic text form: graded-lex descending monomials, exact fractions."""
    if not P:
        return "0"
    chunks = []
    for monom, coeff in P.terms(order="grlex"):
        mono = _monomial_text(monom)
        c = _coeff_text(coeff)
        if not mono:
            chunks.append(c)
        elif c == "1":
            chunks.append(mono)
        elif c == "-1":
            chunks.append(f"-{mono}")
        else:
            chunks.append(f"{c}*{mono}")
    return " + ".join(chunks).replace("+ -", "- ")


def monomial_key(monom: Sequence[int]) -> str:
    return _monomial_text(monom) or "1"


# ── Factoriales ───────────────────────────────────────────────────────────────

FACTORIAL_KINDS: tuple[str, ...] = ("falling", "rising", "double_falling", "double_rising")


def factorial_gadget(w, k: int, kind: str = "falling"):
    """
    (w)_k, (w)^k, ((w))_k, ((w))^k for a rational or polynomial ``w``.

    k=0 gives 1. The step is -1, +1, -2, +2 respectively.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    step = {"falling": -1, "rising": 1, "double_falling": -2, "double_rising": 2}.get(kind)
    if step is None:
        raise ValueError(f"unknown factorial kind {kind!r}")
    if isinstance(w, PolyElement):
        out = RING.one
    else:
        w = rational(w)
        out = QQ.one
    for i in range(k):
        out = out * (w + step * i)
    return out


def falling(w, k: int):
    return factorial_gadget(w, k, "falling")


def rising(w, k: int):
    return factorial_gadget(w, k, "rising")


# ── Derivadas de Hasse ────────────────────────────────────────────────────────

def hasse_derivative(P: MPoly, name: str, k: int) -> MPoly:
    """D^k_name P with D^k x^j = binom(j, k) x^(j-k), extended linearly."""
    if k < 0:
        raise ValueError("k must be non-negative")
    i = var_index(name)
    if k == 0:
        return P
    R = P.ring
    out = {}
    for monom, coeff in P.iterterms():
        e = monom[i]
        if e < k:
            continue
        new = monom[:i] + (e - k,) + monom[i + 1:]
        out[new] = coeff * math.comb(e, k)
    return R.from_dict(out)


def partial(P: MPoly, name: str) -> MPoly:
    return hasse_derivative(P, name, 1)


# ── División exacta, mcd, parte libre de cuadrados ────────────────────────────

def exact_divide(P: MPoly, Q: MPoly) -> MPoly:
    """R with P = Q·R, or NotDivisibleError."""
    if not Q:
        raise ZeroPolynomialError("division by the zero polynomial")
    try:
        return P.exquo(Q)
    except ExactQuotientFailed:
        raise NotDivisibleError(f"{to_text(Q)} does not divide the dividend") from None


def divides(Q: MPoly, P: MPoly) -> bool:
    try:
        exact_divide(P, Q)
    except NotDivisibleError:
        return False
    return True


def multiplicity(Q: MPoly, P: MPoly) -> int:
    """Largest e with Q^e | P (Q non-constant)."""
    if not P:
        raise ZeroPolynomialError("multiplicity in the zero polynomial")
    e = 0
    while True:
        try:
            P = exact_divide(P, Q)
        except NotDivisibleError:
            return e
        e += 1


@lru_cache(maxsize=None)
def _small_ring(names: tuple[str, ...], domain):
    R, *_ = ring(",".join(names), domain)
    return R


def poly_gcd(P: MPoly, Q: MPoly) -> MPoly:
    """gcd computed in the subring of the generators that actually occur."""
    idx = sorted({i for F in (P, Q) for m in F.itermonoms() for i, e in enumerate(m) if e})
    if not idx:
        return P.ring.one if (P or Q) else P.ring.zero
    R = _small_ring(tuple(GLOBAL_VARS[i] for i in idx), P.ring.domain)
    small = [R.from_dict({tuple(m[i] for i in idx): c for m, c in F.iterterms()}) for F in (P, Q)]
    h = small[0].gcd(small[1])
    width = len(GLOBAL_VARS)
    out = {}
    for m, c in h.iterterms():
        full = [0] * width
        for i, e in zip(idx, m):
            full[i] = e
        out[tuple(full)] = c
    return P.ring.from_dict(out)


def gcd_squarefree(P: MPoly, names: Iterable[str] | None = None) -> tuple[MPoly, MPoly]:
    """
    (gcd of P with all first partials, squarefree part of P).

    Works over QQ and over GF(p) rings alike; over GF(p) a factor that is a
    p-th power has vanishing partials and stays in the gcd.
    """
    if not P:
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    names = list(names) if names is not None else variables_of(P)
    g = P
    for name in names:
        d = hasse_derivative(P, name, 1)
        if d:
            g = poly_gcd(g, d)
        if g.is_ground:
            break
    g = g.monic() if g else g
    return g, exact_divide(P, g)


def is_squarefree(P: MPoly) -> bool:
    g, _ = gcd_squarefree(P)
    return g.is_ground


def primitive_part(P: MPoly) -> MPoly:
    """P scaled so that it has integer coprime coefficients and positive LC."""
    if not P:
        return P
    _, Q = P.clear_denoms()
    content = 0
    for c in Q.itercoeffs():
        content = math.gcd(content, int(c.numerator))
    Q = Q.quo_ground(content) if content > 1 else Q
    return -Q if Q.LC < 0 else Q


def proportional(P: MPoly, Q: MPoly):
    """Rational c with P = c·Q, or None."""
    if not P or not Q:
        return QQ.one if P == Q else None
    monom, qc = next(iter(Q.iterterms()))
    pc = P.get(monom)
    if pc is None:
        return None
    c = pc / qc
    return c if P == Q * c else None


# ── Sustitución y anillos cociente ────────────────────────────────────────────

@dataclass(frozen=True)
class QuotientRing:
    """QQ[w]/(q(w)) with q monic in ``w``; elements are global-ring polynomials."""
    modulus: MPoly
    name: str = "w"

    def __post_init__(self):
        i = var_index(self.name)
        if any(m[:i] + m[i + 1:] != (0,) * (len(m) - 1) for m in self.modulus.itermonoms()):
            raise ValueError("modulus must be univariate in the extension variable")
        if self.modulus.coeff_wrt(var(self.name), self.degree) != RING.one:
            raise ValueError("modulus must be monic")

    @property
    def degree(self) -> int:
        return self.modulus.degree(var(self.name))

    @property
    def gen(self) -> MPoly:
        return var(self.name)

    def reduce(self, P: MPoly) -> MPoly:
        return P.rem(self.modulus)

    def mul(self, a: MPoly, b: MPoly) -> MPoly:
        return self.reduce(a * b)

    def is_zero(self, P: MPoly) -> bool:
        return not self.reduce(P)


CYCLOTOMIC3 = QuotientRing(W**2 + W + 1)               # ζ
SQRT_MINUS_HALF = QuotientRing(W**2 + QQ(1, 2))        # √(−1/2)
SQRT_MINUS_THIRD = QuotientRing(W**2 + QQ(1, 3))       # √(−1/3)
CUBE_ROOT_MINUS_HALF = QuotientRing(W**3 + QQ(1, 2))   # ∛(−1/2)


def substitute(P: MPoly, assignment: dict, quotient: QuotientRing | None = None) -> MPoly:
    """
    Simultaneous substitution name → polynomial/scalar; reduced modulo
    ``quotient`` when one is given.
    """
    if not assignment:
        return quotient.reduce(P) if quotient else P
    pairs = []
    for name, value in assignment.items():
        g = var(name)
        pairs.append((g, value if isinstance(value, PolyElement) else const(value)))
    out = P.compose(pairs)
    return quotient.reduce(out) if quotient else out


def translate(P: MPoly, shifts: dict) -> MPoly:
    """P(v + c_v) for each shifted variable."""
    return substitute(P, {name: var(name) + (c if isinstance(c, PolyElement) else const(c))
                          for name, c in shifts.items()})


def evaluate(P: MPoly, point: dict, quotient: QuotientRing | None = None) -> MPoly:
    return substitute(P, point, quotient)


def support(P: MPoly, names: Sequence[str], quotient: QuotientRing | None = None) -> set[tuple[int, ...]]:
    """
    Exponent vectors of P projected to ``names``. Other variables (e.g. the
    extension generator w) are folded into the coefficient, so a projected
    monomial is present iff its coefficient is nonzero in the quotient ring.
    """
    idx = [var_index(n) for n in names]
    buckets: dict[tuple[int, ...], dict] = {}
    for monom, coeff in P.iterterms():
        key = tuple(monom[i] for i in idx)
        rest = tuple(0 if i in idx else e for i, e in enumerate(monom))
        bucket = buckets.setdefault(key, {})
        bucket[rest] = bucket.get(rest, QQ.zero) + coeff
    out = set()
    for key, bucket in buckets.items():
        c = RING.from_dict(bucket)
        if quotient is not None:
            c = quotient.reduce(c)
        if c:
            out.add(key)
    return out


def coefficient(P: MPoly, exps: dict) -> MPoly:
    """[∏ v^e] P as a polynomial in the remaining variables."""
    out = P
    for name, e in exps.items():
        out = out.coeff_wrt(var(name), e)
    return out


# ── Resultantes ───────────────────────────────────────────────────────────────

def coefficient_list(f: MPoly, name: str) -> list[MPoly]:
    """Coefficients of f in ``name`` from the leading degree down to 0."""
    g = var(name)
    d = f.degree(g)
    return [f.coeff_wrt(g, k) for k in range(d, -1, -1)]


def sylvester_matrix(f: MPoly, g: MPoly, name: str) -> list[list[MPoly]]:
    """Rows of f-coefficients first (deg g of them), then deg f rows of g."""
    fc, gc = coefficient_list(f, name), coefficient_list(g, name)
    df, dg = len(fc) - 1, len(gc) - 1
    size = df + dg
    rows = []
    for r in range(dg):
        rows.append([RING.zero] * r + fc + [RING.zero] * (size - r - df - 1))
    for r in range(df):
        rows.append([RING.zero] * r + gc + [RING.zero] * (size - r - dg - 1))
    return rows


def _det(rows: list[list[MPoly]]) -> MPoly:
    n = len(rows)
    if n == 0:
        return RING.one
    K = RING.to_domain()
    return DomainMatrix(rows, (n, n), K).det()


def determinant(rows: list[list[MPoly]]) -> MPoly:
    """Exact determinant of a square matrix of global-ring polynomials."""
    if any(len(row) != len(rows) for row in rows):
        raise ValueError("determinant of a non-square matrix")
    return _det(rows)


def _det_numeric(rows) -> "QQ.dtype":
    n = len(rows)
    if n == 0:
        return QQ.one
    return DomainMatrix(rows, (n, n), QQ).det()


def _row_degree_bound(rows, g: MPoly) -> int:
    return sum(max((e.degree(g) for e in row if e), default=0) for row in rows)


def _newton_interpolate(points: list, values: list[MPoly], g: MPoly) -> MPoly:
    """Newton divided differences; values are polynomials free of ``g``."""
    coeffs = list(values)
    n = len(points)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) * QQ(1, points[i] - points[i - level])
    out = coeffs[-1]
    for i in range(n - 2, -1, -1):
        out = out * (g - points[i]) + coeffs[i]
    return out


def _interpolated_det(rows, params: list[str], executor: Executor | None = None) -> MPoly:
    if not params:
        numeric = [[e.LC if e else QQ.zero for e in row] for row in rows]
        return RING.ground_new(_det_numeric(numeric))
    name, rest = params[-1], params[:-1]
    g = var(name)
    bound = _row_degree_bound(rows, g)
    points = list(range(bound + 1))
    logger.debug(f"[Resultant] interpolating {name} on {len(points)} points")

    def at(a):
        return _interpolated_det([[e.subs(g, a) for e in row] for row in rows], rest)

    if executor is not None and len(params) > 1:
        values = list(executor.map(at, points))
    else:
        values = [at(a) for a in points]
    return _newton_interpolate(points, values, g)


def resultant(f: MPoly, g: MPoly, name: str, strategy: str = "auto",
              executor: Executor | None = None) -> MPoly:
    """
    res_name(f, g) as the determinant of the Sylvester matrix.

    strategy="direct" runs fraction-free elimination over the coefficient
    ring; "interpolate" evaluates the parameters at integers and rebuilds the
    determinant by Newton interpolation. Formal degrees are kept during
    evaluation, so both paths compute the same polynomial.
    """
    if strategy not in RESULTANT_STRATEGIES:
        raise ValueError(f"unknown resultant strategy {strategy!r}")
    if not f or not g:
        raise ZeroPolynomialError("resultant with a zero polynomial")
    rows = sylvester_matrix(f, g, name)
    if strategy == "auto":
        strategy = "interpolate" if len(rows) >= INTERPOLATION_MIN_SYLVESTER else "direct"
    params = sorted({v for row in rows for e in row for v in variables_of(e)},
                    key=GLOBAL_VARS.index)
    if strategy == "direct" or not params:
        return _det(rows) if params else RING.ground_new(
            _det_numeric([[e.LC if e else QQ.zero for e in row] for row in rows]))
    return _interpolated_det(rows, params, executor)


def leading_coefficient(f: MPoly, name: str) -> MPoly:
    g = var(name)
    return f.coeff_wrt(g, f.degree(g))


def discriminant(f: MPoly, name: str, strategy: str = "auto",
                 executor: Executor | None = None) -> MPoly:
    """(−1)^(d(d−1)/2) · res(f, D¹f) / lc(f)."""
    d = f.degree(var(name))
    if d < 1:
        raise ZeroPolynomialError("discriminant of a polynomial of degree < 1")
    res = resultant(f, hasse_derivative(f, name, 1), name, strategy, executor)
    disc = exact_divide(res, leading_coefficient(f, name))
    return -disc if (d * (d - 1) // 2) % 2 else disc


# ── Reducción módulo p ────────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def prime_ring(p: int):
    """GF(p)[GLOBAL_VARS], cached per prime."""
    R, *_ = ring(",".join(GLOBAL_VARS), GF(p))
    return R


PrimePoly = PolyElement


def reduce_mod_p(P: MPoly, p: int) -> PrimePoly:
    """Coefficient-wise image in GF(p); refuses denominators divisible by p."""
    Rp = prime_ring(p)
    out = {}
    for monom, coeff in P.iterterms():
        num, den = int(coeff.numerator), int(coeff.denominator)
        if den % p == 0:
            raise BadDenominatorError(p, monomial_key(monom))
        value = num * pow(den, -1, p) % p
        if value:
            out[monom] = value
    return Rp.from_dict(out)


def prime_coeff_int(c, p: int) -> int:
    """Canonical representative 0..p-1 of a GF(p) coefficient."""
    return int(c) % p
