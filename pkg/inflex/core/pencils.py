"""
Inflex — Pencils superelípticos
Familias y^n = f(x, params), recursión de los polinomios de inflexión atómicos,
bases monomiales, Wronskiano determinantal lejos de la ramificación y
comprobaciones de simetría, paridad y coeficientes.
"""
import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable

from sympy import factorint
from sympy.polys.domains import QQ

from inflex.core.algebra import (
    CUBE_ROOT_MINUS_HALF,
    LAM,
    RING,
    S,
    S1,
    S2,
    U,
    W,
    X,
    Z,
    InflexError,
    MPoly,
    NotDivisibleError,
    coefficient,
    const,
    determinant,
    evaluate,
    exact_divide,
    factorial_gadget,
    falling,
    hasse_derivative,
    monomial_key,
    multiplicity,
    parse_poly,
    rational,
    substitute,
    to_text,
    translate,
    var_index,
    variables_of,
)
from inflex.core.constants import MAX_INFLECTION_ORDER
from inflex.core.reports import ReportBuilder, UnknownCheckError, VerificationReport
from inflex.core.series import TruncatedSeries

logger = logging.getLogger(__name__)


class HypothesisError(InflexError):
    """Numerological or structural hypothesis of a statement does not hold."""


# ── Familias ──────────────────────────────────────────────────────────────────

FAMILIES: tuple[str, ...] = ("legendre", "weierstrass", "d4", "d6", "bielliptic", "custom")

FAMILY_PARAMETERS: dict[str, tuple[str, ...]] = {
    "legendre":    ("lam",),
    "weierstrass": ("lam",),
    "d4":          ("s",),
    "d6":          ("z",),
    "bielliptic":  ("s1", "s2"),
}


@dataclass(frozen=True)
class PencilSpec:
    """y^n = f(x, params) with section index ℓ; u = ℓ/n."""
    kind: str
    n: int = 2
    ell: int = 1
    abc: tuple[int, int, int] = (1, 1, 1)
    custom: str = ""

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {', '.join(FAMILIES)}")
        if self.n < 2:
            raise ValueError("cover degree n must be at least 2")
        if self.ell < 1:
            raise ValueError("section index ℓ must be positive")
        if self.kind == "legendre" and (len(self.abc) != 3 or min(self.abc) < 1):
            raise ValueError("Legendre exponents a, b, c must be positive")
        if self.kind == "custom" and not self.custom:
            raise ValueError("custom pencils need a polynomial f")

    @property
    def u_value(self):
        return QQ(self.ell, self.n)

    @property
    def parameters(self) -> tuple[str, ...]:
        if self.kind == "custom":
            return tuple(v for v in variables_of(base_poly(self)) if v != "x")
        return FAMILY_PARAMETERS[self.kind]

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "n": self.n, "ell": self.ell}
        if self.kind == "legendre":
            out["abc"] = list(self.abc)
        if self.kind == "custom":
            out["f"] = self.custom
        return out


def base_poly(spec: PencilSpec) -> MPoly:
    """Defining polynomial f(x, params)."""
    if spec.kind == "legendre":
        a, b, c = spec.abc
        return X**a * (X - 1)**b * (X - LAM)**c
    if spec.kind == "weierstrass":
        return X**3 + LAM * X + 2
    if spec.kind == "d4":
        return X**5 + X**3 + S * X
    if spec.kind == "d6":
        return X**6 + X**3 + Z
    if spec.kind == "bielliptic":
        return X**6 - S1 * X**4 + S2 * X**2 - 1
    return parse_poly(spec.custom)


# ── Recursión de inflexión ────────────────────────────────────────────────────

def resolve_u(spec: PencilSpec, u_mode=None) -> tuple[str, object]:
    """
    (label, value) for a u mode: "symbolic" keeps u as a ring variable
    (value None); "spec"/None uses ℓ/n; anything else is read as a rational.
    """
    if u_mode is None or u_mode == "spec":
        value = spec.u_value
    elif u_mode == "symbolic":
        return "symbolic", None
    else:
        value = rational(u_mode)
    num, den = int(value.numerator), int(value.denominator)
    return (str(num) if den == 1 else f"{num}/{den}"), value


def u_poly(value) -> MPoly:
    return U if value is None else const(value)


def denominator_primes(P: MPoly) -> list[int]:
    den = 1
    for c in P.itercoeffs():
        den = math.lcm(den, int(c.denominator))
    return sorted(factorint(den))


@dataclass(frozen=True)
class InflectionPoly:
    poly: MPoly
    m: int
    spec: PencilSpec
    u_mode: str

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "spec": self.spec.to_dict(),
            "u_mode": self.u_mode,
            "poly": to_text(self.poly),
            "denominator_primes": denominator_primes(self.poly),
        }


class InflectionMemo:
    """
    Chains P_1, P_2, ... per (spec, u label).

    A global lock guards the key table; a per-key lock makes each chain grow
    at most once per index, so concurrent callers never recompute.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._key_locks: dict[tuple, threading.Lock] = {}
        self._chains: dict[tuple, list[MPoly]] = {}

    def _key_lock(self, key: tuple) -> threading.Lock:
        with self._lock:
            return self._key_locks.setdefault(key, threading.Lock())

    def chain(self, spec: PencilSpec, label: str, value, m: int) -> list[MPoly]:
        key = (spec, label)
        with self._key_lock(key):
            with self._lock:
                chain = self._chains.setdefault(key, [])
            if len(chain) < m:
                f = base_poly(spec)
                df = hasse_derivative(f, "x", 1)
                uu = u_poly(value)
                if not chain:
                    chain.append(uu * df)
                while len(chain) < m:
                    k = len(chain)
                    Pk = chain[-1]
                    nxt = (hasse_derivative(Pk, "x", 1) * f + Pk * df * (uu - k)) * QQ(1, k + 1)
                    chain.append(nxt)
                    logger.debug(f"[Pencil] {spec.kind} u={label}: P_{k + 1} has {len(nxt)} terms")
            return chain[:m]

    def clear(self) -> None:
        with self._lock:
            self._chains.clear()
            self._key_locks.clear()


memo = InflectionMemo()


def atomic_inflection(spec: PencilSpec, m: int, u_mode=None) -> InflectionPoly:
    """P^ℓ_m by the recursion P_{k+1} = (D¹P_k·f + P_k·D¹f·(u−k))/(k+1), P_1 = u·D¹f."""
    if m < 1:
        raise ValueError("inflection order m must be positive")
    if m > MAX_INFLECTION_ORDER:
        raise ValueError(f"inflection order m={m} exceeds {MAX_INFLECTION_ORDER}")
    label, value = resolve_u(spec, u_mode)
    poly = memo.chain(spec, label, value, m)[m - 1]
    return InflectionPoly(poly, m, spec, label)


def recursion_residual(spec: PencilSpec, m: int, u_mode=None) -> MPoly:
    """(m+1)P_{m+1} − D¹P_m·f − P_m·D¹f·(u−m); zero for every computed m."""
    label, value = resolve_u(spec, u_mode)
    Pm = atomic_inflection(spec, m, u_mode).poly
    Pn = atomic_inflection(spec, m + 1, u_mode).poly
    f = base_poly(spec)
    df = hasse_derivative(f, "x", 1)
    return Pn * (m + 1) - hasse_derivative(Pm, "x", 1) * f - Pm * df * (u_poly(value) - m)


def denominator_invariant(ip: InflectionPoly) -> bool:
    """With u = ℓ/n every denominator prime divides n."""
    return all(ip.spec.n % p == 0 for p in denominator_primes(ip.poly))


def _scalar(P: MPoly):
    if not P:
        return QQ.zero
    if not P.is_ground:
        raise ValueError(f"expected a constant, got {to_text(P)}")
    return P.LC


def defining_identity_check(spec: PencilSpec, m: int, point: dict | None = None,
                            u_mode=None) -> VerificationReport:
    """
    P_m(x₀) = f(x₀)^m · D^m(f^u)/f^u at a rational point, with the right-hand
    side expanded from the binomial series of (1 + g)^u, g = f(x₀+t)/f(x₀) − 1.
    """
    label, value = resolve_u(spec, u_mode)
    if value is None:
        value = QQ(1, 3)
        label = "1/3"
    point = dict(point or {"x": QQ(2, 3), **{p: QQ(5, 7) for p in spec.parameters}})
    rb = ReportBuilder("pencils.defining-identity", {"spec": spec.to_dict(), "m": m, "u": label,
                                                     "point": {k: str(v) for k, v in point.items()}})
    x0 = rational(point.pop("x"))
    fx = evaluate(base_poly(spec), point)
    f0 = _scalar(evaluate(fx, {"x": x0}))
    if not f0:
        return rb.refuse("f vanishes at the chosen point")

    taylor = [_scalar(evaluate(hasse_derivative(fx, "x", k), {"x": x0})) for k in range(m + 1)]
    g = TruncatedSeries.from_coeffs([QQ.zero] + [c / f0 for c in taylor[1:]], m)
    total = TruncatedSeries.constant(0, m)
    power = TruncatedSeries.constant(1, m)
    for k in range(m + 1):
        total = total + power.scale(falling(value, k) / math.factorial(k))
        power = power * g
    direct = f0**m * total[m]

    Pm = atomic_inflection(spec, m, value).poly
    recursive = _scalar(evaluate(Pm, {"x": x0, **point}))
    rb.expect("P_m(point)", recursive, direct, {"m": m, "recursion": str(recursive), "direct": str(direct)})
    return rb.finish()


# ── Bases monomiales ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class MonomialBasis:
    n: int
    d: int
    ell: int
    elements: tuple[tuple[int, int], ...]

    @property
    def genus(self) -> int:
        return (self.d - 1) * (self.n - 1) // 2

    @property
    def pole_orders(self) -> tuple[int, ...]:
        return tuple(self.n * i + self.d * j for i, j in self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def to_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "ell": self.ell, "genus": self.genus,
                "elements": [list(e) for e in self.elements]}


def monomial_basis(n: int, d: int, ell: int) -> MonomialBasis:
    """x^i y^j with 0 ≤ j ≤ n−1 and ni + dj ≤ ℓ, sorted by pole order."""
    if math.gcd(n, d) != 1:
        raise HypothesisError(f"gcd(n, d) = gcd({n}, {d}) must be 1")
    if ell < 0:
        raise ValueError("ℓ must be non-negative")
    elements = [(i, j) for j in range(n) for i in range((ell - d * j) // n + 1) if n * i + d * j <= ell]
    elements.sort(key=lambda e: n * e[0] + d * e[1])
    return MonomialBasis(n, d, ell, tuple(elements))


def check_hypotheses(n: int, d: int, ell: int) -> tuple[int, int]:
    """(α, β) with ℓ = nα, d = nβ + 1 and α/β > n − 1."""
    if n < 2:
        raise HypothesisError("n must be at least 2")
    if ell % n or (d - 1) % n:
        raise HypothesisError(f"need ℓ = nα and d = nβ+1; got n={n}, d={d}, ℓ={ell}")
    alpha, beta = ell // n, (d - 1) // n
    if beta < 1 or alpha <= (n - 1) * beta:
        raise HypothesisError(f"need α/β > n−1; got α={alpha}, β={beta}, n={n}")
    return alpha, beta


# ── Wronskiano lejos de la ramificación ───────────────────────────────────────

@dataclass
class AwayWronskian:
    n: int
    d: int
    ell: int
    alpha: int
    beta: int
    f: MPoly
    rows: list[int]
    columns: list[tuple[int, int]]
    labels: list[list[str]]
    entries: list[list[MPoly]]
    determinant: MPoly

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "d": self.d, "ell": self.ell,
            "alpha": self.alpha, "beta": self.beta,
            "f": to_text(self.f),
            "rows": self.rows,
            "columns": [list(c) for c in self.columns],
            "labels": self.labels,
            "determinant": to_text(self.determinant),
        }


def _away_layout(n: int, d: int, ell: int) -> tuple[int, int, list[int], list[tuple[int, int]]]:
    alpha, beta = check_hypotheses(n, d, ell)
    g = (d - 1) * (n - 1) // 2
    rows = list(range(alpha + 1, ell - g + 1))
    columns = [(i, j0) for j0 in range(1, n) for i in range(alpha - beta * j0)]
    if len(rows) != len(columns):
        raise HypothesisError(f"non-square layout: {len(rows)} rows, {len(columns)} columns")
    return alpha, beta, rows, columns


def _atomic_table(n: int, f: MPoly, top: int) -> dict[int, list[MPoly]]:
    """P^{j0}_k for j0 = 1..n−1, k = 1..top, on the curve y^n = f."""
    table = {}
    for j0 in range(1, n):
        spec = PencilSpec("custom", n=n, ell=j0, custom=to_text(f))
        table[j0] = [atomic_inflection(spec, k).poly for k in range(1, top + 1)] if top else []
    return table


def _entry(table: dict[int, list[MPoly]], j0: int, k: int) -> MPoly:
    # P^{j0}_0 = 1, negative orders vanish
    if k < 0:
        return RING.zero
    if k == 0:
        return RING.one
    return table[j0][k - 1]


def wronskian_matrix_away(n: int, d: int, ell: int, f: MPoly | None = None) -> AwayWronskian:
    """
    Matrix (P^{j0}_{k−i}) with rows k = α+1..ℓ−g and columns x^i y^{j0}, j0 ≥ 1,
    ordered by (j0, i); its determinant is Q_{α,β} evaluated on y^n = f.
    """
    alpha, beta, rows, columns = _away_layout(n, d, ell)
    f = f if f is not None else X**d - X
    table = _atomic_table(n, f, rows[-1] if rows else 0)
    entries = [[_entry(table, j0, k - i) for i, j0 in columns] for k in rows]
    labels = [[f"P^{j0}_{k - i}" for i, j0 in columns] for k in rows]
    det = determinant(entries)
    logger.info(f"[Pencil] away Wronskian ({n},{d},{ell}): size {len(rows)}")
    return AwayWronskian(n, d, ell, alpha, beta, f, rows, columns, labels, entries, det)


def wronskian_away_column_check(n: int, d: int, ell: int, f: MPoly | None = None) -> VerificationReport:
    """
    Column reduction check: with H_{k,(i,j0)} = f^k y^{−j0} D^k(x^i y^{j0})
    = Σ_a C(i,a) x^{i−a} f^a P^{j0}_{k−a}, det H = Π_cols f^i · det(P^{j0}_{k−i}).
    """
    aw = wronskian_matrix_away(n, d, ell, f)
    rb = ReportBuilder("pencils.away-wronskian", {"n": n, "d": d, "ell": ell})
    table = _atomic_table(n, aw.f, aw.rows[-1] if aw.rows else 0)
    honest = []
    for k in aw.rows:
        row = []
        for i, j0 in aw.columns:
            acc = RING.zero
            for a in range(i + 1):
                acc += X**(i - a) * aw.f**a * _entry(table, j0, k - a) * math.comb(i, a)
            row.append(acc)
        honest.append(row)
    scale = RING.one
    for i, _ in aw.columns:
        scale *= aw.f**i
    rb.expect("size", aw.size, (n - 1) * (2 * aw.alpha - n * aw.beta) // 2)
    rb.expect("det H", determinant(honest), scale * aw.determinant)
    rb.record("Q", aw.determinant)
    return rb.finish()


# ── Pencil bielíptico ─────────────────────────────────────────────────────────

def bielliptic_Qm(m: int, ell: int = 1, n: int = 2, u_mode=None) -> MPoly:
    """Q_m = P_m (m even) or P_m/x (m odd); a polynomial in x²."""
    spec = PencilSpec("bielliptic", n=n, ell=ell)
    P = atomic_inflection(spec, m, u_mode).poly
    if m % 2:
        try:
            P = exact_divide(P, X)
        except NotDivisibleError:
            raise HypothesisError(f"x does not divide the bielliptic P_{m}") from None
    ix = var_index("x")
    odd = [mon for mon in P.itermonoms() if mon[ix] % 2]
    if odd:
        raise HypothesisError(f"Q_{m} has odd x-exponents (first: x^{odd[0][ix]})")
    return P


def halve_x(P: MPoly) -> MPoly:
    """Rewrite a polynomial in x² as a polynomial in x (x² ↦ x)."""
    ix = var_index("x")
    out = {}
    for mon, c in P.iterterms():
        if mon[ix] % 2:
            raise ValueError("polynomial is not even in x")
        out[mon[:ix] + (mon[ix] // 2,) + mon[ix + 1:]] = c
    return RING.from_dict(out)


# ── Homogeneidad graduada ─────────────────────────────────────────────────────

@dataclass(frozen=True)
class WeightClass:
    residue: int | None
    witness: tuple[str, str] | None = None

    @property
    def homogeneous(self) -> bool:
        return self.residue is not None

    def to_dict(self) -> dict:
        if self.residue is None:
            return {"homogeneous": False, "witness": list(self.witness or ())}
        return {"homogeneous": True, "residue": self.residue}


def graded_weight_class(P: MPoly, weights: dict[str, int], modulus: int) -> WeightClass:
    """Common weighted degree of all monomials mod ``modulus``, or a witness pair."""
    idx = {var_index(name): w for name, w in weights.items()}
    first = None
    for mon in P.itermonoms():
        r = sum(mon[i] * w for i, w in idx.items()) % modulus
        if first is None:
            first = (r, mon)
        elif r != first[0]:
            return WeightClass(None, (monomial_key(first[1]), monomial_key(mon)))
    return WeightClass(first[0] if first else 0)


# ── Simetrías de Legendre ─────────────────────────────────────────────────────

def _swap_lambda_z(P: MPoly) -> MPoly:
    """Homogenise in z over (x, λ), then dehomogenise in λ and rename z → λ."""
    if not P:
        return P
    ix, il = var_index("x"), var_index("lam")
    D = max(mon[ix] + mon[il] for mon in P.itermonoms())
    out = {}
    for mon, c in P.iterterms():
        new = list(mon)
        new[il] = D - mon[ix] - mon[il]
        out[tuple(new)] = c
    return RING.from_dict(out)


def legendre_symmetry_check(a: int, m: int, ell: int = 1, n: int = 2, u_mode=None) -> VerificationReport:
    """
    P(x, λ) = P(x, z)-swap and P(x+1, λ+1) = (−1)^{(a+1)m} P(−x, −λ) on the
    pencil y^n = x^a (x−1)^a (x−λ)^a.
    """
    spec = PencilSpec("legendre", n=n, ell=ell, abc=(a, a, a))
    P = atomic_inflection(spec, m, u_mode).poly
    rb = ReportBuilder("legendre.symmetry", {"a": a, "m": m, "ell": ell, "n": n})
    rb.expect("lambda-z swap", _swap_lambda_z(P), P)
    shifted = translate(P, {"x": 1, "lam": 1})
    reflected = substitute(P, {"x": -X, "lam": -LAM})
    sign = (-1) ** ((a + 1) * m)
    rb.expect("translation sign", shifted, reflected * sign)
    alternate = (-1) ** (a * m)
    if alternate != sign:
        rb.note(f"alternate sign (-1)^(am) = {alternate} differs from the recursion sign {sign} at a={a}, m={m}")
    return rb.finish()


# ── Pencil D6 ─────────────────────────────────────────────────────────────────

@dataclass
class D6Factor:
    m: int
    e: int
    monomial_divides: bool
    has_factor_4z_minus_1: bool
    p_star: MPoly | None

    @property
    def factors(self) -> bool:
        return self.monomial_divides and self.has_factor_4z_minus_1

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "e": self.e,
            "monomial_divides": self.monomial_divides,
            "has_factor_4z_minus_1": self.has_factor_4z_minus_1,
            "p_star": to_text(self.p_star) if self.p_star is not None else None,
        }


def d6_factor(m: int, ell: int = 1, n: int | None = None) -> D6Factor:
    """Peel x^{(−m) mod 3}·(4z−1) off the D6 P_m; failure is data, not an error."""
    spec = PencilSpec("d6", n=n if n is not None else 2 * ell, ell=ell)
    P = atomic_inflection(spec, m).poly
    e = (-m) % 3
    monomial_divides = multiplicity(X, P) >= e
    rest = exact_divide(P, X**e) if monomial_divides else P
    try:
        star = exact_divide(rest, Z * 4 - 1)
        has_factor = True
    except NotDivisibleError:
        star, has_factor = None, False
    if not (monomial_divides and has_factor):
        logger.warning(f"[Pencil] D6 P_{m}: predicted factor x^{e}(4z-1) does not divide")
        star = None
    return D6Factor(m, e, monomial_divides, has_factor, star)


def d6_newton_checks(m: int) -> VerificationReport:
    """Newton polygons of the D6 curve at the origin and at (∛(−1/2), 1/4), with δ's."""
    # deferred to avoid circular import
    from inflex.core.lattice import (
        RefusedStatementError,
        corrections_for,
        expected_polygon,
        lower_hull_delta,
        newton_polygon,
    )

    rb = ReportBuilder("d6.newton-polygons", {"m": m})
    if m < 3:
        return rb.refuse("the D6 statements start at m = 3")
    if m == 3:
        P = atomic_inflection(PencilSpec("d6"), 3).poly
    else:
        fac = d6_factor(m)
        if not rb.expect_true("factors", fac.factors, {"m": m, "e": fac.e}):
            return rb.finish()
        P = fac.p_star

    origin = newton_polygon(P, ("x", "z"))
    rb.expect("New_p1", origin, expected_polygon("d6.origin", {"m": m}))
    delta1 = None
    if not P.coeff_wrt(X, 0).coeff_wrt(Z, 0):
        _, delta1 = lower_hull_delta(P, ("x", "z"))
    rb.record("delta_p1", delta1)

    quotient = CUBE_ROOT_MINUS_HALF
    centered = substitute(P, {"x": X + W, "z": Z + QQ(1, 4)}, quotient)
    try:
        rb.expect("New_pj", newton_polygon(centered, ("x", "z"), quotient),
                  expected_polygon("d6.centered", {"m": m}))
    except RefusedStatementError as exc:
        rb.note(str(exc))
    for c in corrections_for("d6.centered", m):
        rb.note(c.describe())
    delta_j = None
    if quotient.is_zero(centered.coeff_wrt(X, 0).coeff_wrt(Z, 0)):
        _, delta_j = lower_hull_delta(centered, ("x", "z"), quotient)
    rb.record("delta_pj", delta_j)

    if m == 3:
        rb.expect("delta_p1 = 3", delta1, 3)
        rb.expect("delta_pj = 1", delta_j, 1)
    elif m >= 5:
        q = (2 * m) // 3
        nu1 = 3 * q * (q - 1) // 2
        nuj = (m - 3) ** 2 // 4
        rb.expect("nu_1", delta1, nu1)
        rb.expect("nu_j", delta_j, nuj)
        phi2 = d6_phi2(m)
        flag = 1 if m % 6 in (1, 2, 3) else 0
        rb.record("genus_formula", 3 * phi2**2 - 3 * phi2 - 1 - nu1 - 3 * nuj + 3 * flag * (phi2 - 1))
        rb.note("v2 read as an x-axis vertex: its height comes from the trailing ',0' of the stated pair")
    return rb.finish()


def d6_phi1(r: int) -> int:
    return (-4, -2, 0, -1, 1, 3)[r % 6]


def d6_phi2(m: int) -> int:
    if m < 3:
        raise ValueError("φ₂ is defined for m ≥ 3")
    if m < 7:
        return {3: 2, 4: 2, 5: 3, 6: 4}[m]
    return 4 + 5 * ((m - 7) // 6) + (m - 1) % 6


def legendre_half_genus_table(m: int) -> dict:
    """Tabulated geometric genus of the Legendre (1,1,1) curve at u = 1/2."""
    if m < 1:
        raise ValueError("m must be positive")
    genus = max(0, math.comb(2 * m - 1, 2) - 3 * ((m - 1) ** 2 // 2) - 3 * m + 3)
    return {"m": m, "genus": genus, "assumption": "legendre.singularity-support (conjecture)"}


# ── Fórmulas de coeficientes ──────────────────────────────────────────────────

Target = tuple[str, tuple[int, int], MPoly]


def _inv_fact(k: int):
    return QQ(1, math.factorial(k))


def _legendre_generic_targets(m: int, params: dict, u: MPoly) -> list[Target]:
    a, b, c = params.get("abc", (1, 1, 1))
    fm = _inv_fact(m)
    return [
        ("v1", (m * a + m * c - m, 0), falling((a + c) * u, m) * fm * (-1) ** (b * m)),
        ("v2", (m * (a + b + c) - m, 0), falling((a + b + c) * u, m) * fm),
        ("v3", (m * a - m, m * c), falling(a * u, m) * fm * (-1) ** ((b + c) * m)),
        ("v4", (m * a + m * b - m, m * c), falling((a + b) * u, m) * fm * (-1) ** (c * m)),
    ]


def _legendre_half_targets(m: int, params: dict, u: MPoly) -> list[Target]:
    edge = u * falling(u * 3 - 1, m - 1) * _inv_fact(m - 1) * -2
    return [
        ("x^(m-2)lam^m", (m - 2, m), const(QQ(-1, 8))),
        ("x^(m-2)lam^2", (m - 2, 2), const(QQ(-1, 8))),
        ("x^(2m-1)", (2 * m - 1, 0), edge),
        ("x^(2m-1)lam", (2 * m - 1, 1), edge),
        ("x^(2m-2)lam", (2 * m - 2, 1),
         (u * (4 * m - 1) - m) * u * falling(u * 3 - 2, m - 2) * _inv_fact(m - 1)),
        ("lam^m", (0, m), falling(u, m) * _inv_fact(m)),
        ("x^(2m)", (2 * m, 0), falling(u * 3, m) * _inv_fact(m)),
    ]


def weierstrass_v4(m: int, u: MPoly) -> MPoly:
    """[(m−2, 1)]P*_m = 3^(m−1)·u·C(2u−2, m−2), read off the inflection polynomial of 3x² + λ."""
    if m < 3:
        raise ValueError("the centered Weierstrass coefficient starts at m = 3")
    return u * 3 ** (m - 1) * falling(u * 2 - 2, m - 2) * _inv_fact(m - 2)


def _weierstrass_centered_targets(m: int, params: dict, u: MPoly) -> list[Target]:
    half, up = m // 2, (m + 1) // 2
    v1 = falling(u, half) * QQ(3 ** (half - m % 2), math.factorial(half))
    if m % 2:
        v1 = v1 * (u * 3 - m + 1)
    out = [
        ("v1", (0, up), v1),
        ("v2", (0, m), falling(u, m) * _inv_fact(m)),
        ("v4", (m - 2, 1), weierstrass_v4(m, u)),
        ("v5", (2 * m - 1, 0), falling(u * 3, m) * _inv_fact(m - 1) * 2),
        ("v6", (2 * m, 0), falling(u * 3, m) * _inv_fact(m)),
    ]
    if m % 2:
        out.append(("v3", (1, (m - 1) // 2),
                    falling(u, up) * QQ(2 * 3 ** up, math.factorial((m - 1) // 2))))
        k = half - 1
        odd_form = (falling(u, up) * factorial_gadget(u * 2 - 3, k, "double_falling")
                    * QQ(2 * 3 ** (m - 1), math.factorial(k) * math.prod(3 + 2 * i for i in range(k))))
        out.append(("v4.odd-form", (m - 2, 1), odd_form))
    return out


def _d4_targets(m: int, params: dict, u: MPoly) -> list[Target]:
    fm = _inv_fact(m)
    return [
        ("s^m", (0, m), falling(u, m) * fm),
        ("x^(2m)", (2 * m, 0), falling(u * 3, m) * fm),
        ("x^(4m)", (4 * m, 0), falling(u * 5, m) * fm),
    ]


def _odd_products(j: int) -> int:
    return math.prod(i * (2 * i + 1) for i in range(1, j + 1))


def _inner_edge_targets(m: int, params: dict, u: MPoly) -> list[Target]:
    out = []
    if m % 2 == 0:
        k = m // 2
        for j in range(1, k - 1):
            c = QQ(3 ** (j + k) * (2 * j + 1), math.factorial(k - j) * _odd_products(j))
            out.append((f"c_{j},{k}", (2 * j, k - j),
                        falling(u, k) * factorial_gadget(u * 2 - 2 * k + 1, j, "double_rising") * c))
    else:
        k = (m - 1) // 2
        for j in range(1, k - 1):
            d = QQ(2 * 3 ** (j + k + 1), math.factorial(k - j) * _odd_products(j))
            out.append((f"d_{j},{k}", (2 * j + 1, k - j),
                        falling(u, k + 1) * factorial_gadget(u * 2 - 2 * k + 1, j, "double_rising") * d))
    return out


@dataclass(frozen=True)
class CoefficientTheorem:
    id: str
    family: str
    names: tuple[str, str]
    min_m: int
    u_mode: str
    targets: Callable[[int, dict, MPoly], list[Target]]
    center: dict = field(default_factory=dict)
    kind: str = "theorem"


WEIERSTRASS_CENTER: dict = {"x": 1, "lam": -3}

COEFFICIENT_THEOREMS: dict[str, CoefficientTheorem] = {
    t.id: t for t in (
        CoefficientTheorem("legendre.generic.vertices", "legendre", ("x", "lam"), 1, "symbolic",
                           _legendre_generic_targets),
        CoefficientTheorem("legendre.u-half.coefficients", "legendre", ("x", "lam"), 2, "spec",
                           _legendre_half_targets),
        CoefficientTheorem("weierstrass.centered.coefficients", "weierstrass", ("x", "lam"), 3, "symbolic",
                           _weierstrass_centered_targets, WEIERSTRASS_CENTER),
        CoefficientTheorem("d4.vertices", "d4", ("x", "s"), 1, "symbolic", _d4_targets),
        CoefficientTheorem("weierstrass.inner-edge", "weierstrass", ("x", "lam"), 6, "spec",
                           _inner_edge_targets, WEIERSTRASS_CENTER, kind="conjecture"),
    )
}


def coefficient_check(theorem_id: str, m_values: Iterable[int], abc: tuple[int, int, int] = (1, 1, 1),
                      u_mode=None) -> VerificationReport:
    """Compare monomial coefficients of P_m with the closed forms of a registered statement."""
    theorem = COEFFICIENT_THEOREMS.get(theorem_id)
    if theorem is None:
        raise UnknownCheckError(f"unknown coefficient statement {theorem_id!r}")
    spec = PencilSpec(theorem.family, abc=tuple(abc) if theorem.family == "legendre" else (1, 1, 1))
    mode = u_mode if u_mode is not None else theorem.u_mode
    label, value = resolve_u(spec, mode)
    m_values = sorted(set(m_values))
    rb = ReportBuilder(theorem_id, {"m": m_values, "u": label, "abc": list(abc)})
    skipped = [m for m in m_values if m < theorem.min_m]
    if skipped:
        rb.note(f"m < {theorem.min_m} outside the statement: {skipped}")
    u = u_poly(value)
    for m in m_values:
        if m < theorem.min_m:
            continue
        P = atomic_inflection(spec, m, mode).poly
        if theorem.center:
            P = translate(P, theorem.center)
        for name, (i, j), expected in theorem.targets(m, {"abc": tuple(abc)}, u):
            got = coefficient(P, {theorem.names[0]: i, theorem.names[1]: j})
            rb.expect(f"m={m} {name}", got, expected,
                      {"m": m, "monomial": [i, j], "label": name,
                       "computed": to_text(got), "expected": to_text(expected)})
    return rb.finish()
