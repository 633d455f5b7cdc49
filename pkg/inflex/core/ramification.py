"""
Inflex — Ramificación
Órdenes de inflexión en un punto de ramificación superelíptico, μ(B),
matrices de Vandermonde N(n,g,ℓ), matrices tropicales, grafos de Plücker,
matrices de Gessel–Viennot generalizadas y la clase A¹ global.
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product

import numpy as np
from scipy.optimize import linear_sum_assignment
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

from inflex.core.algebra import X, MPoly, PrecisionError, rational, to_text
from inflex.core.constants import GV_MAX_PRODUCTS, SERIES_PRECISION_MARGIN
from inflex.core.pencils import HypothesisError, check_hypotheses, monomial_basis
from inflex.core.reports import ReportBuilder, VerificationReport
from inflex.core.series import TruncatedSeries, basis_series, local_inversion, series_wronskian

logger = logging.getLogger(__name__)


def _binom(a: int, b: int) -> int:
    return math.comb(a, b) if 0 <= b <= a else 0


def _genus(n: int, d: int) -> int:
    return (d - 1) * (n - 1) // 2


def _integer_det(rows: list[list[int]]) -> int:
    if not rows:
        return 1
    return int(DomainMatrix([[ZZ(v) for v in row] for row in rows], (len(rows), len(rows)), ZZ).det())


# ── Órdenes de inflexión ──────────────────────────────────────────────────────

def inflection_orders(n: int, d: int, ell: int) -> list[int]:
    """v_y(x^i y^j) = ni + j over the monomial basis of |ℓ∞|, sorted."""
    basis = monomial_basis(n, d, ell)
    return sorted(n * i + j for i, j in basis.elements)


def mu_B(n: int, beta: int) -> int:
    if n < 2 or beta < 0:
        raise ValueError("need n ≥ 2 and β ≥ 0")
    num = (n - 1) * n * n * (n + 1) * beta * beta + 2 * (n - 1) * n * (5 - n) * beta
    return num // 24


def mu_B_check(n: int, alpha: int, beta: int) -> VerificationReport:
    """Closed form of μ(B) against Σ(μ_i − i) and the tropical permanent."""
    rb = ReportBuilder("ramification.mu-B", {"n": n, "alpha": alpha, "beta": beta})
    d, ell = n * beta + 1, n * alpha
    check_hypotheses(n, d, ell)
    mu = inflection_orders(n, d, ell)
    closed = mu_B(n, beta)
    rb.record("orders", mu)
    rb.expect("sum(mu_i - i)", sum(m - i for i, m in enumerate(mu)), closed)
    trop, permanent = tropical_permanent(n, alpha, beta)
    rb.expect("tropical permanent", permanent, closed)
    rb.expect("diagonal sum", trop.diagonal_sum, closed)
    return rb.finish()


# ── Vandermonde ───────────────────────────────────────────────────────────────

@dataclass
class VandermondeN:
    n: int
    g: int
    ell: int
    orders: list[int]
    matrix: list[list[int]]
    det: int
    lower_offset: int
    lower_block: list[list[int]]
    lower_det: int

    def to_dict(self) -> dict:
        return {
            "n": self.n, "g": self.g, "ell": self.ell,
            "orders": self.orders,
            "det": self.det,
            "lower_offset": self.lower_offset,
            "lower_block": self.lower_block,
            "lower_det": self.lower_det,
        }


def vandermonde_N(n: int, g: int, ell: int) -> VandermondeN:
    """N(n,g,ℓ) = (binom(μ_j, i)) and its lower block past the unitriangular prefix."""
    if (2 * g) % (n - 1):
        raise HypothesisError(f"no superelliptic degree d gives genus {g} for n={n}")
    d = 2 * g // (n - 1) + 1
    alpha, beta = check_hypotheses(n, d, ell)
    mu = inflection_orders(n, d, ell)
    size = len(mu)
    matrix = [[_binom(mu[j], i) for j in range(size)] for i in range(size)]
    offset = n * (alpha - (n - 1) * beta)
    lower = [row[offset:] for row in matrix[offset:]]
    return VandermondeN(n, g, ell, mu, matrix, _integer_det(matrix), offset, lower, _integer_det(lower))


def gessel_viennot_M(alpha: int, beta: int) -> list[list[int]]:
    """M(α,β)_{w,v} = binom(α−β+v, 2v−w), 0 ≤ w, v ≤ β."""
    return [[_binom(alpha - beta + v, 2 * v - w) for v in range(beta + 1)] for w in range(beta + 1)]


# ── Columnas y matriz tropical ────────────────────────────────────────────────

def tail_columns(n: int, alpha: int, beta: int) -> list[tuple[int, int]]:
    """Column pairs (i₀, k) of W_*(B), lexicographic; there are g + 1 of them."""
    check_hypotheses(n, n * beta + 1, n * alpha)
    start = alpha - (n - 1) * beta
    cols = [(i0, k) for i0 in range(start, alpha + 1) for k in range(max(0, (alpha - i0 - 1) // beta) + 1)]
    g = _genus(n, n * beta + 1)
    if len(cols) != g + 1:
        raise HypothesisError(f"expected {g + 1} tail columns, found {len(cols)}")
    return cols


@dataclass
class TropicalMatrix:
    columns: list[tuple[int, int]]
    entries: list[list[int]]

    @property
    def diagonal_sum(self) -> int:
        return sum(self.entries[i][i] for i in range(len(self.entries)))

    def to_dict(self) -> dict:
        return {"columns": [list(c) for c in self.columns], "entries": self.entries}


def tropical_matrix(n: int, alpha: int, beta: int) -> TropicalMatrix:
    """
    Top row n(i₀ − α + (n−1)β) + k; each column drops by one per row and
    stays at zero once it gets there.
    """
    cols = tail_columns(n, alpha, beta)
    top = [n * (i0 - alpha + (n - 1) * beta) + k for i0, k in cols]
    entries = [[max(t - u, 0) for t in top] for u in range(len(cols))]
    return TropicalMatrix(cols, entries)


def tropical_permanent(n: int, alpha: int, beta: int) -> tuple[TropicalMatrix, int]:
    """Min-plus permanent, i.e. the optimal assignment cost."""
    trop = tropical_matrix(n, alpha, beta)
    cost = np.array(trop.entries, dtype=np.int64)
    rows, cols = linear_sum_assignment(cost)
    return trop, int(cost[rows, cols].sum())


# ── Posets y caminos de Plücker ───────────────────────────────────────────────

@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing parts, zero-padded to the poset's row count when needed."""
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(a < b for a, b in zip(self.parts, self.parts[1:])) or any(p < 0 for p in self.parts):
            raise ValueError(f"not a partition: {self.parts}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def multiplicities(self, n: int) -> tuple[int, ...]:
        """(c_1, ..., c_n) for λ = (1^{c_1}, ..., n^{c_n})."""
        return tuple(self.parts.count(m) for m in range(1, n + 1))

    def covers(self, other: "Partition") -> bool:
        """self = other plus one box."""
        if len(self.parts) != len(other.parts):
            return False
        diff = [a - b for a, b in zip(self.parts, other.parts)]
        return sorted(diff) == [0] * (len(diff) - 1) + [1]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class PluckerPath:
    partitions: tuple[Partition, ...]

    def __post_init__(self):
        for a, b in zip(self.partitions, self.partitions[1:]):
            if not b.covers(a):
                raise ValueError(f"{b} does not cover {a}")

    def at_weight(self, w: int) -> Partition | None:
        if not self.partitions:
            return None
        i = w - self.partitions[0].weight
        return self.partitions[i] if 0 <= i < len(self.partitions) else None

    def __len__(self) -> int:
        return len(self.partitions)

    def to_dict(self) -> list[str]:
        return [str(p) for p in self.partitions]


@dataclass
class PluckerGraph:
    """PG(i₀, k): partitions with i₀ parts in [1, n] of weight ≥ the column's base weight."""
    i0: int
    k: int
    n: int
    base_weight: int
    vertices: list[Partition]
    path_count: int
    occurrence: dict[Partition, int]
    paths: list[PluckerPath] | None = None

    def to_dict(self) -> dict:
        return {
            "i0": self.i0, "k": self.k, "n": self.n,
            "base_weight": self.base_weight,
            "path_count": self.path_count,
            "occurrence_weights": {str(p): w for p, w in sorted(self.occurrence.items())},
            "paths": [p.to_dict() for p in self.paths] if self.paths is not None else None,
        }


def _successors(lam: Partition, n: int) -> list[Partition]:
    out = []
    parts = list(lam.parts)
    for i in range(len(parts)):
        if parts[i] < n and (i == 0 or parts[i - 1] > parts[i]):
            nxt = parts.copy()
            nxt[i] += 1
            out.append(Partition(tuple(nxt)))
    return out


@lru_cache(maxsize=256)
def plucker_graph(i0: int, k: int, n: int, base_weight: int, enumerate_paths: bool = True) -> PluckerGraph:
    vertices = [Partition(parts) for parts in combinations_with_replacement(range(n, 0, -1), i0)
                if sum(parts) >= base_weight]
    vset = set(vertices)
    vertices.sort(key=lambda p: (p.weight, p.parts))
    succ = {v: [w for w in _successors(v, n) if w in vset] for v in vertices}
    pred: dict[Partition, list[Partition]] = {v: [] for v in vertices}
    for v, ws in succ.items():
        for w in ws:
            pred[w].append(v)

    from_source = {}
    for v in vertices:
        from_source[v] = 1 if not pred[v] else sum(from_source[p] for p in pred[v])
    to_sink = {}
    for v in reversed(vertices):
        to_sink[v] = 1 if not succ[v] else sum(to_sink[w] for w in succ[v])
    sources = [v for v in vertices if not pred[v]]
    total = sum(to_sink[v] for v in sources)
    occurrence = {v: from_source[v] * to_sink[v] for v in vertices}

    paths = None
    if enumerate_paths and total <= GV_MAX_PRODUCTS:
        paths = []
        stack = [(v, (v,)) for v in reversed(sources)]
        while stack:
            v, acc = stack.pop()
            if not succ[v]:
                paths.append(PluckerPath(acc))
                continue
            for w in reversed(succ[v]):
                stack.append((w, acc + (w,)))
    return PluckerGraph(i0, k, n, base_weight, vertices, total, occurrence, paths)


def maximal_paths(n: int, alpha: int, beta: int) -> dict[tuple[int, int], PluckerGraph]:
    """Plücker graph, maximal paths and occurrence weights per tail column (i₀, k)."""
    base = n * (alpha - (n - 1) * beta)
    return {(i0, k): plucker_graph(i0, k, n, base - k) for i0, k in tail_columns(n, alpha, beta)}


# ── Matrices de Gessel–Viennot generalizadas ──────────────────────────────────

@lru_cache(maxsize=16)
def t_ring(n: int):
    """QQ[t_1..t_n, c, y]."""
    R, *gens = ring(",".join([f"t{i}" for i in range(1, n + 1)] + ["c", "y"]), QQ)
    return R, gens[:n], gens[n], gens[n + 1]


def _multinomial(cs: tuple[int, ...]) -> int:
    out = math.factorial(sum(cs))
    for c in cs:
        out //= math.factorial(c)
    return out


def _t_monomial(lam: Partition, n: int):
    R, ts, _, _ = t_ring(n)
    out = R.one
    for t, c in zip(ts, lam.multiplicities(n)):
        out *= t**c
    return out * _multinomial(lam.multiplicities(n))


def _path_column(graph: PluckerGraph, path: PluckerPath, rows: int) -> list:
    R = t_ring(graph.n)[0]
    col = []
    for u in range(rows):
        lam = path.at_weight(graph.base_weight + u)
        col.append(R.zero if lam is None else _t_monomial(lam, graph.n) * QQ(1, graph.occurrence[lam]))
    return col


def _full_column(graph: PluckerGraph, rows: int) -> list:
    R = t_ring(graph.n)[0]
    col = []
    for u in range(rows):
        acc = R.zero
        for lam in graph.vertices:
            if lam.weight == graph.base_weight + u:
                acc += _t_monomial(lam, graph.n)
        col.append(acc)
    return col


def _t_det(columns: list[list], n: int):
    R = t_ring(n)[0]
    size = len(columns)
    rows = [[columns[j][i] for j in range(size)] for i in range(size)]
    return DomainMatrix(rows, (size, size), R.to_domain()).det()


@dataclass
class GVSum:
    n: int
    alpha: int
    beta: int
    columns: list[tuple[int, int]]
    products: int
    enumerated: bool
    path_sum: object
    column_sum: object

    @property
    def t_polynomial(self):
        return self.path_sum if self.enumerated else self.column_sum

    def to_dict(self) -> dict:
        return {
            "n": self.n, "alpha": self.alpha, "beta": self.beta,
            "columns": [list(c) for c in self.columns],
            "products": self.products,
            "enumerated": self.enumerated,
            "t_polynomial": str(self.t_polynomial),
        }


def gv_sum(n: int, alpha: int, beta: int) -> GVSum:
    """
    Σ_p det M̃(p) over P* = Π P(i₀,k). When P* is small it is summed
    product by product; the column-sum determinant is always computed too.
    """
    graphs = maximal_paths(n, alpha, beta)
    cols = list(graphs)
    rows = len(cols)
    products = math.prod(g.path_count for g in graphs.values())
    column_sum = _t_det([_full_column(graphs[c], rows) for c in cols], n)
    path_sum = None
    enumerated = products <= GV_MAX_PRODUCTS and all(g.paths is not None for g in graphs.values())
    if enumerated:
        per_column = [[_path_column(graphs[c], p, rows) for p in graphs[c].paths] for c in cols]
        R = t_ring(n)[0]
        path_sum = R.zero
        for choice in product(*per_column):
            path_sum += _t_det(list(choice), n)
    else:
        logger.warning(f"[Ramification] |P*| = {products} for ({n},{alpha},{beta}); using column sums only")
    return GVSum(n, alpha, beta, cols, products, enumerated, path_sum, column_sum)


def specialize_binomial(P, n: int, symbolic: bool = False):
    """t_i ↦ binom(n,i), or binom(n,i)·c·y^{n−i} when ``symbolic``."""
    R, ts, c, y = t_ring(n)
    images = [(t, R(math.comb(n, i)) * (c * y**(n - i) if symbolic else R.one))
              for i, t in enumerate(ts, start=1)]
    return P.compose(images)


def gv_sum_identity(n: int, alpha: int, beta: int) -> VerificationReport:
    """det N(n,g,ℓ) = Σ_p det M̃(p)(binom(n,1), ..., binom(n,n))."""
    rb = ReportBuilder("ramification.gv-identity", {"n": n, "alpha": alpha, "beta": beta})
    g = _genus(n, n * beta + 1)
    vn = vandermonde_N(n, g, n * alpha)
    gv = gv_sum(n, alpha, beta)
    rb.record("lower block det", vn.lower_det)
    rb.record("t_polynomial", str(gv.t_polynomial))
    if gv.enumerated:
        rb.expect("path sum = column sum", str(gv.path_sum), str(gv.column_sum))
    else:
        rb.note(f"|P*| = {gv.products} exceeds the enumeration cap; multilinear column sums used")
    value = specialize_binomial(gv.t_polynomial, n)
    rb.expect("identity", str(value), str(vn.det))

    R, _, c, y = t_ring(n)
    weight = sum(i0 for i0, _ in gv.columns)
    rb.expect("leading monomial", str(specialize_binomial(gv.t_polynomial, n, symbolic=True)),
              str(R(vn.det) * c**weight * y**mu_B(n, beta)))
    if n == 2:
        rb.expect("n=2 Gessel-Viennot", vn.det,
                  2 ** math.comb(beta + 1, 2) * _integer_det(gessel_viennot_M(alpha, beta)))
    return rb.finish()


# ── Clase A¹ global ───────────────────────────────────────────────────────────

@dataclass
class A1Class:
    d: int
    g: int
    r: int
    gamma: int
    multiplier: int | None
    obstruction: str | None = None
    criterion: dict = field(default_factory=dict)

    @property
    def defined(self) -> bool:
        return self.multiplier is not None

    def to_dict(self) -> dict:
        out = {"d": self.d, "g": self.g, "r": self.r, "gamma": self.gamma}
        if self.defined:
            out["class"] = f"{self.multiplier}*H"
        else:
            out["obstruction"] = self.obstruction
        if self.criterion:
            out["criterion"] = self.criterion
        return out


def plucker_degree_a1(d: int, g: int, r: int, ell: int | None = None, n: int | None = None) -> A1Class:
    """
    γ_C = (r+1)d + (r+1)r(g−1), which is also deg L^{r+1} ⊗ K^{binom(r+1,2)};
    the class (γ_C/2)·H exists iff that degree is even.
    """
    if d < 1 or r < 1 or g < 0:
        raise ValueError("need d ≥ 1, r ≥ 1, g ≥ 0")
    gamma = (r + 1) * d + (r + 1) * r * (g - 1)
    criterion = {}
    if ell is not None:
        criterion = {"ell": ell, "n": n, "ell_or_dimension_even": ell % 2 == 0 or (r + 1) % 2 == 0}
    if gamma % 2:
        return A1Class(d, g, r, gamma, None, "deg L^(r+1) ⊗ K^binom(r+1,2) is odd", criterion)
    return A1Class(d, g, r, gamma, gamma // 2, None, criterion)


def superelliptic_a1(n: int, d: int, ell: int) -> A1Class:
    """A¹ class of |ℓ∞| on y^n = f, deg f = d, for ℓ ≥ 2g − 1 (r = ℓ − g)."""
    if math.gcd(n, d) != 1:
        raise HypothesisError(f"gcd(n, d) = gcd({n}, {d}) must be 1")
    g = _genus(n, d)
    if ell < max(2 * g - 1, 1) or ell - g < 1:
        raise HypothesisError(f"ℓ = {ell} is below the nonspecial range for g = {g}")
    return plucker_degree_a1(ell, g, ell - g, ell=ell, n=n)


def a1_parity_check(max_n: int = 4, max_g: int = 6, max_ell: int = 20) -> VerificationReport:
    """Parity of γ_C matches "ℓ or dim |ℓ∞| even" across small (n, d, ℓ)."""
    rb = ReportBuilder("ramification.a1-parity", {"max_n": max_n, "max_g": max_g, "max_ell": max_ell})
    checked = 0
    for n in range(2, max_n + 1):
        for d in range(2, 2 * max_g + 2):
            if math.gcd(n, d) != 1 or _genus(n, d) > max_g:
                continue
            g = _genus(n, d)
            for ell in range(2 * g + n - 1, max_ell + 1):
                cls = superelliptic_a1(n, d, ell)
                checked += 1
                rb.expect(f"n={n} d={d} ell={ell}", cls.defined, cls.criterion["ell_or_dimension_even"],
                          {"n": n, "d": d, "ell": ell, "gamma": cls.gamma})
    rb.record("cases", checked)
    return rb.finish()


# ── Comprobación por series ───────────────────────────────────────────────────

def _default_curve(d: int) -> MPoly:
    f = X
    for k in range(1, d):
        f = f * (X - k)
    return f


def series_cross_check(n: int, d: int, ell: int, f: MPoly | None = None, gamma=0,
                       N: int | None = None) -> VerificationReport:
    """
    Wronskian of (x−γ)^i y^j over the local inversion x(y) at (γ, 0):
    valuation μ(B), leading coefficient Π D^{μ_i} b_i|₀ · det N.
    """
    alpha, beta = check_hypotheses(n, d, ell)
    f = f if f is not None else _default_curve(d)
    gamma = rational(gamma)
    g = _genus(n, d)
    mu = mu_B(n, beta)
    N = N if N is not None else mu + (ell - g) + SERIES_PRECISION_MARGIN
    rb = ReportBuilder("ramification.series-cross-check",
                       {"n": n, "d": d, "ell": ell, "f": to_text(f), "gamma": str(gamma), "N": N})
    if N <= mu:
        raise PrecisionError(f"precision N={N} must exceed μ(B)={mu}")

    x_of_y = local_inversion(f, gamma, n, N)
    shifted = x_of_y - TruncatedSeries.constant(gamma, N)
    elements = sorted(monomial_basis(n, d, ell).elements, key=lambda e: n * e[0] + e[1])
    basis = basis_series(elements, shifted)
    w = series_wronskian(basis)
    v = w.valuation
    if v is None:
        raise PrecisionError(f"Wronskian vanishes up to y^{w.precision}; raise N")

    c = shifted[n]
    vn = vandermonde_N(n, g, ell)
    expected = c ** sum(i for i, _ in elements) * vn.det
    rb.expect("valuation", v, mu)
    rb.expect("leading coefficient", w[v], expected,
              {"computed": str(w[v]), "expected": str(expected), "c": str(c), "det_N": vn.det})
    return rb.finish()
