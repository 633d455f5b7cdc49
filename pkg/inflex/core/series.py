"""
Inflex — Series formales truncadas
Series en una variable con coeficientes racionales exactos y precisión explícita,
inversión local en una raíz simple y Wronskianos de Hasse.
"""
import logging
import math
from dataclasses import dataclass
from typing import Sequence

from sympy.polys.domains import QQ

from inflex.core.algebra import (
    MPoly,
    NotSimpleRootError,
    PrecisionError,
    X,
    Y,
    rational,
    var_index,
    variables_of,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncatedSeries:
    """
    c_0 + c_1 y + ... + c_N y^N + O(y^(N+1)).

    ``precision`` is N: every coefficient up to y^N is exact.
    """
    coeffs: tuple
    var: str = "y"

    def __post_init__(self):
        if not self.coeffs:
            raise PrecisionError("a series needs at least one known coefficient")

    # ── Construcción ──────────────────────────────────────────────────────────

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, precision: int, var: str = "y") -> "TruncatedSeries":
        out = [rational(c) for c in coeffs[:precision + 1]]
        out += [QQ.zero] * (precision + 1 - len(out))
        return cls(tuple(out), var)

    @classmethod
    def monomial(cls, k: int, precision: int, coeff=1, var: str = "y") -> "TruncatedSeries":
        out = [QQ.zero] * (precision + 1)
        if k <= precision:
            out[k] = rational(coeff)
        return cls(tuple(out), var)

    @classmethod
    def constant(cls, c, precision: int, var: str = "y") -> "TruncatedSeries":
        return cls.monomial(0, precision, c, var)

    # ── Propiedades ───────────────────────────────────────────────────────────

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    @property
    def valuation(self) -> int | None:
        """Least index with a nonzero coefficient; None if zero at this precision."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def leading(self) -> tuple[int, "QQ.dtype"]:
        v = self.valuation
        if v is None:
            raise PrecisionError(f"series vanishes up to y^{self.precision}")
        return v, self.coeffs[v]

    def _valuation_bound(self) -> int:
        v = self.valuation
        return self.precision + 1 if v is None else v

    def __getitem__(self, k: int):
        if k > self.precision:
            raise PrecisionError(f"coefficient y^{k} beyond precision {self.precision}")
        return self.coeffs[k]

    # ── Aritmética ────────────────────────────────────────────────────────────

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self.precision:
            raise PrecisionError(f"cannot raise precision {self.precision} to {precision}")
        return TruncatedSeries(self.coeffs[:precision + 1], self.var)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        N = min(self.precision, other.precision)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs[:N + 1], other.coeffs[:N + 1])), self.var)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        c = rational(c)
        return TruncatedSeries(tuple(c * a for a in self.coeffs), self.var)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        # a known mod y^(Na+1) with valuation va, same for b
        N = min(self.precision + other._valuation_bound(),
                other.precision + self._valuation_bound())
        a, b = self.coeffs, other.coeffs
        out = [QQ.zero] * (N + 1)
        for i, ai in enumerate(a):
            if not ai or i > N:
                continue
            for j in range(min(len(b), N + 1 - i)):
                if b[j]:
                    out[i + j] += ai * b[j]
        return TruncatedSeries(tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedSeries":
        out = TruncatedSeries.constant(1, self.precision, self.var)
        for _ in range(k):
            out = out * self
        return out

    def hasse(self, k: int) -> "TruncatedSeries":
        """D^k_y; loses k digits of precision."""
        N = self.precision - k
        if N < 0:
            raise PrecisionError(f"D^{k} of a series known to y^{self.precision}")
        return TruncatedSeries(tuple(self.coeffs[j + k] * math.comb(j + k, k) for j in range(N + 1)), self.var)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        N = min(self.precision, other.precision)
        return self.coeffs[:N + 1] == other.coeffs[:N + 1]

    def __hash__(self):
        return hash(self.coeffs)

    def to_dict(self) -> dict:
        return {
            "var": self.var,
            "precision": self.precision,
            "coeffs": [str(c) for c in self.coeffs],
        }


# ── Evaluación de polinomios en series ────────────────────────────────────────

def univariate_coeffs(f: MPoly) -> list:
    """[c_0, ..., c_d] for f in x only."""
    extra = [v for v in variables_of(f) if v != "x"]
    if extra:
        raise ValueError(f"expected a polynomial in x only, found {extra}")
    d = max(f.degree(X), 0)
    return [f.coeff_wrt(X, k).LC if f.coeff_wrt(X, k) else QQ.zero for k in range(d + 1)]


def compose_series(P: MPoly, x_of_y: TruncatedSeries) -> TruncatedSeries:
    """P(x(y), y) for P in x and y."""
    extra = [v for v in variables_of(P) if v not in ("x", "y")]
    if extra:
        raise ValueError(f"expected a polynomial in x and y, found {extra}")
    N = x_of_y.precision
    ix, iy = var_index("x"), var_index("y")
    out = TruncatedSeries.constant(0, N)
    powers: dict[int, TruncatedSeries] = {0: TruncatedSeries.constant(1, N)}
    for monom, coeff in P.iterterms():
        i, j = monom[ix], monom[iy]
        if i not in powers:
            powers[i] = x_of_y ** i
        out = out + powers[i] * TruncatedSeries.monomial(j, N, coeff)
    return out


# ── Inversión local ───────────────────────────────────────────────────────────

def local_inversion(f: MPoly, gamma, n: int, N: int) -> TruncatedSeries:
    """
    x(y) with x(0)=γ and f(x(y)) ≡ y^n mod y^(N+1).

    γ must be a simple root of f; otherwise NotSimpleRootError.
    """
    if n < 1:
        raise ValueError("n must be positive")
    gamma = rational(gamma)
    c = univariate_coeffs(f)
    # Taylor coefficients of f at γ: D^k f(γ)
    taylor = []
    for k in range(len(c)):
        taylor.append(sum((c[j] * math.comb(j, k) * gamma ** (j - k) for j in range(k, len(c))), QQ.zero))
    if taylor[0]:
        raise NotSimpleRootError(f"f({gamma}) = {taylor[0]} is not zero")
    slope = taylor[1] if len(taylor) > 1 else QQ.zero
    if not slope:
        raise NotSimpleRootError(f"D¹f vanishes at {gamma}")

    h = [QQ.zero] * (N + 1)
    for k in range(1, N + 1):
        hk = TruncatedSeries(tuple(h[:k]) + (QQ.zero,) * (N + 1 - k))
        # [y^k] f(γ + h_{<k}) without the linear term in the unknown a_k
        value = QQ.zero
        power = TruncatedSeries.constant(1, k)
        hk = hk.truncate(k)
        for j in range(1, len(taylor)):
            power = power * hk
            if taylor[j]:
                value += taylor[j] * power.coeffs[k]
        target = QQ.one if k == n else QQ.zero
        h[k] = (target - value) / slope
    h[0] = gamma
    logger.debug(f"[Series] local inversion at {gamma}, n={n}, N={N}")
    return TruncatedSeries(tuple(h))


def back_substitute(f: MPoly, x_of_y: TruncatedSeries) -> TruncatedSeries:
    """f(x(y)) as a series; compare with y^n to certify an inversion."""
    return compose_series(f, x_of_y)


# ── Wronskiano ────────────────────────────────────────────────────────────────

def series_wronskian(basis: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """det(D^i_y b_j), i = 0..r, by Laplace expansion along rows, memoised on column sets."""
    r1 = len(basis)
    if r1 == 0:
        return TruncatedSeries.constant(1, 0)
    N = min(b.precision for b in basis)
    if N < r1 - 1:
        raise PrecisionError(f"precision {N} below Wronskian order {r1 - 1}")
    rows = [[b.truncate(N).hasse(i) for b in basis] for i in range(r1)]

    memo: dict[int, TruncatedSeries] = {0: TruncatedSeries.constant(1, N)}

    def minor(mask: int) -> TruncatedSeries:
        if mask in memo:
            return memo[mask]
        t = bin(mask).count("1") - 1  # row index being expanded
        cols = [j for j in range(r1) if mask >> j & 1]
        acc = None
        for pos, j in enumerate(cols):
            term = rows[t][j] * minor(mask & ~(1 << j))
            if (t + pos) % 2:
                term = -term
            acc = term if acc is None else acc + term
        memo[mask] = acc
        return acc

    return minor((1 << r1) - 1)


def wronskian_leading(basis: Sequence[TruncatedSeries]) -> tuple[int, "QQ.dtype"]:
    """(valuation, leading coefficient) of the series Wronskian."""
    w = series_wronskian(basis)
    v = w.valuation
    if v is None:
        raise PrecisionError(f"Wronskian vanishes up to y^{w.precision}; raise the precision")
    return v, w.coeffs[v]


def basis_series(exponents: Sequence[tuple[int, int]], x_of_y: TruncatedSeries) -> list[TruncatedSeries]:
    """x(y)^i y^j for each (i, j)."""
    return [compose_series(X ** i * Y ** j, x_of_y) for i, j in exponents]
