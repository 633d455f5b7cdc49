"""
Inflex — Aritmética módulo p
Polinomios sobre F_p, carácter cuadrático y evaluación vectorizada en mallas F_p × F_p.
"""
import logging

import numpy as np
from sympy import isprime
from sympy.ntheory import jacobi_symbol

from inflex.core.algebra import (
    InflexError,
    MPoly,
    PrimePoly,
    gcd_squarefree,
    reduce_mod_p,
    var_index,
    variables_of,
)

logger = logging.getLogger(__name__)


class BadPrimeError(InflexError):
    pass


def require_prime(p: int, excluded: frozenset[int] = frozenset()) -> int:
    if not isprime(p):
        raise BadPrimeError(f"{p} is not prime")
    if p in excluded:
        raise BadPrimeError(f"p={p} is excluded for this curve (bad reduction)")
    return p


def chi(a: int, p: int) -> int:
    """Quadratic character with χ(0) = 0."""
    a %= p
    if a == 0:
        return 0
    return jacobi_symbol(a, p)


def character_table(p: int) -> np.ndarray:
    """χ(a) for a = 0..p-1, via the set of nonzero squares."""
    table = -np.ones(p, dtype=np.int64)
    table[0] = 0
    squares = (np.arange(1, p, dtype=np.int64) ** 2) % p
    table[squares] = 1
    return table


def is_squarefree_mod_p(P: MPoly, p: int) -> tuple[bool, PrimePoly]:
    """(squarefree?, gcd with partials) for the reduction of P mod p."""
    Pp = reduce_mod_p(P, p)
    g, _ = gcd_squarefree(Pp)
    return g.is_ground, g


def divides_mod_p(Q: MPoly, P: MPoly, p: int) -> bool:
    Pp, Qp = reduce_mod_p(P, p), reduce_mod_p(Q, p)
    _, r = Pp.div(Qp)
    return not r


# ── Evaluación en mallas ──────────────────────────────────────────────────────

def _int_terms(Pp: PrimePoly, names: tuple[str, ...], p: int) -> list[tuple[tuple[int, ...], int]]:
    extra = [v for v in variables_of(Pp) if v not in names]
    if extra:
        raise ValueError(f"unexpected variables {extra}")
    idx = [var_index(n) for n in names]
    return [(tuple(m[i] for i in idx), int(c) % p) for m, c in Pp.iterterms()]


def evaluate_grid(Pp: PrimePoly, names: tuple[str, str], p: int) -> np.ndarray:
    """Values of a bivariate F_p polynomial on the full p × p grid (axis 0 = first name)."""
    terms = _int_terms(Pp, names, p)
    a = np.arange(p, dtype=np.int64)
    dmax = max((max(e) for e, _ in terms), default=0)
    powers = np.ones((dmax + 1, p), dtype=np.int64)
    for k in range(1, dmax + 1):
        powers[k] = powers[k - 1] * a % p
    out = np.zeros((p, p), dtype=np.int64)
    for (i, j), c in terms:
        out = (out + c * np.outer(powers[i], powers[j]) % p) % p
    return out


def count_zeros_grid(Pp: PrimePoly, names: tuple[str, str], p: int) -> int:
    return int(np.count_nonzero(evaluate_grid(Pp, names, p) == 0))
