"""
Inflex — Tests del núcleo algebraico
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import QQ

from inflex.core.algebra import (
    LAM,
    RING,
    S,
    SQRT_MINUS_HALF,
    W,
    X,
    BadDenominatorError,
    NotDivisibleError,
    ZeroPolynomialError,
    const,
    discriminant,
    divides,
    exact_divide,
    falling,
    factorial_gadget,
    gcd_squarefree,
    hasse_derivative,
    is_squarefree,
    multiplicity,
    parse_poly,
    primitive_part,
    proportional,
    reduce_mod_p,
    resultant,
    rising,
    substitute,
    support,
    to_text,
    translate,
)


# ── Factoriales y derivadas ───────────────────────────────────────────────────

def test_factorial_gadgets():
    assert falling(5, 3) == 60
    assert rising(2, 3) == 24
    assert factorial_gadget(7, 3, "double_falling") == 7 * 5 * 3
    assert factorial_gadget(1, 0) == 1
    assert falling(X, 2) == X**2 - X


def test_factorial_gadget_rejects_unknown_kind():
    with pytest.raises(ValueError):
        factorial_gadget(3, 2, "sideways")


def test_hasse_derivative_uses_binomials():
    assert hasse_derivative(X**5, "x", 2) == 10 * X**3
    assert hasse_derivative(X**2 * LAM, "lam", 1) == X**2
    assert hasse_derivative(X, "x", 2) == RING.zero


@given(st.integers(0, 12), st.integers(0, 6), st.integers(0, 6))
def test_hasse_composition(j, a, b):
    # D^a D^b = binom(a+b, a) D^(a+b)
    from math import comb
    P = X**j
    assert hasse_derivative(hasse_derivative(P, "x", b), "x", a) == \
        hasse_derivative(P, "x", a + b) * comb(a + b, a)


_small_coeffs = st.lists(st.integers(-5, 5), min_size=1, max_size=5)


def _poly_in_x(coeffs, lead=None):
    terms = list(coeffs) + ([lead] if lead is not None else [])
    return sum((c * X**i for i, c in enumerate(terms)), RING.zero)


@given(_small_coeffs, _small_coeffs, st.integers(0, 6))
def test_hasse_leibniz(fc, gc, k):
    f = _poly_in_x(fc) + LAM * X
    g = _poly_in_x(gc)
    expected = sum((hasse_derivative(f, "x", i) * hasse_derivative(g, "x", k - i) for i in range(k + 1)),
                   RING.zero)
    assert hasse_derivative(f * g, "x", k) == expected


# ── Texto canónico ────────────────────────────────────────────────────────────

def test_to_text_zero_and_fractions():
    assert to_text(RING.zero) == "0"
    assert to_text(parse_poly("x/2 - 1")) == "1/2*x - 1"


def test_to_text_is_stable_under_reparsing():
    P = parse_poly("3/4*x^4*lam - 2*x*s + 7")
    assert parse_poly(to_text(P)) == P


# ── División exacta ───────────────────────────────────────────────────────────

def test_exact_divide_and_multiplicity():
    P = (X - 1)**3 * (X + LAM)
    assert exact_divide(P, X - 1) == (X - 1)**2 * (X + LAM)
    assert multiplicity(X - 1, P) == 3
    assert divides(X + LAM, P)
    assert not divides(X + 2, P)


def test_exact_divide_refuses():
    with pytest.raises(NotDivisibleError):
        exact_divide(X**2 + 1, X - 1)
    with pytest.raises(ZeroPolynomialError):
        exact_divide(X, RING.zero)


def test_squarefree_part():
    P = (X - 1)**2 * (X + LAM)
    g, sqf = gcd_squarefree(P)
    assert g == X - 1
    assert sqf == (X - 1) * (X + LAM)
    assert not is_squarefree(P)
    assert is_squarefree(sqf)


def test_primitive_part_and_proportional():
    P = parse_poly("-4/3*x^2 + 2/3*lam")
    assert primitive_part(P) == 2 * X**2 - LAM
    assert proportional(P, 2 * X**2 - LAM) == QQ(-2, 3)
    assert proportional(P, X**2 - LAM) is None


# ── Sustitución y cocientes ───────────────────────────────────────────────────

def test_substitute_and_translate():
    P = X**2 + LAM
    assert substitute(P, {"x": 3, "lam": -9}) == RING.zero
    assert translate(P, {"x": 1}) == X**2 + 2 * X + 1 + LAM


def test_quotient_ring_reduction():
    assert SQRT_MINUS_HALF.reduce(W**2) == const(QQ(-1, 2))
    assert SQRT_MINUS_HALF.is_zero(2 * W**2 + 1)
    assert substitute(X**4, {"x": W}, SQRT_MINUS_HALF) == const(QQ(1, 4))


def test_support_folds_extension_coefficients():
    P = (W**2 + QQ(1, 2)) * X**3 + X * S
    assert support(P, ("x", "s"), SQRT_MINUS_HALF) == {(1, 1)}
    assert support(P, ("x", "s")) == {(3, 0), (1, 1)}


# ── Resultantes ───────────────────────────────────────────────────────────────

def test_resultant_detects_common_roots():
    assert not resultant((X - 1) * (X - 2), (X - 2) * (X + 5), "x")
    assert resultant(X**2 - 2, X**2 - 3, "x")


def test_discriminant_of_quadratic():
    D = discriminant(X**2 + S * X + 1, "x")
    assert proportional(D, S**2 - 4) is not None


def test_resultant_strategies_agree():
    f = X**4 + S * X**2 + LAM * X + 1
    g = hasse_derivative(f, "x", 1)
    assert resultant(f, g, "x", "direct") == resultant(f, g, "x", "interpolate")


def test_resultant_rejects_unknown_strategy():
    with pytest.raises(ValueError):
        resultant(X - 1, X + 1, "x", "guess")


@settings(max_examples=30)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.lists(st.integers(-4, 4), min_size=1, max_size=4),
       st.integers(1, 3), st.integers(1, 3))
def test_resultant_antisymmetry(fc, gc, f_lead, g_lead):
    f, g = _poly_in_x(fc, f_lead), _poly_in_x(gc, g_lead)
    sign = (-1) ** (len(fc) * len(gc))
    assert resultant(f, g, "x") == resultant(g, f, "x") * sign


# ── Reducción módulo p ────────────────────────────────────────────────────────

def test_reduce_mod_p():
    Pp = reduce_mod_p(parse_poly("x/2 + 3"), 5)
    assert Pp == reduce_mod_p(3 * X + 3, 5)


def test_reduce_mod_p_refuses_bad_denominator():
    with pytest.raises(BadDenominatorError):
        reduce_mod_p(parse_poly("x/3 + 1"), 3)


@settings(max_examples=30)
@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from([7, 11, 13]))
def test_reduction_is_a_ring_map(a, b, p):
    P, Q = X + a, X * LAM + b
    assert reduce_mod_p(P * Q, p) == reduce_mod_p(P, p) * reduce_mod_p(Q, p)
