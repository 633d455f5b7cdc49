"""
Inflex — Tests de la recursión de inflexión y de los pencils
"""
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import QQ

from inflex.core.algebra import (
    LAM,
    U,
    X,
    Z,
    coefficient,
    const,
    hasse_derivative,
    parse_poly,
    substitute,
    translate,
)
from inflex.core.pencils import (
    HypothesisError,
    PencilSpec,
    atomic_inflection,
    bielliptic_Qm,
    check_hypotheses,
    coefficient_check,
    d6_factor,
    defining_identity_check,
    denominator_invariant,
    denominator_primes,
    graded_weight_class,
    halve_x,
    legendre_symmetry_check,
    monomial_basis,
    recursion_residual,
    weierstrass_v4,
)

WEIERSTRASS_P4_HALF = ("-15/2*x^2 + 21/8*x^5 + 3/128*x^8 - lam - 7/4*x^3*lam + 7/32*x^6*lam + 1/8*x*lam^2"
                       " - 35/64*x^4*lam^2 - 5/32*x^2*lam^3 - 5/128*lam^4")
WEIERSTRASS_P5_HALF = ("-6*x + 18*x^4 - 45/16*x^7 - 3/256*x^10 + 9/4*x^2*lam + 63/16*x^5*lam - 45/256*x^8*lam"
                       " + 3/4*lam^2 - 15/16*x^3*lam^2 + 105/128*x^6*lam^2 - 3/16*x*lam^3 + 27/128*x^4*lam^3"
                       " + 33/256*x^2*lam^4 + 7/256*lam^5")


def test_weierstrass_p3_at_half(weierstrass_p3):
    ip = atomic_inflection(PencilSpec("weierstrass"), 3)
    assert ip.poly == weierstrass_p3
    assert ip.u_mode == "1/2"
    assert denominator_primes(ip.poly) == [2]


@pytest.mark.parametrize("m,text", [(4, WEIERSTRASS_P4_HALF), (5, WEIERSTRASS_P5_HALF)])
def test_weierstrass_p4_p5_at_half(m, text):
    expected = parse_poly(text)
    assert atomic_inflection(PencilSpec("weierstrass"), m).poly == expected
    assert len(expected.terms()) == (10 if m == 4 else 14)


def test_weierstrass_p3_constant_term_and_singular_point(weierstrass_p3):
    assert substitute(weierstrass_p3, {"x": 0, "lam": 0}) == const(2)
    point = {"x": 1, "lam": -3}
    for F in (weierstrass_p3, hasse_derivative(weierstrass_p3, "x", 1),
              hasse_derivative(weierstrass_p3, "lam", 1)):
        assert not substitute(F, point)


def test_legendre_first_order_symbolic():
    P1 = atomic_inflection(PencilSpec("legendre"), 1, "symbolic").poly
    assert P1 == U * (3 * X**2 - 2 * (1 + LAM) * X + LAM)


@pytest.mark.parametrize("family", ["weierstrass", "d4", "legendre", "bielliptic"])
def test_recursion_residual_vanishes(family):
    spec = PencilSpec(family)
    for m in range(1, 5):
        assert not recursion_residual(spec, m, "symbolic")


@given(st.sampled_from(["weierstrass", "d4", "d6"]), st.integers(1, 6))
def test_denominators_divide_cover_degree(family, m):
    assert denominator_invariant(atomic_inflection(PencilSpec(family), m))


@pytest.mark.parametrize("family,m", [("weierstrass", 3), ("d4", 4), ("legendre", 3)])
def test_defining_identity(family, m):
    report = defining_identity_check(PencilSpec(family), m)
    assert report.passed, report.counterexample


def test_inflection_order_bounds():
    with pytest.raises(ValueError):
        atomic_inflection(PencilSpec("d4"), 0)


def test_spec_validation():
    with pytest.raises(ValueError):
        PencilSpec("hyperbolic")
    with pytest.raises(ValueError):
        PencilSpec("d4", n=1)
    with pytest.raises(ValueError):
        PencilSpec("custom")


def test_custom_pencil_parameters():
    spec = PencilSpec("custom", custom="x^3 + t*x + 1")
    assert spec.parameters == ("t",)
    assert atomic_inflection(spec, 1).poly.degree(X) == 2


# ── Pesos graduados ───────────────────────────────────────────────────────────

@given(st.integers(1, 8))
def test_weierstrass_weight_class(m):
    P = atomic_inflection(PencilSpec("weierstrass"), m).poly
    assert graded_weight_class(P, {"x": 1, "lam": 2}, 3).residue == (-m) % 3


@given(st.integers(1, 6))
def test_d6_weight_class(m):
    P = atomic_inflection(PencilSpec("d6"), m).poly
    assert graded_weight_class(P, {"x": 1, "z": 3}, 3).residue == (-m) % 3


def test_weight_class_witness():
    cls = graded_weight_class(X**2 + X, {"x": 1}, 3)
    assert not cls.homogeneous
    assert cls.witness is not None


# ── Bielíptico ────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("m", range(1, 7))
def test_bielliptic_Qm_is_even(m):
    Q = bielliptic_Qm(m)
    assert halve_x(Q).degree(X) * 2 == Q.degree(X)


def test_bielliptic_p3_divisible_by_x():
    P3 = atomic_inflection(PencilSpec("bielliptic"), 3).poly
    assert bielliptic_Qm(3) * X == P3


# ── Simetrías de Legendre ─────────────────────────────────────────────────────

def test_legendre_symmetry_first_order():
    report = legendre_symmetry_check(1, 1)
    assert report.passed
    assert report.notes, "the (-1)^(am) sign differs at a=1, m=1"


@pytest.mark.parametrize("a", [1, 2])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_legendre_translation_sign(a, m):
    P = atomic_inflection(PencilSpec("legendre", abc=(a, a, a)), m).poly
    shifted = translate(P, {"x": 1, "lam": 1})
    reflected = substitute(P, {"x": -X, "lam": -LAM})
    assert shifted == reflected * (-1) ** ((a + 1) * m)


@pytest.mark.parametrize("a", [1, 2])
@pytest.mark.parametrize("m", range(1, 9))
def test_legendre_symmetry_check(a, m):
    # a=2 at u=1/2: f^u is a cubic, so P_m vanishes from m=4 on
    report = legendre_symmetry_check(a, m)
    assert report.passed, report.counterexample


def test_legendre_symmetry_zero_polynomial():
    assert not atomic_inflection(PencilSpec("legendre", abc=(2, 2, 2)), 4).poly
    assert legendre_symmetry_check(2, 4).passed


# ── Bases monomiales ──────────────────────────────────────────────────────────

def test_monomial_basis_genus_three():
    basis = monomial_basis(3, 4, 9)
    assert basis.genus == 3
    assert len(basis) == 7
    assert basis.pole_orders == (0, 3, 4, 6, 7, 8, 9)


def test_hypotheses():
    assert check_hypotheses(3, 4, 9) == (3, 1)
    with pytest.raises(HypothesisError):
        check_hypotheses(3, 4, 6)
    with pytest.raises(HypothesisError):
        monomial_basis(2, 4, 8)


# ── Fórmulas de coeficientes ──────────────────────────────────────────────────

def test_weierstrass_centered_coefficients_symbolic():
    report = coefficient_check("weierstrass.centered.coefficients", range(3, 11))
    assert report.passed, report.counterexample


@pytest.mark.parametrize("u", ["1/3", "1/2", "3/4"])
def test_weierstrass_centered_coefficients_rational(u):
    report = coefficient_check("weierstrass.centered.coefficients", range(3, 9), u_mode=u)
    assert report.passed, report.counterexample


def test_weierstrass_centered_v1_at_m8():
    P = translate(atomic_inflection(PencilSpec("weierstrass"), 8).poly, {"x": 1, "lam": -3})
    assert coefficient(P, {"x": 0, "lam": 4}) == const(QQ(-405, 128))


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8])
def test_weierstrass_v4_at_half(m):
    assert weierstrass_v4(m, const(QQ(1, 2))) == const(QQ((-1) ** m * 3 ** (m - 1), 2))


def test_weierstrass_v4_first_value():
    assert weierstrass_v4(3, U) == U * 18 * (U - 1)
    with pytest.raises(ValueError):
        weierstrass_v4(2, U)


@pytest.mark.parametrize("abc", [(1, 1, 1), (2, 1, 1), (1, 2, 3)])
def test_legendre_generic_vertices(abc):
    report = coefficient_check("legendre.generic.vertices", range(1, 6), abc=abc)
    assert report.passed, report.counterexample


def test_legendre_u_half_coefficients():
    report = coefficient_check("legendre.u-half.coefficients", range(2, 9))
    assert report.passed, report.counterexample


def test_d4_vertex_coefficients():
    report = coefficient_check("d4.vertices", range(1, 6))
    assert report.passed, report.counterexample


def test_unknown_coefficient_statement():
    from inflex.core.reports import UnknownCheckError
    with pytest.raises(UnknownCheckError):
        coefficient_check("legendre.nowhere", [3])


# ── Pencil D6 ─────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("m", range(4, 11))
def test_d6_factor_peels_monomial_and_line(m):
    fac = d6_factor(m)
    assert fac.factors
    assert fac.e == (-m) % 3
    P = atomic_inflection(PencilSpec("d6"), m).poly
    assert fac.p_star * X**fac.e * (4 * Z - 1) == P
