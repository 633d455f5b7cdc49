"""
Inflex — Tests de eliminación y discriminantes
"""
import pytest
from sympy.polys.domains import QQ

from inflex.core.algebra import LAM, RING, U, X, divides, leading_coefficient, parse_poly, proportional, substitute
from inflex.core.elimination import (
    component_geometry_checks,
    cusp_locus,
    delta_star_checks,
    gamma_jk,
    is_separable,
    lower_hull_polynomials,
    nondegeneracy_check,
    nondegeneracy_resultant,
    singular_candidates,
    surface_discriminant,
    surface_discriminant_check,
    verify_singular_point,
)
from inflex.core.pencils import bielliptic_Qm, halve_x
from inflex.services.fixtures import load_component


def test_weierstrass_singular_point(weierstrass_p3):
    report = verify_singular_point(weierstrass_p3, {"x": 1, "lam": -3})
    assert report.verified
    assert report.delta is not None and report.delta >= 1
    off = verify_singular_point(weierstrass_p3, {"x": 0, "lam": 0})
    assert not off.verified
    assert off.values["P"] == "2"


def test_singular_candidates_contain_lambda_minus_three(weierstrass_p3):
    out = singular_candidates(weierstrass_p3, "lam")
    assert -3 in out.rational_roots
    assert not substitute(out.eliminant, {"lam": -3})


def test_singular_candidates_need_both_variables():
    with pytest.raises(ValueError):
        singular_candidates(parse_poly("x^2 - 1"), "lam")


# ── Envolvente inferior de Weierstrass ────────────────────────────────────────

def test_lower_hull_polynomials_are_monic():
    for k in (3, 4):
        for parity in ("odd", "even"):
            Q = lower_hull_polynomials(k, parity)
            assert Q.degree(LAM) == k - 1
            assert Q.coeff_wrt(LAM, k - 1) == RING.one
    with pytest.raises(ValueError):
        lower_hull_polynomials(3, "both")
    with pytest.raises(ValueError):
        gamma_jk(3, 3)


@pytest.mark.parametrize("m,row", [(6, "(2*u-5)*(82*u-213)"), (7, "(2*u-5)*(2*u-13)")])
def test_nondegeneracy_resultants(m, row):
    res = nondegeneracy_resultant(m)
    assert proportional(res, parse_poly(row)) is not None
    assert substitute(res, {"u": QQ(1, 2)})


def test_nondegeneracy_table():
    report = nondegeneracy_check([6, 7])
    assert report.passed, report.counterexample


def test_is_separable():
    assert is_separable(LAM**2 - 1, "lam")
    assert not is_separable((LAM - 1)**2 * (LAM + U), "lam")


# ── Superficie bielíptica ─────────────────────────────────────────────────────

def test_delta_star():
    report = delta_star_checks()
    assert report.passed, report.counterexample


def test_cusp_locus():
    report = cusp_locus()
    assert report.passed, report.counterexample
    assert report.computed["res_x(g, D¹g) vanishes"] is True


def test_component_geometry():
    reports = component_geometry_checks()
    assert [r.id for r in reports] == [
        "bielliptic.components.newton",
        "bielliptic.components.singular-points",
        "bielliptic.components.smooth",
    ]
    for report in reports:
        assert report.passed, (report.id, report.counterexample)


def test_discriminant_m3():
    report = surface_discriminant_check(3)
    assert report.passed, report.counterexample


def test_discriminant_constant_term_is_x_free():
    result = surface_discriminant(3)
    assert result.constant_term
    assert result.constant_term.degree(X) == 0


def test_discriminant_starts_at_two():
    with pytest.raises(ValueError):
        surface_discriminant(1)


@pytest.mark.slow
def test_discriminant_m4():
    assert surface_discriminant_check(4).passed


@pytest.mark.slow
def test_discriminant_strategies_agree_m3():
    direct = surface_discriminant(3, strategy="direct")
    interpolated = surface_discriminant(3, strategy="interpolate")
    assert direct.discriminant == interpolated.discriminant


@pytest.mark.parametrize("m,at_infinity,at_zero", [
    (4, "bielliptic_m4_1", "bielliptic_m4_2"),
    (5, "bielliptic_m5_1", "bielliptic_m5_2"),
])
def test_boundary_components_divide(m, at_infinity, at_zero):
    # u = 1/2 drops the x-degree of Q_m: a root escapes to x = ∞ along lc(R)
    R = halve_x(bielliptic_Qm(m))
    lc = leading_coefficient(R, "x")
    assert not lc.is_ground
    assert proportional(lc, load_component(at_infinity).poly) is not None
    assert divides(load_component(at_zero).poly, R.coeff_wrt(X, 0))


def test_leading_coefficient_constant_m3():
    result = surface_discriminant(3)
    assert result.leading.is_ground
    assert "leading_coefficient" in result.to_dict()
