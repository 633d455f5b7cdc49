"""
Inflex — Tests de polígonos de Newton
"""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from inflex.core.algebra import S, X
from inflex.core.lattice import (
    D4_CENTERS,
    CenterNotOnCurveError,
    LatticePolygon,
    RefusedStatementError,
    centered,
    corrections_for,
    d4_genus_check,
    expected_polygon,
    interior_lattice_points,
    lower_hull_delta,
    minkowski_sum,
    newton_check,
    newton_polygon,
    weierstrass_genus_check,
)
from inflex.core.pencils import PencilSpec, atomic_inflection
from inflex.core.reports import UnknownCheckError
from inflex.services.fixtures import load_component

SQUARE = LatticePolygon(((0, 0), (1, 0), (1, 1), (0, 1)))


def test_hull_drops_interior_and_collinear_points():
    hull = LatticePolygon.hull([(0, 0), (2, 0), (1, 0), (1, 1), (0, 2), (2, 2)])
    assert hull.vertices == ((0, 0), (2, 0), (2, 2), (0, 2))


def test_degenerate_hulls():
    assert LatticePolygon.hull([(3, 1)]).is_degenerate
    segment = LatticePolygon.hull([(0, 0), (2, 2), (1, 1)])
    assert segment.vertices == ((0, 0), (2, 2))
    assert segment.boundary_points == 3
    assert interior_lattice_points(segment) == (0, [])


def test_triangle_counts():
    tri = LatticePolygon.hull([(0, 0), (4, 0), (0, 4)])
    assert tri.area2 == 16
    assert tri.boundary_points == 12
    count, points = interior_lattice_points(tri)
    assert count == 3
    assert sorted(points) == [(1, 1), (1, 2), (2, 1)]


def test_minkowski_sum_of_squares_and_segments():
    assert minkowski_sum(SQUARE, SQUARE) == SQUARE.dilate(2)
    horizontal = LatticePolygon.hull([(0, 0), (1, 0)])
    vertical = LatticePolygon.hull([(0, 0), (0, 1)])
    assert minkowski_sum(horizontal, vertical) == SQUARE


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=12))
def test_pick_agrees_with_enumeration(points):
    poly = LatticePolygon.hull(points)
    count, inside = interior_lattice_points(poly)
    assert count == len(inside)
    assert all(poly.contains(p, strict=True) for p in inside)


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=8),
       st.integers(-3, 3), st.integers(-3, 3))
def test_translation_commutes_with_minkowski(points, dx, dy):
    P = LatticePolygon.hull(points)
    shifted = LatticePolygon.hull([(dx, dy)])
    assert minkowski_sum(P, shifted) == P.translate(dx, dy)


# ── δ por envolvente inferior ─────────────────────────────────────────────────

def test_delta_of_cusp_and_node():
    _, delta = lower_hull_delta(S**2 - X**3, ("x", "s"))
    assert delta == 1
    _, delta = lower_hull_delta(S**2 - X**2 - X**3, ("x", "s"))
    assert delta == 1


def test_delta_refuses_points_off_the_curve():
    with pytest.raises(CenterNotOnCurveError):
        lower_hull_delta(S**2 - X**3 + 1, ("x", "s"))


# ── Polígonos enunciados ──────────────────────────────────────────────────────

@pytest.mark.parametrize("m", [1, 2, 3])
def test_d4_origin_polygon(m):
    P = atomic_inflection(PencilSpec("d4"), m).poly
    P0 = centered(P, ("x", "s"), D4_CENTERS[0])
    assert newton_polygon(P0, ("x", "s")) == expected_polygon("d4.origin", {"m": m})


def test_unknown_and_refused_statements():
    with pytest.raises(UnknownCheckError):
        expected_polygon("d5.origin", {"m": 3})
    with pytest.raises(RefusedStatementError):
        expected_polygon("d4.centered", {"m": 6})


def test_delta_star_polygon_has_three_interior_points():
    poly = newton_polygon(load_component("delta_star").poly, ("s1", "s2"))
    assert poly.vertices == ((0, 0), (3, 0), (2, 2), (0, 3))
    assert interior_lattice_points(poly)[0] == 3


# ── Polígonos calculados contra los enunciados ────────────────────────────────

@pytest.mark.parametrize("abc", [(1, 1, 1), (2, 1, 1)])
def test_legendre_generic_newton_polygons(abc):
    report = newton_check("legendre.generic", range(1, 7), abc)
    assert report.passed, report.counterexample


def test_legendre_u_half_newton_polygons():
    report = newton_check("legendre.u-half", range(2, 13))
    assert report.passed, report.counterexample


def test_weierstrass_centered_newton_polygons():
    report = newton_check("weierstrass.centered", range(3, 13))
    assert report.passed, report.counterexample


def test_d4_centered_polygon_at_m3_has_vertex_one_one():
    report = newton_check("d4.centered", [3, 4, 5])
    assert report.passed, report.counterexample
    assert (1, 1) in expected_polygon("d4.centered", {"m": 3}).vertices
    assert any("stated vertex (2,1)" in note for note in report.notes)


def test_corrections_are_registered():
    assert [c.m for c in corrections_for("d4.centered")] == [3]
    assert [c.m for c in corrections_for("d6.centered")] == [3]
    assert not corrections_for("weierstrass.centered")
    assert "observed g = 2" in corrections_for("d4.genus", 3)[0].describe()
    assert "(3u)_m/m!" in corrections_for("d4.vertices")[0].observed


# ── Género ────────────────────────────────────────────────────────────────────

def test_weierstrass_genus():
    report = weierstrass_genus_check(range(3, 11))
    assert report.passed, report.counterexample


def test_d4_genus_at_m3():
    report = d4_genus_check([3])
    assert report.passed, report.counterexample
    genus = report.computed["m=3 report"]
    assert genus.geometric_genus == 2
    assert genus.arithmetic_genus == 10
    assert sorted(d["delta"] for d in genus.deltas) == [1, 1, 6]
    assert report.notes
