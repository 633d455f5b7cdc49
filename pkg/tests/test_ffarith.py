"""
Inflex — Tests de aritmética en cuerpos finitos
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inflex.core.algebra import S, X
from inflex.core.ffarith import (
    c2_matches_d4_p2,
    c2_singular_points,
    char3_checks,
    count_curve,
    count_points,
    curve_model,
    double_falling,
    fast_count_C2,
    fiber_correction_check,
    good_primes,
    padic_check,
    padic_valuations,
    point_count_record,
    point_counts,
    quadric_model_count,
    satotate,
    satotate_check,
    semicircle_cdf,
    strategy_agreement_check,
    val_double_falling,
    val_factorial,
)
from inflex.core.modp import BadPrimeError, character_table, chi
from inflex.core.reports import UnknownCheckError

SMALL_GOOD_PRIMES = good_primes(400)


def test_character_table_matches_legendre_symbol():
    table = character_table(11)
    assert [int(v) for v in table] == [chi(a, 11) for a in range(11)]
    assert int(table.sum()) == 0
    assert [chi(a, 7) for a in (1, 2, 3, 7, 9, -1)] == [1, 1, -1, 0, 1, -1]


# ── Conteo exhaustivo ─────────────────────────────────────────────────────────

@pytest.mark.parametrize("p,affine", [(7, 8), (13, 12)])
def test_conic_counts(p, affine):
    conic = X**2 + S**2 - 1
    assert count_points(conic, ("x", "s"), p) == affine
    assert count_points(conic, ("x", "s"), p, "projective_P2") == p + 1


def test_weighted_closure_of_a_line():
    # P_1 = (3x² + λ)/2 is a rational curve with one point on the weighted line at infinity
    assert count_curve("weierstrass:1", 7) == 8


def test_brute_force_bounds():
    with pytest.raises(BadPrimeError):
        count_points(X - S, ("x", "s"), 2003)
    with pytest.raises(BadPrimeError):
        count_points(X - S, ("x", "s"), 9)
    with pytest.raises(ValueError):
        count_points(X - S, ("x", "s"), 7, "weighted(2,1)")


def test_curve_models():
    assert curve_model("d4-c2").genus == 1
    assert curve_model("weierstrass:3").genus == 1
    assert curve_model("d4:2").closure == "weighted(1,4,1)"
    assert curve_model("d4:3").genus == 2
    with pytest.raises(UnknownCheckError):
        curve_model("d5:2")


# ── C₂ ────────────────────────────────────────────────────────────────────────

def test_c2_definition_and_singular_points():
    assert c2_matches_d4_p2().passed
    assert c2_singular_points().passed


def test_fast_count_agrees_with_enumeration():
    report = strategy_agreement_check(60)
    assert report.passed, report.counterexample


def test_fast_count_refuses_bad_primes():
    for p in (2, 3, 5, 9):
        with pytest.raises(BadPrimeError):
            fast_count_C2(p)


@settings(max_examples=40)
@given(st.sampled_from(SMALL_GOOD_PRIMES))
def test_hasse_bound(p):
    record = point_count_record(p)
    assert record.count == fast_count_C2(p)
    assert record.e == record.count - (p + 1)
    assert abs(record.e) <= 2 * math.sqrt(p) + 2


@pytest.mark.parametrize("p", [7, 11, 13])
def test_fiber_correction(p):
    report = fiber_correction_check(p)
    assert report.passed, report.counterexample
    assert report.computed["naive correction holds"] is (p != 11)


def test_fiber_correction_bounds():
    with pytest.raises(BadPrimeError):
        fiber_correction_check(101)
    with pytest.raises(BadPrimeError):
        fiber_correction_check(3)


def test_fiber_identity_fails_at_five():
    report = fiber_correction_check(5)
    assert report.passed, report.counterexample
    # the whole line at infinity lies on the closure mod 5
    assert report.computed["#C2"] == 13
    assert report.computed["#C2^nu"] == 7
    assert report.notes


@pytest.mark.parametrize("p", [7, 11, 13, 17, 19, 23])
def test_plane_count_against_smooth_model(p):
    model = quadric_model_count(p)
    assert not model.singular
    assert count_curve("d4-c2", p) == model.count - chi(3, p) - chi(15, p)



def test_point_counts_are_sorted():
    records = point_counts([13, 7, 11])
    assert [r.p for r in records] == [7, 11, 13]
    assert records[0].to_row()[:3] == [7, records[0].count, records[0].e]


# ── Sato–Tate ─────────────────────────────────────────────────────────────────

def test_semicircle_cdf():
    assert semicircle_cdf(-1.0) == pytest.approx(0.0)
    assert semicircle_cdf(0.0) == pytest.approx(0.5)
    assert semicircle_cdf(1.0) == pytest.approx(1.0)
    assert semicircle_cdf(3.0) == pytest.approx(1.0)


def test_satotate_small_bound():
    result = satotate(200, 10)
    assert len(result.records) == len(good_primes(200))
    assert sum(freq for _, _, freq in result.histogram) == len(result.records)
    assert result.histogram[0][0] <= -1.0 and result.histogram[-1][1] >= 1.0
    assert 0.0 <= result.ks_statistic <= 1.0
    assert result.hasse_violations == []


def test_satotate_rejects_small_bounds():
    with pytest.raises(ValueError):
        satotate(50)
    with pytest.raises(ValueError):
        satotate(200, 0)


def test_satotate_check_notes_small_bound():
    report = satotate_check(200, 10)
    assert report.passed
    assert report.notes


@pytest.mark.slow
def test_satotate_full_range():
    report = satotate_check()
    assert report.passed, report.counterexample


# ── Valuaciones p-ádicas ──────────────────────────────────────────────────────

def test_factorial_valuations():
    assert val_factorial(9, 3) == 4
    assert val_factorial(100, 5) == 24
    assert double_falling(7, 3) == 105


@given(st.integers(1, 80), st.integers(1, 30), st.sampled_from([3, 5, 7, 11, 13]))
def test_double_falling_valuation_matches_factorization(a, n, p):
    if a % 2 == 0 and a <= 2 * n - 2:
        with pytest.raises(ZeroDivisionError):
            val_double_falling(a, n, p)
        return
    v = padic_valuations(a, n, p)
    assert v["double_falling"] == v["double_falling_direct"]
    assert v["factorial"] == v["factorial_direct"]


def test_double_falling_needs_odd_prime():
    with pytest.raises(BadPrimeError):
        val_double_falling(7, 2, 2)


def test_padic_and_char3_checks():
    assert padic_check(samples=20, seed=1).passed
    report = char3_checks()
    assert report.passed, report.counterexample


def test_good_primes():
    assert good_primes(20) == [7, 11, 13, 17, 19]
    assert np.all(np.array(good_primes(20)) % 2 == 1)
