"""
Inflex — Tests de series truncadas e inversión local
"""
import pytest
from sympy.polys.domains import QQ

from inflex.core.algebra import X, NotSimpleRootError, PrecisionError
from inflex.core.series import (
    TruncatedSeries,
    back_substitute,
    local_inversion,
    series_wronskian,
    wronskian_leading,
)


def y(k, N=6, c=1):
    return TruncatedSeries.monomial(k, N, c)


def test_arithmetic():
    one_plus = TruncatedSeries.from_coeffs([1, 1], 4)
    one_minus = TruncatedSeries.from_coeffs([1, -1], 4)
    assert one_plus * one_minus == TruncatedSeries.from_coeffs([1, 0, -1], 4)
    assert (one_plus ** 3)[3] == 1
    assert (one_plus - one_plus).valuation is None


def test_product_keeps_known_digits():
    a = TruncatedSeries.from_coeffs([0, 1], 3)
    prod = a * a
    assert prod.precision == 4
    assert prod.leading() == (2, QQ.one)


def test_hasse_on_series():
    s = TruncatedSeries.from_coeffs([0, 0, 0, 1], 5)
    assert s.hasse(2)[1] == 3
    with pytest.raises(PrecisionError):
        s.hasse(6)


def test_coefficient_beyond_precision():
    with pytest.raises(PrecisionError):
        y(1, 3)[4]


def test_local_inversion_of_a_line():
    x_of_y = local_inversion(X, 0, 2, 6)
    assert x_of_y == y(2, 6)


def test_local_inversion_certifies():
    f = X * (X - 1) * (X - 2)
    x_of_y = local_inversion(f, 0, 3, 10)
    assert back_substitute(f, x_of_y).truncate(10) == y(3, 10)
    assert x_of_y[3] == QQ(1, 2)


def test_local_inversion_requires_simple_root():
    with pytest.raises(NotSimpleRootError):
        local_inversion(X**2, 0, 2, 4)
    with pytest.raises(NotSimpleRootError):
        local_inversion(X - 1, 0, 2, 4)


def test_wronskian_of_monomials():
    assert wronskian_leading([y(0), y(1), y(2)]) == (0, QQ.one)
    assert wronskian_leading([y(0), y(2)]) == (1, QQ(2))
    assert series_wronskian([]).coeffs == (QQ.one,)


def test_wronskian_needs_precision():
    with pytest.raises(PrecisionError):
        series_wronskian([y(0, 1), y(1, 1), y(2, 1)])
