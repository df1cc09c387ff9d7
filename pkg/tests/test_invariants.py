import itertools

import pytest

from qvl.errors import DomainError
from qvl.gsum import g_enum
from qvl.invariants import (
    CurveClass,
    GParams,
    g_closed,
    gtilde,
    inter,
    nlog_closed,
    open_closed,
    open_from_log,
)
from qvl.qalg import ONE, ZERO, LaurentPoly, QRational, bar, qint

HALF = LaurentPoly({1: 1, -1: 1})  # q^(1/2) + q^(-1/2)


def classes(max_d0, extra=2):
    for d0 in range(max_d0 + 1):
        for d1, d2, d3 in itertools.product(range(d0 + extra + 1), repeat=3):
            yield CurveClass(d0, d1, d2, d3)


def test_inter_examples():
    assert inter((1, 1, 1, 1)) == (1, 2)
    assert inter((1, 0, 1, 1)) == (0, 2)
    assert inter((2, 1, 2, 1)) == (1, 3)


def test_curve_class_parse_and_str():
    dd = CurveClass.parse("2, 1,2,1")
    assert dd == CurveClass(2, 1, 2, 1)
    assert str(dd) == "2,1,2,1"
    with pytest.raises(DomainError):
        CurveClass.parse("1,2,3")
    with pytest.raises(DomainError):
        GParams.parse("1,2,3,4,x")


def test_admissible():
    assert CurveClass(1, 1, 1, 1).admissible()
    assert CurveClass(2, 1, 1, 1).admissible()
    assert not CurveClass(2, 0, 1, 1).admissible()
    assert not CurveClass(1, 1, 1, 2).admissible()


def test_nlog_closed_examples():
    assert nlog_closed((1, 1, 1, 1)) == HALF
    assert nlog_closed((1, 0, 1, 1)) == 0
    # the two other pipelines must agree whatever the value is
    assert nlog_closed((2, 1, 1, 1)) == g_enum((2, 1, 1, 1, 2))


def test_open_closed_examples():
    minus_inverse = QRational(-ONE, qint(1))
    assert open_closed((1, 1, 1, 1)) == minus_inverse
    assert open_closed((1, 0, 1, 1)) == 0
    assert open_closed((0, 0, 0, 0)) == 0


def test_open_from_log_examples():
    assert open_from_log((1, 1, 1, 1)) == QRational(-ONE, qint(1))
    assert open_from_log((2, 1, 2, 1)) == open_closed((2, 1, 2, 1))
    with pytest.raises(DomainError):
        open_from_log((1, 0, 1, 1))


def test_open_from_log_accepts_pipeline_value():
    value = g_enum(CurveClass(2, 2, 1, 2).gparams())
    assert open_from_log((2, 2, 1, 2), value) == open_closed((2, 2, 1, 2))


def test_gtilde_examples():
    for e in range(6):
        assert gtilde((0, 0, 0, 0, e)) == ONE
    assert gtilde((1, 1, 0, 0, 2)) == HALF
    assert gtilde((1, 1, 1, 1, 2)) == ZERO


def test_g_closed_examples():
    assert g_closed((0, 0, 0, 0, 5)) == ONE
    assert g_closed((1, 1, 0, 0, 2)) == HALF
    for a, b, d, e in itertools.product(range(4), range(4), range(4), range(8)):
        assert g_closed((a, b, -1, d, e)) == ZERO


def test_g_closed_base_case():
    # G(0, b, c, d, e) is 1 at b = c = d = 0 and vanishes otherwise
    for b, c, d, e in itertools.product(range(4), range(4), range(4), range(9)):
        expected = ONE if b == c == d == 0 else ZERO
        assert g_closed((0, b, c, d, e)) == expected


def test_restriction_identity():
    # the closed form of the log invariant is G at the restriction point
    for dd in classes(6, extra=1):
        if not dd.positive():
            continue
        assert nlog_closed(dd) == g_closed(dd.gparams()), dd


def test_d2_d3_symmetry():
    for dd in classes(6, extra=1):
        d0, d1, d2, d3 = dd
        assert nlog_closed(dd) == nlog_closed((d0, d1, d3, d2)), dd


def test_palindromicity():
    for dd in classes(5):
        n = nlog_closed(dd)
        assert n.bar() == n, dd
        o = open_closed(dd)
        assert o.bar() == -o, dd


def test_vanishing_on_zero_intersection():
    for dd in classes(5):
        if dd.d1 == 0 or dd.d2 + dd.d3 == 0:
            assert nlog_closed(dd) == 0, dd


def test_log_is_laurent_polynomial_for_positive_classes():
    for dd in classes(5):
        if dd.positive():
            assert nlog_closed(dd).is_laurent(), dd


def test_g_closed_c_d_symmetry():
    for a, b, c, d, e in itertools.product(range(5), range(5), range(5), range(5), range(9)):
        assert g_closed((a, b, c, d, e)) == g_closed((a, b, d, c, e))


def test_open_closed_bar_antisymmetry_is_exact():
    o = open_closed((2, 2, 2, 2))
    assert o.bar() + o == 0
    assert bar(o) == -o
