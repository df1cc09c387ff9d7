import itertools

import pytest

from qvl.errors import DomainError
from qvl.gsum import nlog_scat
from qvl.invariants import CurveClass, nlog_closed
from qvl.qalg import ONE, LaurentPoly, poly_sum, qbinom
from qvl.scattering import (
    INITIAL_WALLS,
    TrackedMonomial,
    Wall,
    cross_wall,
    det,
    dump_branches,
    dump_catalog,
    parse_catalog,
    regenerate_catalog,
    scatter_infinite,
    scatter_simple,
    trace,
    trace_nlog,
    wall_catalog,
)

HALF = LaurentPoly({1: 1, -1: 1})


def positive_classes(max_d0):
    for d0 in range(1, max_d0 + 1):
        for d1, d2, d3 in itertools.product(range(d0 + 3), repeat=3):
            dd = CurveClass(d0, d1, d2, d3)
            if dd.positive():
                yield dd


def walls_by_label(n_max):
    return {(w.label, w.n): w for w in wall_catalog(n_max)}


def test_wall_validation():
    with pytest.raises(DomainError):
        Wall((2, 0), (1, 0, 0, 0))
    with pytest.raises(DomainError):
        Wall((1, 0), (0, 0, 0, 0))
    with pytest.raises(DomainError):
        Wall((1, 0), (-1, 0, 0, 0))


def test_catalog_examples():
    walls = walls_by_label(2)
    assert walls["W2", 1].function_str() == "1 + t*x^-1"
    assert walls["W2", 1] == INITIAL_WALLS["F2"]
    assert walls["W3", 1].function_str() == "1 + t*t3*x^-1*y^-1"
    assert walls["W1", 2].function_str() == "1 + t^3*t1^2*t2*t3*x^-1*y^2"


def test_catalog_order():
    walls = wall_catalog(3)
    assert [(w.n, w.label) for w in walls[:4]] == [(3, "W1"), (3, "W2"), (3, "W3"), (3, "W4")]
    assert [w.n for w in walls] == [3] * 4 + [2] * 4 + [1] * 4
    with pytest.raises(DomainError):
        wall_catalog(0)


def test_scatter_simple_examples():
    w2, d21 = INITIAL_WALLS["F2"], INITIAL_WALLS["D2,1"]
    out = scatter_simple(w2, d21)
    assert out.rho == (-1, -1) and out.t_exp == (1, 0, 1, 0)
    assert out == walls_by_label(1)["W4", 1]
    assert scatter_simple(d21, w2) == out
    with pytest.raises(DomainError):
        scatter_simple(INITIAL_WALLS["F2"], INITIAL_WALLS["D1"])


def test_scatter_infinite_examples():
    f2, d1 = INITIAL_WALLS["F2"], INITIAL_WALLS["D1"]
    assert abs(det(f2.rho, d1.rho)) == 2
    family = scatter_infinite(f2, d1, 2)
    assert walls_by_label(2)["W2", 2] in family
    assert len(scatter_infinite(f2, d1, 1)) == 2
    with pytest.raises(DomainError):
        scatter_infinite(f2, INITIAL_WALLS["D2,1"], 2)


@pytest.mark.parametrize("n_max", range(1, 6))
def test_catalog_regeneration(n_max):
    regenerated = regenerate_catalog(n_max)
    expected = wall_catalog(n_max)
    assert regenerated == expected
    assert [(w.label, w.n) for w in regenerated] == [(w.label, w.n) for w in expected]


def test_cross_wall_example():
    mono = TrackedMonomial(ONE, (0, 0, 0, 0), (0, -2))
    branches = cross_wall(mono, INITIAL_WALLS["F2"])
    assert branches == [
        TrackedMonomial(ONE, (0, 0, 0, 0), (0, -2)),
        TrackedMonomial(HALF, (1, 0, 0, 0), (-1, -2)),
        TrackedMonomial(ONE, (2, 0, 0, 0), (-2, -2)),
    ]


def test_cross_wall_parallel_and_unit_det():
    w = INITIAL_WALLS["F2"]
    mono = TrackedMonomial(HALF, (0, 1, 0, 0), (3, 0))
    assert cross_wall(mono, w) == [mono]
    mono = TrackedMonomial(ONE, (0, 0, 0, 0), (0, -1))
    assert [b.coeff for b in cross_wall(mono, w)] == [ONE, ONE]


def product_formula_at_z1(dt):
    """prod over l in {-(dt-1)/2, ..., (dt-1)/2} of (1 + q^l), in s = q^(1/2)."""
    out = ONE
    for j in range(dt):
        out = out * (ONE + LaurentPoly.monomial(2 * j - (dt - 1)))
    return out


@pytest.mark.parametrize("dt", range(0, 7))
def test_branch_coefficients_sum_to_product(dt):
    mono = TrackedMonomial(ONE, (0, 0, 0, 0), (0, -dt))
    coeffs = [b.coeff for b in cross_wall(mono, INITIAL_WALLS["F2"])]
    assert poly_sum(coeffs) == product_formula_at_z1(dt)
    assert coeffs == [qbinom(dt, k) for k in range(dt + 1)]


def test_trace_nlog_examples():
    assert trace_nlog((1, 1, 1, 1)) == HALF
    assert trace_nlog((1, 1, 0, 1)) == nlog_scat((1, 1, 0, 1))
    with pytest.raises(DomainError):
        trace_nlog((1, 0, 1, 1))


def test_three_pipelines_agree():
    for dd in positive_classes(4):
        t = trace_nlog(dd)
        assert t == nlog_scat(dd), dd
        assert t == nlog_closed(dd), dd


def test_truncation_sufficiency():
    for dd in positive_classes(3):
        assert trace_nlog(dd) == trace_nlog(dd, depth=dd.d0 + 2), dd


def _reachable(dd):
    d0, d1, d2, d3 = dd
    return min(d0 - d1, d0 - d2, d0 - d3) >= 0


def test_pruning_does_not_change_result_unpruned():
    # the unpruned branch set grows exponentially; d0 = 1 is exhaustive and cheap
    for dd in positive_classes(1):
        if _reachable(dd):
            assert trace_nlog(dd) == trace_nlog(dd, prune=False), dd


def test_pruning_matches_bound_on_first_exponent_only():
    # a much weaker pruning (only the t exponent bounded) reaches the same value
    loose = 10**9
    checked = 0
    for dd in positive_classes(3):
        if not _reachable(dd):
            continue
        d0, d1, d2, d3 = dd
        target_t = (d0, d0 - d1, d0 - d2, d0 - d3)
        start = TrackedMonomial(ONE, (0, 0, 0, 0), (0, -(d2 + d3)))
        branches = trace(start, wall_catalog(d0), (d0, loose, loose, loose))
        value = poly_sum(
            b.coeff for b in branches if b.t_exp == target_t and b.z_exp == (-d1, -2 * d1)
        )
        assert value == trace_nlog(dd), dd
        checked += 1
    assert checked > 50


def test_trace_merges_branches():
    start = TrackedMonomial(ONE, (0, 0, 0, 0), (0, -3))
    branches = trace(start, wall_catalog(2), (2, 1, 1, 1))
    keys = [(b.t_exp, b.z_exp) for b in branches]
    assert len(keys) == len(set(keys))
    assert keys == sorted(keys)
    assert all(not b.coeff.is_zero() for b in branches)


def test_catalog_dump_round_trip():
    walls = wall_catalog(3)
    text = dump_catalog(walls)
    assert text.splitlines()[0] == "n=3 label=W1 rho=(-1,4) t=(4,3,1,1)"
    parsed = parse_catalog(text)
    assert parsed == walls
    assert [(w.label, w.n) for w in parsed] == [(w.label, w.n) for w in walls]


def test_branch_dump():
    start = TrackedMonomial(ONE, (0, 0, 0, 0), (0, -2))
    text = dump_branches(trace(start, wall_catalog(1)))
    assert text.startswith("t=(0,0,0,0) z=(0,-2) coeff=")
    assert len(text.splitlines()) > 1
