import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardynorms.dual_poly import (RATIO_BOUND, check_bpr, check_two_sides, dual_norm_c2,
                                  gstar_upper_bound, h1_unit, h4_unit, ratio_sweep, sextic,
                                  tangent_sup, two_sides_witness)
from hardynorms.errors import DomainError
from hardynorms.poly_hardy import hp_norm, pair_norms


def brute_dual(xi, p, m=1000):
    """Sup of |<xi, eta>| / ||eta|| over eta = (r cos a, r sin a e^{i phi}) on a dense grid."""
    a = np.linspace(0, math.pi / 2, m)
    phi = np.linspace(0, 2 * math.pi, m, endpoint=False)
    A, P = np.meshgrid(a, phi)
    e1, e2 = np.cos(A), np.sin(A) * np.exp(1j * P)
    inner = np.abs(xi[0] * np.conj(e1) + xi[1] * np.conj(e2))
    return float((inner / pair_norms(e1, e2, p)).max())


def test_dual_h1_of_unit_pair():
    res = dual_norm_c2([1, 1], 1)
    assert abs(res.value - math.pi / 2) < 1e-12


def test_self_dual_p2():
    assert dual_norm_c2([3, 4], 2).value == 5.0


def test_dual_of_sup_norm_is_max():
    assert dual_norm_c2([0.3, -0.8j], math.inf).value == pytest.approx(0.8, abs=1e-12)


def test_zero_vector():
    assert dual_norm_c2([0, 0], 1).value == 0.0


def test_wrong_size():
    with pytest.raises(DomainError):
        dual_norm_c2([1, 2, 3], 1)


@pytest.mark.parametrize("p", [0.5, 1, 4])
@pytest.mark.parametrize("xi", [(1, 0.5), (0.2 + 0.3j, -1), (1, 1)])
def test_reduction_matches_brute(xi, p):
    value = dual_norm_c2(xi, p).value
    brute = brute_dual(xi, p)
    assert brute <= value + 1e-12
    assert value - brute < 1e-4


@settings(max_examples=40, deadline=None)
@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_dual_dominates_every_ratio(x1, x2, e1, e2):
    if abs(e1) + abs(e2) < 1e-6:
        return
    inner = abs(x1 * e1.conjugate() + x2 * e2.conjugate())
    assert inner <= dual_norm_c2([x1, x2], 1).value * hp_norm([e1, e2], 1) * (1 + 1e-10) + 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 1))
def test_dual_h1_bounds(lam):
    gstar = dual_norm_c2([1, lam], 1).value
    # H^inf <= H^1 on the unit ball side gives H^1_* >= l^infty and <= H^inf_* scaled
    assert gstar >= 1.0 - 1e-15
    assert gstar <= math.sqrt(1 + lam * lam) * 4 / math.pi + 1e-12
    if lam > 0:
        assert gstar <= gstar_upper_bound(lam) + 1e-12


def test_witness_reported():
    res = dual_norm_c2([2, 1], 1)
    assert res.lam == 0.5
    assert 0 <= res.witness_t <= 1
    assert res.value == pytest.approx(2 * (1 + 0.5 * res.witness_t) / h1_unit(res.witness_t))


def test_tangent_sup_against_scan():
    a, b, r = 2.0, 0.7, 0.9
    th = np.linspace(0, 2 * np.pi, 2_000_001)
    scan = ((b - r * np.sin(th)) / (a - r * np.cos(th))).max()
    assert tangent_sup(a, b, r) == pytest.approx(scan, rel=1e-10)
    with pytest.raises(DomainError):
        tangent_sup(1.0, 0.0, 1.0)


def test_gstar_upper_bound_domain():
    with pytest.raises(DomainError):
        gstar_upper_bound(0.0)


def test_ratio_sweep_small():
    table = ratio_sweep(2)
    assert table.ratio[0] == pytest.approx(1.0, abs=1e-14)
    assert table.ratio[1] == pytest.approx((math.pi / 2) / 6 ** 0.25, abs=1e-12)
    assert table.argmax_lam == 1.0


def test_ratio_sweep_bounds():
    table = ratio_sweep(101)
    assert table.min_ratio >= 1 - 1e-8
    assert table.max_ratio <= RATIO_BOUND
    assert abs(table.max_ratio - 1.00365) < 1e-4


def test_bpr():
    rep = check_bpr(np.linspace(0, 1, 201))
    assert rep.min_slack >= -1e-10
    assert rep.slack[0] == 0.0
    assert rep.slack[-1] == pytest.approx(4 / math.pi - (3 - math.sqrt(3)), abs=1e-14)


def test_two_sides():
    rep = check_two_sides(np.linspace(0, 1, 201))
    assert rep.min_gap >= -1e-9
    assert rep.witness_gap.min() >= -1e-12
    assert rep.left_gap[-1] == pytest.approx(163 / 128 - 4 / math.pi, abs=1e-12)
    assert np.all(rep.Fstar >= rep.witness_value - 1e-12)


def test_grid_validation():
    with pytest.raises(DomainError):
        check_bpr([0.5, 1.5])
    with pytest.raises(DomainError):
        ratio_sweep(1)


def test_helpers():
    assert h4_unit(1.0) == pytest.approx(6 ** 0.25)
    assert sextic(1.0) == 163 / 128
    assert two_sides_witness(1.0) == pytest.approx(0.8)
