from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardynorms.exact_poly import (LAM, MONSTER_COEFFS, SEXTIC, BigRationalPoly, build_psi,
                                   phi_float, phi_in_t, psi_over_lam8, verify_monster)

fracs = st.fractions(min_value=-10, max_value=10, max_denominator=50)
polys = st.lists(fracs, max_size=6).map(BigRationalPoly)


def test_monster_coefficients_exact():
    rep = verify_monster()
    assert rep.ok
    assert rep.matched == 13
    assert rep.mismatches == [] and rep.out_of_range == []


def test_monster_detects_tampering():
    bad = dict(MONSTER_COEFFS)
    bad[4] = Fraction(-148, 16)
    rep = verify_monster(bad)
    assert not rep.ok
    assert [m[0] for m in rep.mismatches] == [4]
    assert rep.matched == 12


def test_psi_degree_range():
    psi = build_psi()
    assert psi.lowest == 8 and psi.degree == 32
    assert psi.coeff(8) == 50
    assert psi.coeff(32) == Fraction(-81, 2 ** 28)


@pytest.mark.parametrize("k", range(1, 21))
def test_psi_positive_at_rationals(k):
    assert psi_over_lam8(Fraction(k, 20)) > 0


def phi_exact(lam, t):
    T = 1 + lam ** 2 / 4 + lam ** 4 / 64 + lam ** 6 / 128
    return (1 + lam * t) ** 4 - (1 + 4 * t * t + t ** 4) * T ** 4


@pytest.mark.parametrize("lam", [Fraction(1, 10), Fraction(1, 2), Fraction(9, 10), Fraction(1)])
def test_psi_matches_definition_exactly(lam):
    t = 4 * lam / (8 - 3 * lam * lam)
    assert psi_over_lam8(lam) * lam ** 8 == (8 - 3 * lam * lam) ** 4 * phi_exact(lam, t)


@pytest.mark.parametrize("lam", [0.5, 0.9, 1.0])
def test_phi_float(lam):
    t = 0.3
    assert phi_float(lam, t) == pytest.approx(float(phi_exact(Fraction(lam), Fraction(t))),
                                              rel=1e-12)


def test_phi_columns():
    cols = phi_in_t()
    assert len(cols) == 5
    assert cols[1] == 4 * LAM
    assert cols[3] == 4 * LAM ** 3


def test_sextic_value():
    assert SEXTIC(1) == Fraction(163, 128)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p - p) == BigRationalPoly()


@given(polys, polys, fracs)
def test_evaluation_is_homomorphism(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert p.compose(q)(x) == p(q(x))
    assert p.scale_variable(3)(x) == p(3 * x)


@given(polys, st.integers(0, 4))
def test_power(p, n):
    expected = BigRationalPoly([1])
    for _ in range(n):
        expected = expected * p
    assert p ** n == expected


def test_shift_down():
    p = BigRationalPoly({3: 2, 5: 1})
    assert p.shift_down(3) == BigRationalPoly({0: 2, 2: 1})
    with pytest.raises(ValueError):
        p.shift_down(4)


def test_float_evaluation():
    assert BigRationalPoly([1, 2, 3])(0.5) == pytest.approx(2.75)
    assert isinstance(BigRationalPoly([1, 2])(Fraction(1, 3)), Fraction)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        BigRationalPoly({-1: 1})
    with pytest.raises(ValueError):
        LAM ** -1
