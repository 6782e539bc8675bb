"""Exact rational polynomials and the degree-32 positivity certificate.

The certificate polynomial is

    Psi(lam) = (8 - 3 lam^2)^4 * Phi(lam, 4 lam / (8 - 3 lam^2)),
    Phi(lam, t) = (1 + lam t)^4 - (1 + 4 t^2 + t^4) * T(lam)^4,

with T(lam) = 1 + lam^2/4 + lam^4/64 + lam^6/128. Positivity of Psi on (0, 1]
shows that the witness t gives a dual H^4 value at least T(lam).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

Rational = Fraction


class BigRationalPoly:
    """Univariate polynomial with exact rational coefficients, stored sparsely."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | Iterable = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        c = {}
        for k, v in items:
            if k < 0:
                raise ValueError("exponents must be nonnegative")
            v = Fraction(v)
            if v:
                c[int(k)] = c.get(int(k), Fraction(0)) + v
        self._c = {k: v for k, v in c.items() if v}

    @classmethod
    def monomial(cls, k: int, c=1) -> BigRationalPoly:
        return cls({k: c})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def coeff(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    @property
    def degree(self) -> int:
        return max(self._c, default=-1)

    @property
    def lowest(self) -> int:
        return min(self._c, default=-1)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if not isinstance(other, BigRationalPoly):
            other = BigRationalPoly([other])
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def _lift(self, other) -> BigRationalPoly:
        return other if isinstance(other, BigRationalPoly) else BigRationalPoly([other])

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, Fraction(0)) + v
        return BigRationalPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BigRationalPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[int, Fraction] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                out[i + j] = out.get(i + j, Fraction(0)) + a * b
        return BigRationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = BigRationalPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale_variable(self, c) -> BigRationalPoly:
        """p(c * lam)."""
        c = Fraction(c)
        return BigRationalPoly({k: v * c ** k for k, v in self._c.items()})

    def compose(self, q: BigRationalPoly) -> BigRationalPoly:
        """p(q(lam)) by Horner's rule."""
        result = BigRationalPoly()
        for k in range(self.degree, -1, -1):
            result = result * q + self.coeff(k)
        return result

    def shift_down(self, k: int) -> BigRationalPoly:
        """p(lam) / lam^k; every exponent must be at least k."""
        if self._c and self.lowest < k:
            raise ValueError(f"not divisible by lam^{k}")
        return BigRationalPoly({e - k: v for e, v in self._c.items()})

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            acc = Fraction(0)
        else:
            acc = 0.0
        for k in range(self.degree, -1, -1):
            acc = acc * x + (self.coeff(k) if isinstance(acc, Fraction) else float(self.coeff(k)))
        return acc

    def __repr__(self):
        if not self._c:
            return "BigRationalPoly(0)"
        terms = " + ".join(f"({v})*x^{k}" for k, v in sorted(self._c.items()))
        return f"BigRationalPoly({terms})"


LAM = BigRationalPoly.monomial(1)
SEXTIC = BigRationalPoly({0: 1, 2: Fraction(1, 4), 4: Fraction(1, 64), 6: Fraction(1, 128)})

# Psi(lam) / lam^8, keyed by exponent of lam
MONSTER_COEFFS: dict[int, Fraction] = {
    0: Fraction(50),
    2: Fraction(1),
    4: Fraction(-149, 2**4),
    6: Fraction(-209, 2**6),
    8: Fraction(-5375, 2**12),
    10: Fraction(-3069, 2**13),
    12: Fraction(-8963, 2**17),
    14: Fraction(-7837, 2**19),
    16: Fraction(-36209, 2**24),
    18: Fraction(-2049, 2**23),
    20: Fraction(-1331, 2**25),
    22: Fraction(-45, 2**25),
    24: Fraction(-81, 2**28),
}


def phi_in_t() -> list[BigRationalPoly]:
    """Coefficients (in powers of t, degree 0..4) of Phi(lam, t), each a polynomial in lam."""
    t4 = SEXTIC ** 4
    cols = [comb(4, k) * LAM ** k for k in range(5)]  # (1 + lam t)^4
    cols[0] = cols[0] - t4
    cols[2] = cols[2] - 4 * t4
    cols[4] = cols[4] - t4
    return cols


def build_psi() -> BigRationalPoly:
    """Psi(lam) = sum_k c_k(lam) (4 lam)^k (8 - 3 lam^2)^(4 - k)."""
    num = 4 * LAM
    den = BigRationalPoly({0: 8, 2: -3})
    psi = BigRationalPoly()
    for k, ck in enumerate(phi_in_t()):
        psi = psi + ck * num ** k * den ** (4 - k)
    return psi


@dataclass
class MonsterReport:
    ok: bool
    mismatches: list[tuple[int, Fraction, Fraction]] = field(default_factory=list)
    out_of_range: list[int] = field(default_factory=list)
    matched: int = 0


def verify_monster(expected: Mapping[int, Fraction] | None = None) -> MonsterReport:
    """Compare Psi/lam^8 with the 13 stored coefficients, exactly.

    Mismatches are (exponent in Psi/lam^8, computed, expected). Terms of Psi
    below lam^8 or above lam^32 are listed in ``out_of_range``.
    """
    expected = MONSTER_COEFFS if expected is None else expected
    psi = build_psi()
    out_of_range = [k for k in psi.coeffs if k < 8 or k > 32]
    got = {k - 8: v for k, v in psi.coeffs.items() if 8 <= k}
    mismatches = []
    for k in sorted(set(got) | set(expected)):
        a, b = got.get(k, Fraction(0)), Fraction(expected.get(k, 0))
        if a != b:
            mismatches.append((k, a, b))
    matched = sum(1 for k in expected if got.get(k, Fraction(0)) == Fraction(expected[k]))
    return MonsterReport(not mismatches and not out_of_range, mismatches, out_of_range, matched)


def psi_over_lam8(lam) -> Fraction | float:
    return build_psi().shift_down(8)(lam)


def phi_float(lam: float, t: float) -> float:
    T = 1.0 + lam**2 / 4 + lam**4 / 64 + lam**6 / 128
    return (1.0 + lam * t) ** 4 - (1.0 + 4 * t * t + t**4) * T**4
