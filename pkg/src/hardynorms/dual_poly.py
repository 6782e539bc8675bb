"""Dual Hardy norms on C^2 and the comparison between H^1_* and H^4.

By symmetry and homogeneity every question reduces to xi = (1, lam) with
lam in [0, 1], and the dual norm becomes a one-dimensional supremum

    ||(1, lam)||_{H^p_*} = sup_{0 <= t <= 1} (1 + lam t) / ||(1, t)||_{H^p}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numerics import Bracket1D, maximize_1d
from .poly_hardy import coeff_vector, parse_exponent, reduce_pair, unit_pair_norm

RATIO_BOUND = 1.01


@dataclass(frozen=True)
class DualNormResult:
    value: float
    witness_t: float
    lam: float


def reduce_to_lambda(xi) -> tuple[float, float]:
    a = coeff_vector(xi)
    if a.size != 2:
        raise DomainError(f"expected two coefficients, got {a.size}")
    return reduce_pair(a[0], a[1])


def _dual_unit(lam: float, p: float) -> tuple[float, float]:
    def objective(t):
        return (1.0 + lam * t) / unit_pair_norm(t, p)
    return maximize_1d(objective, Bracket1D(0.0, 1.0, 1e-10), vectorized=True)


def dual_norm_c2(xi, p) -> DualNormResult:
    """||xi||_{H^p_*} on C^2 together with the maximizing t of the reduced problem."""
    p = parse_exponent(p)
    a = coeff_vector(xi)
    if a.size != 2:
        raise DomainError(f"expected two coefficients, got {a.size}")
    if not np.any(a):
        return DualNormResult(0.0, 0.0, 0.0)
    scale, lam = reduce_pair(a[0], a[1])
    if p == 2:
        # self-dual; the supremum sits at t = lam
        return DualNormResult(float(np.linalg.norm(a)), lam, lam)
    t, value = _dual_unit(lam, p)
    return DualNormResult(scale * value, t, lam)


def h1_unit(lam):
    """G(lam) = ||(1, lam)||_{H^1}."""
    return unit_pair_norm(lam, 1.0)


def h4_unit(lam):
    """F(lam) = ||(1, lam)||_{H^4} = (1 + 4 lam^2 + lam^4)^(1/4)."""
    return unit_pair_norm(lam, 4.0)


def sextic(lam):
    """1 + lam^2/4 + lam^4/64 + lam^6/128, the polynomial squeezed between G and F*."""
    l2 = np.asarray(lam, dtype=float) ** 2
    return 1.0 + l2 / 4.0 + l2 * l2 / 64.0 + l2 ** 3 / 128.0


def two_sides_witness(lam):
    return 4.0 * lam / (8.0 - 3.0 * lam * lam)


def tangent_sup(a: float, b: float, r: float) -> float:
    """sup over theta of (b - r sin theta) / (a - r cos theta), for 0 < r < a."""
    if not 0.0 < r < a:
        raise DomainError(f"tangent_sup needs 0 < r < a, got r={r}, a={a}")
    return (a * b + r * math.sqrt(a * a + b * b - r * r)) / (a * a - r * r)


def gstar_upper_bound(lam: float) -> float:
    """(3 + 2 sqrt(1 + 5 lam^2)) / 5, an upper bound for ||(1, lam)||_{H^1_*}."""
    if not 0.0 < lam <= 1.0:
        raise DomainError(f"gstar_upper_bound needs 0 < lam <= 1, got {lam}")
    return (3.0 + 2.0 * math.sqrt(1.0 + 5.0 * lam * lam)) / 5.0


def _grid(lambda_grid) -> np.ndarray:
    lam = np.asarray(lambda_grid, dtype=float)
    if lam.ndim != 1 or lam.size == 0 or lam.min() < 0.0 or lam.max() > 1.0:
        raise DomainError("lambda grid must be a non-empty list of values in [0, 1]")
    return lam


@dataclass(frozen=True, eq=False)
class RatioTable:
    lam: np.ndarray
    gstar: np.ndarray
    F: np.ndarray
    ratio: np.ndarray

    @property
    def min_ratio(self) -> float:
        return float(self.ratio.min())

    @property
    def max_ratio(self) -> float:
        return float(self.ratio.max())

    @property
    def argmax_lam(self) -> float:
        return float(self.lam[int(np.argmax(self.ratio))])


def ratio_sweep(grid_size: int) -> RatioTable:
    """Table of ||(1,lam)||_{H^1_*} / ||(1,lam)||_{H^4} on a uniform grid of [0, 1]."""
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    lam = np.linspace(0.0, 1.0, grid_size)
    gstar = np.array([_dual_unit(float(x), 1.0)[1] for x in lam])
    F = h4_unit(lam)
    return RatioTable(lam, gstar, F, gstar / F)


@dataclass(frozen=True, eq=False)
class BprReport:
    lam: np.ndarray
    G: np.ndarray
    lower: np.ndarray

    @property
    def slack(self) -> np.ndarray:
        return self.G - self.lower

    @property
    def min_slack(self) -> float:
        return float(self.slack.min())


def check_bpr(lambda_grid) -> BprReport:
    """Compare G(lam) with the lower bound 3 - sqrt(4 - lam^2)."""
    lam = _grid(lambda_grid)
    return BprReport(lam, h1_unit(lam), 3.0 - np.sqrt(4.0 - lam * lam))


@dataclass(frozen=True, eq=False)
class TwoSidesReport:
    lam: np.ndarray
    G: np.ndarray
    T: np.ndarray
    Fstar: np.ndarray
    witness_value: np.ndarray

    @property
    def left_gap(self) -> np.ndarray:
        return self.T - self.G

    @property
    def right_gap(self) -> np.ndarray:
        return self.Fstar - self.T

    @property
    def witness_gap(self) -> np.ndarray:
        return self.witness_value - self.T

    @property
    def min_gap(self) -> float:
        return float(min(self.left_gap.min(), self.right_gap.min()))


def check_two_sides(lambda_grid) -> TwoSidesReport:
    """Evaluate G(lam) <= T(lam) <= F*(lam); F* both optimized and at the explicit witness."""
    lam = _grid(lambda_grid)
    fstar = np.array([_dual_unit(float(x), 4.0)[1] for x in lam])
    t = two_sides_witness(lam)
    witness_value = (1.0 + lam * t) / (1.0 + 4.0 * t * t + t ** 4) ** 0.25
    return TwoSidesReport(lam, h1_unit(lam), sextic(lam), fstar, witness_value)
