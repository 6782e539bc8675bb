"""Extremal harmonic self-maps of the disk and ball, and the attainable derivatives.

A pair (alpha, beta) = (df(0), dbar f(0)) comes from a harmonic map of the
disk into itself exactly when ||(alpha, beta)||_{H^1_*} <= 1. The extremal
map for a direction (gamma, delta) has unimodular boundary values
g(z) = (gamma z + delta conj z) / |gamma z + delta conj z|; its derivative
pair is read off from the degree-one Fourier coefficients of g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDirection, DimensionMismatch, NonFinite, SingularMatrix
from .dual_poly import dual_norm_c2
from .matrix_hardy import RealMatrix, as_matrix, matrix_dual_norm
from .numerics import QuadratureSpec, SphereGrid, circle_mean_info, sphere_grid
from .poly_hardy import hp_norm

DEGENERATE_GAP = 1e-9
DISK_TOL = 1e-9
BALL_TOL = 1e-7
FOUR_OVER_PI = 4.0 / math.pi


@dataclass(frozen=True)
class SchwarzPair:
    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if not all(map(math.isfinite, (a.real, a.imag, b.real, b.imag))):
            raise NonFinite("SchwarzPair entries must be finite")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    def as_vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta])


@dataclass(frozen=True)
class DualDirection:
    gamma: complex
    delta: complex

    def __post_init__(self):
        g, d = complex(self.gamma), complex(self.delta)
        if not all(map(math.isfinite, (g.real, g.imag, d.real, d.imag))):
            raise NonFinite("DualDirection entries must be finite")
        if g == 0 and d == 0:
            raise DegenerateDirection("gamma and delta are both zero")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "delta", d)


def boundary_map(d: DualDirection):
    """t -> g(e^{it}), the unimodular boundary values of the extremal map."""
    if abs(abs(d.gamma) - abs(d.delta)) < DEGENERATE_GAP:
        raise DegenerateDirection(
            f"|gamma| and |delta| agree to within {DEGENERATE_GAP:g}; the boundary map "
            "is discontinuous. Perturb one of them slightly.")

    def g(t):
        z = np.exp(1j * np.asarray(t, dtype=float))
        w = d.gamma * z + d.delta * np.conj(z)
        return w / np.abs(w)
    return g


def disk_extremal_derivative(d: DualDirection, spec: QuadratureSpec | None = None) -> SchwarzPair:
    """(alpha, beta) = Fourier coefficients c_1 and c_{-1} of the extremal boundary map."""
    g = boundary_map(d)
    alpha = circle_mean_info(lambda t: g(t) * np.exp(-1j * t), spec).value
    beta = circle_mean_info(lambda t: g(t) * np.exp(1j * t), spec).value
    return SchwarzPair(alpha, beta)


def duality_residual(d: DualDirection, pair: SchwarzPair) -> float:
    """|gamma conj(alpha) + delta conj(beta) - ||(gamma, delta)||_{H^1}|."""
    lhs = d.gamma * pair.alpha.conjugate() + d.delta * pair.beta.conjugate()
    return abs(lhs - hp_norm([d.gamma, d.delta], 1))


def schwarz_admissible(pair: SchwarzPair) -> tuple[bool, float]:
    norm = dual_norm_c2(pair.as_vector(), 1).value
    return norm <= 1.0 + DISK_TOL, norm


@dataclass(frozen=True)
class CorollaryReport:
    admissible: bool
    dual_norm: float
    sch1_sum: float
    sch2_sum: float
    h4_value: float

    @property
    def sch1_slack(self) -> float:
        return FOUR_OVER_PI - self.sch1_sum

    @property
    def sch2_slack(self) -> float:
        return 1.0 - self.sch2_sum

    @property
    def h4_slack(self) -> float:
        return 1.0 - self.h4_value

    @property
    def vacuous(self) -> bool:
        """The pair is not admissible, so the inequalities need not hold."""
        return not self.admissible

    @property
    def min_slack(self) -> float:
        return min(self.sch1_slack, self.sch2_slack, self.h4_slack)

    @property
    def ok(self) -> bool:
        return self.vacuous or self.min_slack >= -DISK_TOL


def check_corollaries(pair: SchwarzPair) -> CorollaryReport:
    """|alpha| + |beta| <= 4/pi, |alpha|^2 + |beta|^2 <= 1 and ||(alpha, beta)||_{H^4} <= 1."""
    admissible, norm = schwarz_admissible(pair)
    a, b = abs(pair.alpha), abs(pair.beta)
    return CorollaryReport(admissible, norm, a + b, a * a + b * b,
                           hp_norm([pair.alpha, pair.beta], 4))


def ball_extremal_derivative(B, grid: SphereGrid | None = None) -> RealMatrix:
    """A = Dg(0) for the harmonic extension of x -> Bx / ||Bx||.

    Computed as the degree-one moment n * integral of g(x) x^T over the
    sphere, so linear boundary data Cx gives back C.
    """
    B = as_matrix(B)
    n = B.n
    if B.singular_values[-1] < 1e-9:
        raise SingularMatrix("B must be nonsingular (smallest singular value below 1e-9)")
    grid = grid or sphere_grid(n, 64 if n <= 3 else 200_000)
    if grid.dimension != n:
        raise DimensionMismatch(f"grid dimension {grid.dimension} does not match {n}")
    x = grid.nodes
    y = x @ B.entries.T
    g = y / np.linalg.norm(y, axis=1, keepdims=True)
    return RealMatrix(n * (g * grid.weights[:, None]).T @ x)


def ball_admissible(A) -> tuple[bool, float]:
    norm = matrix_dual_norm(A, 1)
    return norm <= 1.0 + BALL_TOL, norm
