"""Numerical kernels: circle and sphere quadrature, elliptic E, 1-D maximization, small SVD.

Everything here is a pure function of its inputs. Integrands passed to
:func:`circle_mean` must be vectorized (accept a numpy array of angles).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.optimize import minimize_scalar

from .errors import DomainError, NonConvergence, NonFinite

TWO_PI = 2.0 * math.pi
INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class QuadratureSpec:
    initial_nodes: int = 32
    rel_tol: float = 1e-13
    max_nodes: int = 2**20

    def __post_init__(self):
        n = self.initial_nodes
        if n < 16 or n & (n - 1):
            raise DomainError(f"initial_nodes must be a power of two >= 16, got {n}")
        if self.max_nodes < n:
            raise DomainError("max_nodes must be >= initial_nodes")
        if not 0.0 < self.rel_tol < 1.0:
            raise DomainError("rel_tol must lie in (0, 1)")


DEFAULT_QUAD = QuadratureSpec()


@dataclass(frozen=True)
class CircleMean:
    value: float | complex
    nodes: int
    rel_change: float


def circle_mean_info(integrand: Callable[[np.ndarray], np.ndarray],
                     spec: QuadratureSpec | None = None) -> CircleMean:
    """Trapezoidal average of ``integrand`` over [0, 2pi) with node doubling.

    Each doubling only evaluates the new midpoints. The relative change is
    measured against max(|estimate|, mean |integrand|) so that integrals
    which cancel to zero still terminate.
    """
    spec = spec or DEFAULT_QUAD
    n = spec.initial_nodes
    t = np.arange(n) * (TWO_PI / n)
    vals = np.asarray(integrand(t))
    est = vals.mean()
    mag = np.abs(vals).mean()
    change = math.inf
    while n < spec.max_nodes:
        mid = (np.arange(n) + 0.5) * (TWO_PI / n)
        mvals = np.asarray(integrand(mid))
        new = 0.5 * (est + mvals.mean())
        mag = 0.5 * (mag + np.abs(mvals).mean())
        n *= 2
        scale = max(abs(new), mag)
        change = abs(new - est) / scale if scale > 0 else 0.0
        est = new
        if change < spec.rel_tol:
            break
    if change >= 10 * spec.rel_tol:
        raise NonConvergence(
            f"circle_mean: relative change {change:.3g} at {n} nodes "
            f"(rel_tol {spec.rel_tol:g})")
    value = complex(est) if np.iscomplexobj(est) else float(est)
    return CircleMean(value, n, float(change))


def circle_mean(integrand: Callable[[np.ndarray], np.ndarray],
                spec: QuadratureSpec | None = None) -> float | complex:
    """Normalized circle average (1/2pi) * integral of ``integrand`` over [0, 2pi)."""
    return circle_mean_info(integrand, spec).value


def ellipe_modulus(k, kc=None):
    """Complete elliptic integral of the second kind, modulus convention, via AGM.

    ``kc`` is the complementary modulus sqrt(1 - k^2); pass it when it is
    known more accurately than 1 - k^2 would give. Vectorized over ``k``.
    """
    k = np.asarray(k, dtype=float)
    if kc is None:
        kc = np.sqrt((1.0 - k) * (1.0 + k))
    else:
        kc = np.asarray(kc, dtype=float)
    k, kc = np.broadcast_arrays(k, kc)
    reg = kc > 0.0  # kc == 0 is E(1) = 1
    full = bool(reg.all())
    if not full and not reg.any():
        out = np.ones(k.shape)
        return out if out.ndim else float(out)
    a = np.ones(k.shape if full else int(reg.sum()))
    g = kc.astype(float, copy=True) if full else kc[reg]
    c = k.astype(float, copy=True) if full else k[reg]
    acc = 0.5 * c * c
    weight = 0.5
    for _ in range(64):
        a, g = 0.5 * (a + g), np.sqrt(a * g)
        c = c * c / (4.0 * a)  # equals (a_prev - g_prev) / 2 without cancellation
        weight *= 2.0
        acc += weight * c * c
        if c.max() <= 1e-18:
            break
    val = (math.pi / (2.0 * a)) * (1.0 - acc)
    if full:
        out = val
    else:
        out = np.ones(k.shape)
        out[reg] = val
    return out if out.ndim else float(out)


def elliptic_E(modulus: float) -> float:
    """E(k) = integral_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt for 0 <= k <= 1."""
    if not 0.0 <= modulus <= 1.0:
        raise DomainError(f"elliptic_E: modulus must lie in [0, 1], got {modulus}")
    return float(ellipe_modulus(modulus))


@dataclass(frozen=True)
class Bracket1D:
    lo: float
    hi: float
    tol: float = 1e-10

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if not self.tol > 0:
            raise DomainError("bracket tolerance must be positive")


def maximize_1d(objective: Callable, bracket: Bracket1D, *, grid_points: int = 256,
                vectorized: bool = False, refine: str = "golden") -> tuple[float, float]:
    """Grid scan followed by refinement of the best cell.

    ``refine="golden"`` is plain golden-section search to width ``tol``;
    ``refine="brent"`` adds parabolic steps (scipy's bounded Brent) and needs
    far fewer evaluations on smooth objectives. The returned value is never
    below the best grid value, so a multimodal objective still yields at
    least the coarse maximum.
    """
    lo, hi = bracket.lo, bracket.hi
    xs = np.linspace(lo, hi, max(grid_points, 3))
    if vectorized:
        fs = np.asarray(objective(xs), dtype=float)
    else:
        fs = np.array([objective(float(x)) for x in xs])
    i = int(np.argmax(fs))
    best_x, best_f = float(xs[i]), float(fs[i])

    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, len(xs) - 1)])
    f = (lambda x: float(objective(np.array([x]))[0])) if vectorized else objective
    if refine == "brent":
        res = minimize_scalar(lambda x: -f(x), bounds=(a, b), method="bounded",
                              options={"xatol": bracket.tol})
        x, fx = float(res.x), -float(res.fun)
        return (x, fx) if fx >= best_f else (best_x, best_f)
    if refine != "golden":
        raise DomainError(f"unknown refinement {refine!r}")
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > bracket.tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    x, fx = (c, fc) if fc >= fd else (d, fd)
    if fx >= best_f:
        return x, fx
    return best_x, best_f


@dataclass(frozen=True, eq=False)
class SphereGrid:
    dimension: int
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values) -> float:
        return float(np.asarray(values) @ self.weights)


@lru_cache(maxsize=32)
def _sphere_grid_cached(n: int, quality: int, seed: int) -> SphereGrid:
    if n == 2:
        t = np.arange(quality) * (TWO_PI / quality)
        nodes = np.column_stack([np.cos(t), np.sin(t)])
        weights = np.full(quality, 1.0 / quality)
    elif n == 3:
        u, w = leggauss(quality)
        phi = np.arange(2 * quality) * (math.pi / quality)
        uu, pp = np.meshgrid(u, phi, indexing="ij")
        r = np.sqrt(1.0 - uu * uu)
        nodes = np.stack([r * np.cos(pp), r * np.sin(pp), uu], axis=-1).reshape(-1, 3)
        weights = np.repeat(w / 2.0, 2 * quality) / (2 * quality)
    else:
        rng = np.random.default_rng(seed)
        x = rng.standard_normal((quality, n))
        nodes = x / np.linalg.norm(x, axis=1, keepdims=True)
        weights = np.full(quality, 1.0 / quality)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return SphereGrid(n, nodes, weights)


def sphere_grid(n: int, quality: int, seed: int = 0) -> SphereGrid:
    """Quadrature for the normalized surface measure on the unit sphere of R^n.

    n=2: ``quality`` equispaced points. n=3: Gauss-Legendre in the polar
    cosine times ``2*quality`` equispaced azimuths. n>=4: seeded Monte Carlo.
    """
    if n < 2:
        raise DomainError(f"sphere_grid needs n >= 2, got {n}")
    if quality < 1:
        raise DomainError("quality must be positive")
    return _sphere_grid_cached(int(n), int(quality), int(seed))


def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def _svd_2x2(A: np.ndarray):
    # z -> a z + b conj(z); a = e^{i alpha}|a|, b = e^{i beta}|b|
    a = complex(A[0, 0] + A[1, 1], A[1, 0] - A[0, 1]) / 2
    b = complex(A[0, 0] - A[1, 1], A[1, 0] + A[0, 1]) / 2
    ra, rb = abs(a), abs(b)
    alpha = math.atan2(a.imag, a.real)
    beta = math.atan2(b.imag, b.real)
    chi, phi = (alpha + beta) / 2, (alpha - beta) / 2
    U = _rotation(chi)
    if ra < rb:
        U = U @ np.diag([1.0, -1.0])
    V = _rotation(-phi)
    return np.array([ra + rb, abs(ra - rb)]), U, V


def _complete_orthonormal(U: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Replace columns not in ``keep`` so that U becomes orthogonal."""
    n = U.shape[0]
    Q = U[:, keep]
    basis = [Q[:, j] for j in range(Q.shape[1])]
    for e in np.eye(n):
        if len(basis) == n:
            break
        v = e.copy()
        for q in basis:
            v -= (q @ v) * q
        for q in basis:
            v -= (q @ v) * q
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            basis.append(v / nv)
    out = U.copy()
    fill = iter(basis[Q.shape[1]:])
    for j in range(n):
        if not keep[j]:
            out[:, j] = next(fill)
    return out


def _jacobi_svd(A: np.ndarray, tol: float = 1e-13, max_sweeps: int = 60):
    n = A.shape[0]
    W = A.astype(float).copy()
    V = np.eye(n)
    for _ in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = W[:, i] @ W[:, i]
                beta = W[:, j] @ W[:, j]
                gamma = W[:, i] @ W[:, j]
                if abs(gamma) <= tol * math.sqrt(alpha * beta) or gamma == 0.0:
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                wi, wj = W[:, i].copy(), W[:, j].copy()
                W[:, i], W[:, j] = c * wi - s * wj, s * wi + c * wj
                vi, vj = V[:, i].copy(), V[:, j].copy()
                V[:, i], V[:, j] = c * vi - s * vj, s * vi + c * vj
        if not rotated:
            break
    sigma = np.linalg.norm(W, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, W, V = sigma[order], W[:, order], V[:, order]
    cutoff = max(sigma[0], 1e-300) * 1e-14 * n if sigma.size else 0.0
    keep = sigma > cutoff
    U = np.zeros_like(W)
    U[:, keep] = W[:, keep] / sigma[keep]
    if not np.all(keep):
        U = _complete_orthonormal(U, keep)
    return sigma, U, V


def svd_small(A) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular values (descending) and orthogonal U, V with A = U diag(s) V^T."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DomainError(f"svd_small expects a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NonFinite("matrix has NaN or infinite entries")
    n = A.shape[0]
    if n == 1:
        x = float(A[0, 0])
        return np.array([abs(x)]), np.array([[math.copysign(1.0, x)]]), np.eye(1)
    if n == 2:
        return _svd_2x2(A)
    return _jacobi_svd(A)


@lru_cache(maxsize=8)
def tanh_sinh_half(h: float = 1.0 / 16, tmax: float = 4.0):
    """Double-exponential rule for integral_0^1 f(u) du where f is even in u.

    Returns (u^2, 1 - u^2, weights) for nodes u in (0, 1). Only u^2 and
    1 - u^2 are exposed: 1 - u^2 is computed as sech^2 directly, which keeps
    integrable endpoint singularities such as log(1 - u^2) accurate.
    """
    tau = np.arange(0, int(round(tmax / h)) + 1) * h
    arg = 0.5 * math.pi * np.sinh(tau)
    u = np.tanh(arg)
    one_minus_u2 = 1.0 / np.cosh(arg) ** 2
    w = h * 0.5 * math.pi * np.cosh(tau) * one_minus_u2
    w[0] *= 0.5  # tau = 0 is shared by both halves of the symmetric rule
    u2 = u * u
    for arr in (u2, one_minus_u2, w):
        arr.setflags(write=False)
    return u2, one_minus_u2, w
