"""Hardy norms of real square matrices.

||A||_{H^p} is the p-power mean of ||Ax|| over the unit sphere. By
orthogonal invariance it depends only on the singular values, so every
routine first reduces A to diag(sigma).

For n = 3 the sphere integral is done semi-analytically. Writing x3 = u for
the axis of the smallest singular value, the average of ||Dx||^p over the
circle of latitude u equals ||(c1, c2)||_{H^p}^p for the degree-1 polynomial
with c1 +/- c2 = sqrt(s1^2 (1-u^2) + s3^2 u^2), sqrt(s2^2 (1-u^2) + s3^2 u^2).
Since u is uniformly distributed on [-1, 1], one integral in u remains, done by
a tanh-sinh rule that tolerates the integrable endpoint singularities of
rank-deficient matrices (log for p = 0).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy.special import hyp2f1

from .errors import DimensionMismatch, DomainError, NonFinite, SingularMatrix, ZeroMatrix
from .numerics import Bracket1D, SphereGrid, maximize_1d, sphere_grid, svd_small, tanh_sinh_half
from .poly_hardy import INF, hp_norm, parse_exponent, unit_pair_norm

MC_QUALITY = 100_000


@dataclass(frozen=True, eq=False)
class RealMatrix:
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise NonFinite("matrix has NaN or infinite entries")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @cached_property
    def svd(self):
        return svd_small(self.entries)

    @property
    def singular_values(self) -> np.ndarray:
        return self.svd[0]

    @classmethod
    def from_json(cls, text: str) -> RealMatrix:
        data = json.loads(text)
        try:
            n, rows = int(data["n"]), data["rows"]
        except (KeyError, TypeError, ValueError):
            raise DomainError('matrix JSON needs keys "n" and "rows"') from None
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DimensionMismatch(f"rows do not form a {n}x{n} matrix")
        return cls(np.array(rows, dtype=float))

    @classmethod
    def load(cls, path) -> RealMatrix:
        return cls.from_json(Path(path).read_text())

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "rows": self.entries.tolist()})

    def __matmul__(self, other):
        return RealMatrix(self.entries @ as_matrix(other).entries)

    def __rmul__(self, c):
        return RealMatrix(float(c) * self.entries)

    __mul__ = __rmul__


def as_matrix(A) -> RealMatrix:
    return A if isinstance(A, RealMatrix) else RealMatrix(A)


def projection(n: int, rank: int) -> RealMatrix:
    """Orthogonal projection onto the first ``rank`` coordinates of R^n."""
    return RealMatrix(np.diag([1.0] * rank + [0.0] * (n - rank)))


@dataclass(frozen=True)
class SphereMoments:
    n: int
    alpha: float
    beta: float


def sphere_moments(n: int) -> SphereMoments:
    """Fourth moments of the uniform measure on S^(n-1): int x1^4 and int x1^2 x2^2."""
    if n < 2:
        raise DomainError(f"sphere_moments needs n >= 2, got {n}")
    d = n * (n + 2)
    return SphereMoments(n, 3.0 / d, 1.0 / d)


def _h4_from_sigma(s: np.ndarray) -> np.ndarray:
    n = s.shape[-1]
    if n == 1:
        return np.abs(s[..., 0])
    m = sphere_moments(n)
    s2 = s * s
    sum4 = (s2 * s2).sum(-1)
    cross = 0.5 * (s2.sum(-1) ** 2 - sum4)  # sum over k < l of s_k^2 s_l^2
    return (m.alpha * sum4 + 2.0 * m.beta * cross) ** 0.25


def _diag_norm_3(s: np.ndarray, p: float) -> np.ndarray:
    """Batched ||diag(s)||_{H^p} for rows of ``s`` sorted in descending order, n = 3."""
    u2, v, w = tanh_sinh_half()
    s1, s2, s3 = (s[:, i:i + 1] for i in range(3))
    A = s1 * s1 * v + s3 * s3 * u2
    B = s2 * s2 * v + s3 * s3 * u2
    ra, rb = np.sqrt(A), np.sqrt(B)
    c1 = 0.5 * (ra + rb)
    with np.errstate(divide="ignore", invalid="ignore"):
        c2 = 0.5 * (s1 * s1 - s2 * s2) * v / (ra + rb)
        lam = np.where(c1 > 0, c2 / c1, 0.0)
    lam = np.clip(lam, 0.0, 1.0)
    if p == 0:
        with np.errstate(divide="ignore"):
            out = np.exp(np.log(c1) @ w)
    else:
        # hyp2f1 rather than the AGM: same accuracy, far cheaper in this hot path
        out = ((c1 ** p) * hyp2f1(-0.5 * p, -0.5 * p, 1.0, lam * lam)) @ w
        out = out ** (1.0 / p)
    return out


def _diag_norm_grid(s: np.ndarray, p: float, grid: SphereGrid) -> np.ndarray:
    sq = (grid.nodes * grid.nodes) @ (s * s).T  # (nodes, batch)
    if p == 0:
        with np.errstate(divide="ignore"):
            logs = 0.5 * np.log(sq)
        if np.isneginf(logs).any():
            raise SingularMatrix("a quadrature node lies in the kernel; log integrand is infinite")
        return np.exp(grid.weights @ logs)
    return (grid.weights @ sq ** (0.5 * p)) ** (1.0 / p)


def diag_hp_norm(s, p, grid: SphereGrid | None = None) -> np.ndarray | float:
    """||diag(s)||_{H^p}; ``s`` may be a batch of shape (m, n).

    With ``grid`` the sphere integral is taken on that grid; otherwise the
    exact route for the dimension is used (closed form, complex pair for
    n=2, latitude reduction for n=3, seeded Monte Carlo for n>=4).
    """
    p = parse_exponent(p)
    s = np.abs(np.asarray(s, dtype=float))
    single = s.ndim == 1
    s = np.sort(np.atleast_2d(s), axis=1)[:, ::-1]
    n = s.shape[1]
    if grid is not None and grid.dimension != n:
        raise DimensionMismatch(f"grid dimension {grid.dimension} != matrix size {n}")

    if p == INF:
        out = s[:, 0].copy()
    elif p == 2:
        out = np.sqrt((s * s).mean(1))
    elif n == 1:
        out = s[:, 0].copy()
    elif grid is not None:
        out = np.zeros(len(s))
        nz = s[:, 0] > 0
        if nz.any():
            out[nz] = _diag_norm_grid(s[nz], p, grid)
    elif p == 4:
        out = _h4_from_sigma(s)
    else:
        out = np.zeros(len(s))
        nz = s[:, 0] > 0
        if nz.any():
            t = s[nz]
            if n == 2:
                a = 0.5 * (t[:, 0] + t[:, 1])
                out[nz] = a * unit_pair_norm(0.5 * (t[:, 0] - t[:, 1]) / a, p)
            elif n == 3:
                out[nz] = _diag_norm_3(t, p)
            else:
                out[nz] = _diag_norm_grid(t, p, sphere_grid(n, MC_QUALITY, 0))
    return float(out[0]) if single else out


def matrix_hp_norm(A, p, grid: SphereGrid | None = None) -> float:
    """||A||_{H^p} = (integral over the sphere of ||Ax||^p)^(1/p); p = 0 is the geometric mean."""
    A = as_matrix(A)
    return diag_hp_norm(A.singular_values, p, grid)


def matrix_h4_closed(A) -> float:
    """||A||_{H^4} from alpha * sum s^4 + 2 beta * sum_{k<l} s_k^2 s_l^2."""
    A = as_matrix(A)
    return float(_h4_from_sigma(A.singular_values[None, :])[0])


def matrix_inner(A, B) -> float:
    """Normalized trace inner product tr(B^T A) / n."""
    A, B = as_matrix(A), as_matrix(B)
    if A.n != B.n:
        raise DimensionMismatch(f"sizes differ: {A.n} and {B.n}")
    return float(np.sum(A.entries * B.entries) / A.n)


def complex_pair_of_2x2(A) -> tuple[complex, complex]:
    """(a, b) with A x = a z + b conj(z) in complex notation z = x1 + i x2."""
    A = as_matrix(A)
    if A.n != 2:
        raise DimensionMismatch(f"expected a 2x2 matrix, got {A.n}x{A.n}")
    m = A.entries
    a = complex(m[0, 0] + m[1, 1], m[1, 0] - m[0, 1]) / 2
    b = complex(m[0, 0] - m[1, 1], m[1, 0] + m[0, 1]) / 2
    return a, b


def matrix_of_complex_pair(a: complex, b: complex) -> RealMatrix:
    a, b = complex(a), complex(b)
    return RealMatrix([[(a + b).real, -(a - b).imag],
                       [(a + b).imag, (a - b).real]])


def _dual_reduced(sigma: np.ndarray, p: float) -> float:
    n = len(sigma)
    scale = sigma[0]
    sig = sigma / scale

    def ratio(s):
        s = np.atleast_2d(s)
        return (s @ sig) / n / diag_hp_norm(s, p)

    if n == 1:
        return scale
    if n == 2:
        def f(x):
            x = np.asarray(x, dtype=float)
            return ratio(np.column_stack([np.ones_like(x), x]))
        _, best = maximize_1d(f, Bracket1D(0.0, 1.0, 1e-9), vectorized=True)
        return scale * best
    if n == 3:
        return scale * _dual_nested_3(ratio)
    return scale * _dual_coordinate_ascent(ratio, sig)


def _dual_nested_3(ratio) -> float:
    # s = (1, s2, s2 * f) with s2, f in [0, 1] covers the sorted simplex
    m = 65
    s2g, fg = np.meshgrid(np.linspace(0, 1, m), np.linspace(0, 1, m), indexing="ij")
    pts = np.column_stack([np.ones(m * m), s2g.ravel(), (s2g * fg).ravel()])
    coarse = ratio(pts).reshape(m, m)
    i = int(np.unravel_index(np.argmax(coarse), coarse.shape)[0])
    coarse_best = float(coarse.max())

    def inner(s2):
        if s2 <= 0.0:
            return float(ratio(np.array([1.0, 0.0, 0.0]))[0])

        def g(f):
            f = np.asarray(f, dtype=float)
            return ratio(np.column_stack([np.ones_like(f), np.full_like(f, s2), s2 * f]))
        return maximize_1d(g, Bracket1D(0.0, 1.0, 1e-9), grid_points=64, vectorized=True,
                           refine="brent")[1]

    h = 1.0 / (m - 1)
    lo, hi = max(0.0, (i - 1) * h), min(1.0, (i + 1) * h)
    _, best = maximize_1d(inner, Bracket1D(lo, hi, 1e-9), grid_points=5, refine="brent")
    return max(best, coarse_best)


def _dual_coordinate_ascent(ratio, sig: np.ndarray, sweeps: int = 20) -> float:
    n = len(sig)
    starts = [sig.copy(), np.ones(n), np.eye(n)[0]]
    best = -math.inf
    for s in starts:
        s = s.copy()
        cur = float(ratio(s)[0])
        for _ in range(sweeps):
            before = cur
            for j in range(1, n):
                def g(x, j=j):
                    x = np.asarray(x, dtype=float)
                    trial = np.repeat(s[None, :], len(x), axis=0)
                    trial[:, j] = x
                    return ratio(trial)
                x, val = maximize_1d(g, Bracket1D(0.0, 1.0, 1e-8), grid_points=33, vectorized=True)
                if val > cur:
                    s[j], cur = x, val
            if cur - before < 1e-12:
                break
        best = max(best, cur)
    return best


def _dual_brute(A: RealMatrix, p: float, samples: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    n = A.n
    a = A.entries

    def ratios(Bs):
        inner = np.einsum("ij,kij->k", a, Bs) / n
        sv = np.linalg.svd(Bs, compute_uv=False)
        return np.abs(inner) / diag_hp_norm(sv, p)

    best_val, best_B = -math.inf, None
    batch = 10_000
    done = 0
    while done < samples:
        k = min(batch, samples - done)
        Bs = rng.standard_normal((k, n, n))
        r = ratios(Bs)
        j = int(np.argmax(r))
        if r[j] > best_val:
            best_val, best_B = float(r[j]), Bs[j] * np.sign(np.sum(a * Bs[j]) or 1.0)
        done += k
    # local random search around the incumbent, normalized to unit Frobenius norm
    step = 0.3
    B = best_B / np.linalg.norm(best_B)
    for _ in range(60):
        cand = B[None] + step * rng.standard_normal((200, n, n))
        cand /= np.linalg.norm(cand, axis=(1, 2), keepdims=True)
        r = ratios(cand)
        j = int(np.argmax(r))
        if r[j] > best_val:
            best_val, B = float(r[j]), cand[j]
        else:
            step *= 0.7
    return best_val


def matrix_dual_norm(A, p, method: str = "reduced", *, samples: int = 100_000,
                     seed: int = 0) -> float:
    """||A||_{H^p_*} = sup <A, B> / ||B||_{H^p}.

    ``reduced`` optimizes over B sharing the singular vectors of A, which
    the trace inequality and orthogonal invariance allow. ``brute`` samples
    Gaussian B and refines locally; every value it reports is an attained
    ratio, so it is a lower bound for the reduced answer.
    """
    A = as_matrix(A)
    p = parse_exponent(p)
    sigma = A.singular_values
    if sigma[0] == 0:
        raise ZeroMatrix("dual norm of the zero matrix is zero; no maximizer exists")
    if method == "brute":
        return _dual_brute(A, p, samples, seed)
    if method != "reduced":
        raise DomainError(f"unknown method {method!r}")
    if p == 2:
        return matrix_hp_norm(A, 2)
    if p == INF:
        return float(sigma.mean())
    return float(_dual_reduced(sigma, p))


def complex_pair_hp_norm(A, p) -> float:
    """||A||_{H^p} for 2x2 A through the equivalent degree-1 polynomial."""
    a, b = complex_pair_of_2x2(A)
    return hp_norm([a, b], p)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))
