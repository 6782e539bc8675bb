"""Hardy (quasi)norms of polynomial coefficient vectors.

A coefficient vector ``(a_1, ..., a_n)`` stands for f(z) = sum a_k z^(k-1) and
its H^p norm is the p-power mean of |f| over the unit circle. On C^2 most
exponents have closed forms; other cases fall back to circle quadrature.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import hyp2f1

from .errors import DomainError, NearCircleZero, NonFinite, ZeroVector
from .numerics import (Bracket1D, QuadratureSpec, TWO_PI, circle_mean,
                       ellipe_modulus, maximize_1d)

INF = math.inf
ZERO_GATE = 1e-6
SCAN_POINTS = 4096


def parse_exponent(p) -> float:
    """Accept a number or one of 'inf', 'infty', 'oo' and return a float p >= 0."""
    if isinstance(p, str):
        key = p.strip().lower()
        if key in {"inf", "infty", "infinity", "oo", "∞"}:
            return INF
        try:
            p = float(key)
        except ValueError:
            raise DomainError(f"cannot parse exponent {p!r}") from None
    p = float(p)
    if math.isnan(p) or p < 0:
        raise DomainError(f"exponent must be >= 0 or inf, got {p}")
    return p


def coeff_vector(v) -> np.ndarray:
    a = np.atleast_1d(np.asarray(v, dtype=complex))
    if a.ndim != 1 or a.size < 1:
        raise DomainError("coefficient vector must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(a)):
        raise NonFinite("coefficient vector has NaN or infinite entries")
    return a


def reduce_pair(a1, a2) -> tuple[float, float]:
    """(scale, lam) with scale = max modulus and lam = min/max in [0, 1]."""
    r1, r2 = abs(a1), abs(a2)
    hi, lo = (r1, r2) if r1 >= r2 else (r2, r1)
    if hi == 0:
        raise ZeroVector("both coordinates are zero")
    return float(hi), float(lo / hi)


def unit_pair_norm(lam, p: float):
    """||(1, lam)||_{H^p} for lam in [0, 1], vectorized over ``lam``."""
    lam = np.asarray(lam, dtype=float)
    if p == 0:
        out = np.ones_like(lam)
    elif p == INF:
        out = 1.0 + lam
    elif p == 2:
        out = np.sqrt(1.0 + lam * lam)
    elif p == 4:
        l2 = lam * lam
        out = (1.0 + 4.0 * l2 + l2 * l2) ** 0.25
    elif p == 1:
        k = 2.0 * np.sqrt(lam) / (1.0 + lam)
        kc = (1.0 - lam) / (1.0 + lam)
        out = (2.0 / math.pi) * (1.0 + lam) * ellipe_modulus(k, kc)
    else:
        out = unit_pair_power_mean(lam, p) ** (1.0 / p)
    return out if np.ndim(out) else float(out)


def unit_pair_power_mean(lam, p: float):
    """||(1, lam)||^p = 2F1(-p/2, -p/2; 1; lam^2), the squared-binomial series in closed form."""
    lam = np.asarray(lam, dtype=float)
    if p == 1:
        return unit_pair_norm(lam, 1.0)
    return hyp2f1(-0.5 * p, -0.5 * p, 1.0, lam * lam)


def pair_norms(a1, a2, p) -> np.ndarray:
    """Batched ||(a1, a2)||_{H^p} over arrays of coefficients; zero pairs give 0."""
    p = parse_exponent(p)
    r1, r2 = np.abs(np.asarray(a1)), np.abs(np.asarray(a2))
    hi, lo = np.maximum(r1, r2), np.minimum(r1, r2)
    lam = np.divide(lo, hi, out=np.zeros_like(hi, dtype=float), where=hi > 0)
    return hi * unit_pair_norm(lam, p)


def _strip(a: np.ndarray) -> np.ndarray:
    # leading zeros only multiply f by z^k, which has modulus 1 on the circle
    nz = np.flatnonzero(a)
    if nz.size == 0:
        return a[:0]
    return a[nz[0]:nz[-1] + 1]


def _poly_on_circle(a: np.ndarray):
    coeffs = a[::-1]

    def f(t):
        return np.polyval(coeffs, np.exp(1j * np.asarray(t)))
    return f


def _sup_on_circle(a: np.ndarray) -> float:
    f = _poly_on_circle(a)
    t = np.arange(SCAN_POINTS) * (TWO_PI / SCAN_POINTS)
    vals = np.abs(f(t))
    i = int(np.argmax(vals))
    h = TWO_PI / SCAN_POINTS
    _, best = maximize_1d(lambda s: np.abs(f(s)), Bracket1D(t[i] - h, t[i] + h, 1e-12),
                          vectorized=True)
    return max(best, float(vals[i]))


def _min_on_circle(a: np.ndarray) -> float:
    f = _poly_on_circle(a)
    t = np.arange(SCAN_POINTS) * (TWO_PI / SCAN_POINTS)
    return float(np.abs(f(t)).min())


def hp_norm(v, p, spec: QuadratureSpec | None = None, method: str = "auto") -> float:
    """H^p (quasi)norm of the polynomial with coefficients ``v``.

    ``method="quadrature"`` bypasses the closed forms and integrates on the
    circle; it is the independent route used to cross-check them.
    """
    p = parse_exponent(p)
    a = _strip(coeff_vector(v))
    if a.size == 0:
        return 0.0
    if a.size == 1:
        return float(abs(a[0]))
    if method not in ("auto", "quadrature"):
        raise DomainError(f"unknown method {method!r}")

    if p == INF:
        if a.size == 2 and method == "auto":
            return float(abs(a[0]) + abs(a[1]))
        return _sup_on_circle(a)
    if p == 2:
        return float(np.linalg.norm(a))

    if method == "auto":
        if a.size == 2:
            scale, lam = reduce_pair(a[0], a[1])
            return scale * unit_pair_norm(lam, p)
        if 0 < p <= 64 and p == int(p) and int(p) % 2 == 0:
            m = int(p) // 2
            power = np.array([1.0 + 0j])
            for _ in range(m):
                power = np.convolve(power, a)
            return float(np.linalg.norm(power) ** (1.0 / m))

    f = _poly_on_circle(a)
    if p == 0:
        if _min_on_circle(a) < ZERO_GATE * float(np.abs(a).max()):
            raise NearCircleZero(
                "polynomial has a zero within 1e-6 of the unit circle; "
                "log quadrature would be unreliable")
        return math.exp(circle_mean(lambda t: np.log(np.abs(f(t))), spec))
    return circle_mean(lambda t: np.abs(f(t)) ** p, spec) ** (1.0 / p)


def series_G(lam: float, p: float, *, full_output: bool = False):
    """||(1, lam)||_{H^p} from the squared generalized-binomial series.

    For |lam| < 1 summation stops once the geometric tail bound is below
    1e-15. At |lam| = 1 terms decay only like n^-(p+1); the series is cut at
    the first term below 1e-13 and the power-law tail is estimated. With
    ``full_output`` returns (value, estimated absolute error).
    """
    if not -1.0 <= lam <= 1.0:
        raise DomainError(f"series_G needs |lam| <= 1, got {lam}")
    if not 0 < p < INF:
        raise DomainError(f"series_G needs 0 < p < inf, got {p}")
    q = 0.5 * p
    l2 = lam * lam
    boundary = l2 == 1.0
    total = 1.0
    coef = 1.0  # binom(q, n)
    n = 0
    err = 0.0
    chunk = 4096
    cap = 50_000_000
    while True:
        idx = np.arange(n + 1, n + chunk + 1, dtype=float)
        coefs = coef * np.cumprod((q - idx + 1.0) / idx)
        terms = coefs * coefs * l2 ** idx if not boundary else coefs * coefs
        if l2 == 0.0:
            break
        if not boundary:
            # for n >= q the ratio of consecutive terms is below lam^2
            tail = np.abs(terms) / (1.0 - l2)
            ok = np.flatnonzero((tail < 1e-15) & (idx >= q))
        else:
            ok = np.flatnonzero(np.abs(terms) < 1e-13)
        if ok.size:
            j = int(ok[0])
            total += float(terms[:j].sum())
            m = idx[j]
            if not boundary:
                err = float(tail[j])
            elif terms[j] != 0.0:
                err = float(terms[j]) * m / p
            break
        total += float(terms.sum())
        coef = float(coefs[-1])
        n += chunk
        if n >= cap:
            err = float(terms[-1]) * n / p
            break
    value = total ** (1.0 / p)
    if full_output:
        return value, float(value * err / (p * total))
    return value


def quadratic_quasinorm_p(lam: float, p: float, spec: QuadratureSpec | None = None) -> float:
    """Circle mean of (1 + 2 lam cos t)^p, i.e. ||(lam, 1, lam)||_{H^p}^p."""
    if abs(lam) >= 0.5:
        raise DomainError(f"need |lam| < 1/2 for a positive integrand, got {lam}")
    if not 0 < p < 1:
        raise DomainError(f"need 0 < p < 1, got {p}")
    return circle_mean(lambda t: (1.0 + 2.0 * lam * np.cos(t)) ** p, spec)
