"""Scalar standard-normal machinery.

Density, distribution function, quantile, the isoperimetric function
I(a) = pdf(quantile(a)), the trimmed-ball radius r(a) = I(a)/a, and the
density-to-distribution ratio G(u) = pdf(u)/cdf(u) with its inverse.
Everything here is plain-float and measure-free; measure-level Gaussian
operations live in :mod:`liftzonoid.gaussian`.
"""

from __future__ import annotations

import math

from scipy.special import erfcx as _erfcx

from .errors import DomainError

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)

# Acklam's rational approximation to the normal quantile (central region
# and tails), accurate to ~1.15e-9 before refinement.
_ACKLAM_A = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_ACKLAM_B = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_ACKLAM_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_ACKLAM_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)
_ACKLAM_SPLIT = 0.02425


def normal_pdf(u: float) -> float:
    """Standard normal density at ``u``."""
    u = float(u)
    if math.isnan(u):
        raise DomainError("normal_pdf: argument is NaN")
    return math.exp(-0.5 * u * u) / _SQRT_2PI


def normal_cdf(u: float) -> float:
    """Standard normal distribution function, Phi(u)."""
    u = float(u)
    if math.isnan(u):
        raise DomainError("normal_cdf: argument is NaN")
    # complementary form avoids cancellation in the left tail
    return 0.5 * math.erfc(-u / _SQRT2)


def normal_sf(u: float) -> float:
    """Upper tail Phi(-u) = P(Z >= u), stable for large positive ``u``."""
    u = float(u)
    if math.isnan(u):
        raise DomainError("normal_sf: argument is NaN")
    return 0.5 * math.erfc(u / _SQRT2)


def _acklam(p: float) -> float:
    a, b, c, d = _ACKLAM_A, _ACKLAM_B, _ACKLAM_C, _ACKLAM_D
    if p < _ACKLAM_SPLIT:
        q = math.sqrt(-2.0 * math.log(p))
        num = ((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]
        den = (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        return num / den
    q = p - 0.5
    r = q * q
    num = ((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]
    den = ((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0
    return q * num / den


def normal_quantile(p: float) -> float:
    """Inverse of :func:`normal_cdf` on (0, 1).

    Rational initial approximation followed by one Halley step on
    Phi(x) - p; absolute error is far below 1e-12 across
    p in [1e-10, 1 - 1e-10].
    """
    p = float(p)
    if math.isnan(p) or p <= 0.0 or p >= 1.0:
        raise DomainError(f"normal_quantile: p={p!r} outside (0, 1)")
    if p > 0.5:
        # 1 - p is exact in IEEE arithmetic for p >= 0.5
        return -normal_quantile(1.0 - p)
    x = _acklam(p)
    pdf = normal_pdf(x)
    if pdf > 0.0:
        err = normal_cdf(x) - p
        t = err / pdf
        x -= t / (1.0 + 0.5 * x * t)
    return x


def isoperimetric(alpha: float) -> float:
    """Gauss isoperimetric function pdf(quantile(alpha)) on (0, 1].

    The endpoint alpha = 1 returns the limit value 0.
    """
    alpha = float(alpha)
    if math.isnan(alpha) or alpha <= 0.0 or alpha > 1.0:
        raise DomainError(f"isoperimetric: alpha={alpha!r} outside (0, 1]")
    if alpha == 1.0:
        return 0.0
    return normal_pdf(normal_quantile(alpha))


def radius(alpha: float) -> float:
    """Radius of the standard-Gaussian trimmed ball, isoperimetric(alpha)/alpha.

    Strictly decreasing on (0, 1]: grows like |quantile(alpha)| as
    alpha -> 0 and reaches 0 at alpha = 1, where the trimmed region
    collapses to the mean.
    """
    alpha = float(alpha)
    if math.isnan(alpha) or alpha <= 0.0 or alpha > 1.0:
        raise DomainError(f"radius: alpha={alpha!r} outside (0, 1]")
    return isoperimetric(alpha) / alpha


def g_ratio(u: float) -> float:
    """Ratio G(u) = pdf(u)/cdf(u), strictly decreasing from +inf to 0.

    For u <= 0 the ratio is evaluated through the scaled complementary
    error function, so there is no 0/0 underflow deep in the left tail.
    """
    u = float(u)
    if math.isnan(u):
        raise DomainError("g_ratio: argument is NaN")
    if u > 0.0:
        return normal_pdf(u) / normal_cdf(u)
    # pdf(u)/cdf(u) = sqrt(2/pi) / erfcx(-u/sqrt(2)) for u <= 0
    return _SQRT_2_OVER_PI / float(_erfcx(-u / _SQRT2))


def _g_ratio_derivative(u: float, g: float) -> float:
    # G'(u) = -u G(u) - G(u)^2
    return -u * g - g * g


def g_inverse(y: float, *, max_iterations: int = 120) -> float:
    """Inverse of :func:`g_ratio`: the u with pdf(u)/cdf(u) = y, y > 0.

    Safeguarded Newton iteration (derivative G' = -uG - G^2) inside a
    bracket seeded from the asymptotic inverse: G(u) ~ -u for u -> -inf
    and G(u) ~ pdf(u) for u -> +inf.
    """
    y = float(y)
    if math.isnan(y) or math.isinf(y) or y <= 0.0:
        raise DomainError(f"g_inverse: y={y!r} outside (0, inf)")
    # initial guess by regime
    if y >= 1.0:
        u = -y + 1.0 / y
    elif y < 0.2:
        u = math.sqrt(-2.0 * math.log(y * _SQRT_2PI))
    else:
        u = 0.0
    # establish a bracket [lo, hi] with G(lo) >= y >= G(hi)
    lo, hi = u - 0.5, u + 0.5
    width = 1.0
    while g_ratio(lo) < y:
        hi = lo
        lo -= width
        width *= 2.0
    width = 1.0
    while g_ratio(hi) > y:
        lo = hi
        hi += width
        width *= 2.0
    u = min(max(u, lo), hi)
    for _ in range(max_iterations):
        g = g_ratio(u)
        f = g - y
        if f > 0.0:
            lo = u
        else:
            hi = u
        step = f / _g_ratio_derivative(u, g)
        nxt = u - step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - u) <= 1e-15 * (1.0 + abs(nxt)):
            return nxt
        u = nxt
    return u
