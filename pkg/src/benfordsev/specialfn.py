"""Scalar special functions backing every probability computed by this package.

Everything here is a pure function of its arguments, works in plain 64-bit
floats, and is safe for concurrent use.
"""

from __future__ import annotations

import math

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Coefficients of Acklam's rational approximation to the normal quantile.
_ACKLAM_A = (-3.969683028665376e+01, 2.209460984245205e+02,
             -2.759285104469687e+02, 1.383577518672690e+02,
             -3.066479806614716e+01, 2.506628277459239e+00)
_ACKLAM_B = (-5.447609879822406e+01, 1.615858368580409e+02,
             -1.556989798598866e+02, 6.680131188771972e+01,
             -1.328068155288572e+01)
_ACKLAM_C = (-7.784894002430293e-03, -3.223964580411365e-01,
             -2.400758277161838e+00, -2.549732539343734e+00,
             4.374664141464968e+00, 2.938163982698783e+00)
_ACKLAM_D = (7.784695709041462e-03, 3.224671290700398e-01,
             2.445134137142996e+00, 3.754408661907416e+00)


def std_normal_cdf(x: float) -> float:
    """Standard normal CDF.

    Computed from erfc so that both tails keep full absolute accuracy;
    saturates to exactly 0.0 / 1.0 far out in the tails.
    """
    return 0.5 * math.erfc(-x / _SQRT2)


def std_normal_quantile(p: float) -> float:
    """Inverse of std_normal_cdf, accurate to well below 1e-9.

    Raises ValueError unless 0 < p < 1.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile requires 0 < p < 1, got {p!r}")

    # Rational initial estimate (Acklam), then one Halley correction.
    p_low = 0.02425
    if p < p_low:
        q = math.sqrt(-2.0 * math.log(p))
        x = ((((((_ACKLAM_C[0] * q + _ACKLAM_C[1]) * q + _ACKLAM_C[2]) * q
                + _ACKLAM_C[3]) * q + _ACKLAM_C[4]) * q + _ACKLAM_C[5])
             / ((((_ACKLAM_D[0] * q + _ACKLAM_D[1]) * q + _ACKLAM_D[2]) * q
                 + _ACKLAM_D[3]) * q + 1.0))
    elif p <= 1.0 - p_low:
        q = p - 0.5
        r = q * q
        x = ((((((_ACKLAM_A[0] * r + _ACKLAM_A[1]) * r + _ACKLAM_A[2]) * r
                + _ACKLAM_A[3]) * r + _ACKLAM_A[4]) * r + _ACKLAM_A[5]) * q
             / (((((_ACKLAM_B[0] * r + _ACKLAM_B[1]) * r + _ACKLAM_B[2]) * r
                  + _ACKLAM_B[3]) * r + _ACKLAM_B[4]) * r + 1.0))
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        x = -((((((_ACKLAM_C[0] * q + _ACKLAM_C[1]) * q + _ACKLAM_C[2]) * q
                 + _ACKLAM_C[3]) * q + _ACKLAM_C[4]) * q + _ACKLAM_C[5])
              / ((((_ACKLAM_D[0] * q + _ACKLAM_D[1]) * q + _ACKLAM_D[2]) * q
                  + _ACKLAM_D[3]) * q + 1.0))

    # Halley step; skipped only where exp(x^2/2) would overflow, far beyond
    # any probability representable with meaningful precision.
    if x * x < 1400.0:
        err = std_normal_cdf(x) - p
        u = err * _SQRT_2PI * math.exp(0.5 * x * x)
        x -= u / (1.0 + 0.5 * x * u)
    return x


def regularized_lower_gamma(s: float, x: float) -> float:
    """Regularized lower incomplete gamma P(s, x) for s > 0, x >= 0."""
    if s <= 0.0:
        raise ValueError(f"shape parameter must be positive, got {s!r}")
    if x < 0.0:
        raise ValueError(f"argument must be nonnegative, got {x!r}")
    if x == 0.0:
        return 0.0
    if x < s + 1.0:
        return _lower_gamma_series(s, x)
    return 1.0 - _upper_gamma_cf(s, x)


def _lower_gamma_series(s: float, x: float) -> float:
    # Power series for P(s, x); converges quickly for x < s + 1.
    ap = s
    term = 1.0 / s
    total = term
    for _ in range(10000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-17:
            break
    else:
        raise ArithmeticError("lower gamma series failed to converge")
    val = total * math.exp(-x + s * math.log(x) - math.lgamma(s))
    return min(val, 1.0)


def _upper_gamma_cf(s: float, x: float) -> float:
    # Modified Lentz evaluation of the continued fraction for Q(s, x),
    # valid for x >= s + 1.
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    else:
        raise ArithmeticError("upper gamma continued fraction failed to converge")
    return h * math.exp(-x + s * math.log(x) - math.lgamma(s))


def _check_df(df: int) -> int:
    if isinstance(df, bool) or df != int(df) or df < 1:
        raise ValueError(f"degrees of freedom must be a positive integer, got {df!r}")
    return int(df)


def central_chi2_cdf(x: float, df: int) -> float:
    """Chi-square CDF with integer degrees of freedom."""
    df = _check_df(df)
    return regularized_lower_gamma(df / 2.0, x / 2.0)


def noncentral_chi2_cdf(x: float, df: int, lam: float) -> float:
    """Noncentral chi-square CDF via its Poisson mixture of central CDFs.

    The mixture is summed outward from the modal Poisson index floor(lam/2)
    so that no weight underflows for large noncentrality; summation stops
    once the neglected Poisson mass is below 1e-12.
    """
    df = _check_df(df)
    if lam < 0.0:
        raise ValueError(f"noncentrality must be nonnegative, got {lam!r}")
    if x < 0.0:
        raise ValueError(f"argument must be nonnegative, got {x!r}")
    if lam == 0.0:
        return central_chi2_cdf(x, df)

    a = df / 2.0
    y = x / 2.0
    h = lam / 2.0
    m = int(h)
    if y == 0.0:  # covers x = 0 and x so small that x/2 underflows
        return 0.0

    # Values at the modal index: Poisson weight w_m, central CDF c_m,
    # and the stepping term t(s) = y^s e^{-y} / Gamma(s+1), which links
    # neighbouring CDFs through P(s+1, y) = P(s, y) - t(s).  The stepping
    # term is carried in log form: it is bounded by 1 but its ratio to the
    # neighbouring term, (a+j)/y, can overflow for extreme arguments.
    log_y = math.log(y)
    w_m = math.exp(m * math.log(h) - h - math.lgamma(m + 1.0))
    c_m = regularized_lower_gamma(a + m, y)
    log_t_m = (a + m) * log_y - y - math.lgamma(a + m + 1.0)

    total = w_m * c_m
    tail_budget = 0.5e-12

    # Upward pass: j = m+1, m+2, ...  Weights decrease geometrically here.
    w, c, log_t, j = w_m, c_m, log_t_m, m
    while True:
        w *= h / (j + 1.0)
        c = max(c - math.exp(log_t), 0.0)
        j += 1
        log_t += log_y - math.log(a + j)
        total += w * c
        ratio = h / (j + 2.0)
        if ratio < 1.0 and w * ratio / (1.0 - ratio) < tail_budget:
            break
        if w == 0.0:
            break

    # Downward pass: j = m-1, ..., 0.  Weights also decrease leaving the mode.
    w, c, log_t, j = w_m, c_m, log_t_m, m
    while j > 0:
        log_t += math.log(a + j) - log_y
        c = min(c + math.exp(log_t), 1.0)
        w *= j / h
        j -= 1
        total += w * c
        if j >= 1:
            ratio = j / h
            if ratio < 1.0 and w * ratio / (1.0 - ratio) < tail_budget:
                break
        if w == 0.0:
            break

    return min(max(total, 0.0), 1.0)
