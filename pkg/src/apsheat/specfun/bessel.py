"""Bessel functions J_nu(x) and I_nu(x) for real order nu >= 0 and x >= 0.

Evaluation regimes for J_nu(x):

* ``x <= max(SERIES_MAX_X, nu)``: ascending power series, accumulated in
  double-double arithmetic. The alternating series loses at most
  ``log10(I_nu(x)/|J_nu(x)|)`` digits, which stays below 14 inside this
  region, so the double-double sum still rounds to a correct double.
* otherwise: Hankel's large-argument expansion at the two orders
  ``frac(nu)`` and ``frac(nu) + 1`` (both below 2, so the expansion converges
  to machine precision for x > 25), followed by upward three-term recurrence.
  Upward recurrence is stable here because every intermediate order is
  smaller than x.

I_nu(x) uses the same series (no cancellation, rescaled by powers of two to
stay in range) up to x = 720, beyond which I_nu overflows for every order in
the supported range; log I_nu switches there to the large-x expansion, or to
a log-domain series when that expansion does not converge (large nu).
"""

import math
from fractions import Fraction

from ..errors import BesselOverflowError, DomainError, NumericalFailure
from ._ddouble import dd_add, dd_div, dd_from_fraction, dd_mul, two_prod

SERIES_MAX_X = 25.0
I_SERIES_MAX_X = 720.0
_LOG_DBL_MAX = math.log(1.7976931348623157e308)
_MAX_TERMS = 4000
_RESCALE = 2.0**512


def bessel_order(value):
    """Validate and convert an order to an exact non-negative rational.

    Accepts ints, Fractions, decimal strings such as ``"1/2"`` or ``"1.5"``,
    and floats (converted exactly).
    """
    if isinstance(value, Fraction):
        nu = value
    elif isinstance(value, (int, str)):
        nu = Fraction(value)
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"order must be finite, got {value!r}")
        nu = Fraction(value)
    else:
        nu = Fraction(value)
    if nu < 0:
        raise DomainError(f"negative Bessel order {nu} is not supported")
    return nu


def _check_argument(x):
    x = float(x)
    if not x >= 0.0 or math.isinf(x):
        raise DomainError(f"Bessel argument must be finite and >= 0, got {x!r}")
    return x


def _series_sum(nu, x, alternating):
    """sum_l (-+1)^l (x/2)^(2l) / (l! (nu+1)_l) as ``(value, e2)``.

    The true sum is ``value * 2**e2``; running values are rescaled by 2**-512
    whenever they grow past 2**512 so the error-free product never overflows.
    """
    half = x / 2.0
    q = two_prod(half, half)
    if alternating:
        q = (-q[0], -q[1])
    nu_dd = dd_from_fraction(nu)
    nu_f = float(nu)
    qabs = half * half
    term = (1.0, 0.0)
    total = (1.0, 0.0)
    peak = 1.0
    e2 = 0
    for l in range(1, _MAX_TERMS):
        denom = dd_mul((float(l), 0.0), dd_add(nu_dd, (float(l), 0.0)))
        term = dd_mul(term, dd_div(q, denom))
        total = dd_add(total, term)
        size = abs(term[0])
        if size > _RESCALE:
            term = (term[0] / _RESCALE, term[1] / _RESCALE)
            total = (total[0] / _RESCALE, total[1] / _RESCALE)
            peak /= _RESCALE
            size /= _RESCALE
            e2 += 512
        if size > peak:
            peak = size
        if l * (l + nu_f) > qabs and size <= 1e-34 * peak:
            return total[0] + total[1], e2
    raise NumericalFailure(f"power series did not converge (nu={nu}, x={x})")


def _log_prefactor(nu, x):
    return float(nu) * math.log(x / 2.0) - math.lgamma(float(nu) + 1.0)


def _prefactor(nu, x):
    """(x/2)^nu / Gamma(nu+1), falling back to logs outside double range."""
    nu_f = float(nu)
    if nu_f == 0.0:
        return 1.0
    try:
        num = (x / 2.0) ** nu_f
        den = math.gamma(nu_f + 1.0)
    except OverflowError:
        return math.exp(_log_prefactor(nu, x))
    if num == 0.0 or math.isinf(num) or num < 1e-290:
        return math.exp(_log_prefactor(nu, x))
    return num / den


def _hankel_j(mu, x):
    """J_mu(x) from the large-argument expansion; mu < 2 and x > 25."""
    m4 = 4.0 * mu * mu
    p, q = 1.0, 0.0
    a = 1.0
    prev = math.inf
    for k in range(1, 200):
        a *= (m4 - (2 * k - 1) ** 2) / (8.0 * k * x)
        size = abs(a)
        if size > prev:
            raise NumericalFailure(f"Hankel expansion diverged (mu={mu}, x={x})")
        prev = size
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q += sign * a
        else:
            p += sign * a
        if size < 1e-18:
            break
    # cos/sin of (x - c) via the addition theorem keeps the phase exact for
    # large x; a direct subtraction would lose ulp(x) of absolute phase.
    c = (0.5 * mu + 0.25) * math.pi
    cx, sx = math.cos(x), math.sin(x)
    cc, sc = math.cos(c), math.sin(c)
    cos_chi = cx * cc + sx * sc
    sin_chi = sx * cc - cx * sc
    return math.sqrt(2.0 / (math.pi * x)) * (p * cos_chi - q * sin_chi)


def bessel_j(order, x):
    """Bessel function of the first kind J_nu(x)."""
    nu = bessel_order(order)
    x = _check_argument(x)
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    if x <= max(SERIES_MAX_X, float(nu)):
        value, _ = _series_sum(nu, x, alternating=True)
        return _prefactor(nu, x) * value
    n = math.floor(nu)
    mu = float(nu - n)
    j_prev = _hankel_j(mu, x)
    if n == 0:
        return j_prev
    j_cur = _hankel_j(mu + 1.0, x)
    for k in range(1, n):
        j_prev, j_cur = j_cur, (2.0 * (mu + k) / x) * j_cur - j_prev
    return j_cur


def bessel_j_derivative(order, x):
    """J_nu'(x) = (nu/x) J_nu(x) - J_{nu+1}(x); at x = 0 the series limit."""
    nu = bessel_order(order)
    x = _check_argument(x)
    if x == 0.0:
        if nu == 1:
            return 0.5
        return math.inf if 0 < nu < 1 else 0.0
    return float(nu) / x * bessel_j(nu, x) - bessel_j(nu + 1, x)


def _log_i_asymptotic(nu, x):
    m4 = 4.0 * float(nu) ** 2
    total = 1.0
    a = 1.0
    prev = math.inf
    for k in range(1, 200):
        a *= -(m4 - (2 * k - 1) ** 2) / (8.0 * k * x)
        size = abs(a)
        if size > prev:
            raise NumericalFailure(
                f"large-argument expansion of I_nu diverged (nu={nu}, x={x})"
            )
        prev = size
        total += a
        if size < 1e-18:
            break
    return x - 0.5 * math.log(2.0 * math.pi * x) + math.log(total)


def _log_series_positive(nu, x):
    """log of the I_nu series by log-domain accumulation; used past the
    double-double range when the asymptotic expansion does not converge."""
    log_q = 2.0 * math.log(x / 2.0)
    nu_f = float(nu)
    logs = [0.0]
    log_t = 0.0
    qabs = (x / 2.0) ** 2
    for l in range(1, 20 * _MAX_TERMS):
        log_t += log_q - math.log(l) - math.log(nu_f + l)
        logs.append(log_t)
        if l * (l + nu_f) > qabs and log_t < max(logs) - 80.0:
            top = max(logs)
            return top + math.log(math.fsum(math.exp(v - top) for v in logs))
    raise NumericalFailure(f"power series did not converge (nu={nu}, x={x})")


def _log_i_large(nu, x):
    try:
        return _log_i_asymptotic(nu, x)
    except NumericalFailure:
        return _log_prefactor(nu, x) + _log_series_positive(nu, x)


def log_bessel_i(order, x):
    """Natural logarithm of the modified Bessel function I_nu(x), x > 0."""
    nu = bessel_order(order)
    x = _check_argument(x)
    if x == 0.0:
        if nu == 0:
            return 0.0
        raise DomainError("log I_nu(0) is -inf for nu > 0")
    if x <= I_SERIES_MAX_X:
        value, e2 = _series_sum(nu, x, alternating=False)
        return _log_prefactor(nu, x) + math.log(value) + e2 * math.log(2.0)
    return _log_i_large(nu, x)


def bessel_i(order, x):
    """Modified Bessel function of the first kind I_nu(x).

    Raises :class:`BesselOverflowError` when the value exceeds the double range.
    """
    nu = bessel_order(order)
    x = _check_argument(x)
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    if x <= I_SERIES_MAX_X:
        value, e2 = _series_sum(nu, x, alternating=False)
        log_value = _log_prefactor(nu, x) + math.log(value) + e2 * math.log(2.0)
        if log_value > _LOG_DBL_MAX:
            raise BesselOverflowError(f"I_{nu}({x}) overflows double precision")
        pre = _prefactor(nu, x)
        if pre == 0.0 or math.isinf(pre):
            return math.exp(log_value)
        return math.ldexp(pre * value, e2)
    log_value = _log_i_large(nu, x)
    if log_value > _LOG_DBL_MAX:
        raise BesselOverflowError(f"I_{nu}({x}) overflows double precision")
    return math.exp(log_value)
