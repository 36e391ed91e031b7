"""Exact rational coefficients of log J_nu (small k) and log I_nu (large k).

With z = k^2 the normalised power series of J_nu is

    J_nu(k) (2/k)^nu Gamma(nu+1) = sum_l (-1)^l z^l / (4^l l! (nu+1)_l),

and with w = 1/k the large-argument series of I_nu is

    I_nu(k) sqrt(2 pi k) e^-k ~ sum_l (-1)^l w^l R_l(nu) / (2^l l!),

where R_l(nu) = Gamma(nu+1/2+l)/Gamma(nu+1/2-l) is expanded as the finite
product (nu+1/2-l)(nu+3/2-l)...(nu-1/2+l). The product stays finite at the
half-integers where the Gamma quotient is 0/0 or inf/inf.

Taking the formal logarithm of each series gives the coefficients g_l and
h_j. Everything here is exact ``Fraction`` arithmetic.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError
from .bessel import bessel_order


class SeriesKind(enum.Enum):
    LOG_J_SMALL_K = "log_j_small_k"
    LOG_I_LARGE_K = "log_i_large_k"


@dataclass(frozen=True)
class RationalSeries:
    """Coefficients c_1..c_L of a log-series; ``coeffs[0]`` holds c_1.

    For ``LOG_J_SMALL_K`` the series variable is k^2 (c_l = g_l), for
    ``LOG_I_LARGE_K`` it is 1/k (c_j = h_j).
    """

    order: Fraction
    kind: SeriesKind
    coeffs: tuple

    def coefficient(self, index):
        if index < 1 or index > len(self.coeffs):
            raise IndexError(f"coefficient {index} outside 1..{len(self.coeffs)}")
        return self.coeffs[index - 1]

    def evaluate(self, k):
        """Float value of the truncated sum at argument k."""
        k = float(k)
        var = k * k if self.kind is SeriesKind.LOG_J_SMALL_K else 1.0 / k
        total = 0.0
        for c in reversed(self.coeffs):
            total = (total + float(c)) * var
        return total


def formal_log(a):
    """Coefficients b_1..b_n of log(1 + a_1 x + ... + a_n x^n).

    ``a`` lists a_0..a_n with a_0 = 1. Uses l a_l = sum_{j=1}^{l} j b_j a_{l-j}.
    """
    if a[0] != 1:
        raise ValueError("formal_log needs a constant term of 1")
    n = len(a) - 1
    b = [Fraction(0)] * (n + 1)
    for l in range(1, n + 1):
        acc = Fraction(l) * a[l]
        for j in range(1, l):
            acc -= j * b[j] * a[l - j]
        b[l] = acc / l
    return b[1:]


def formal_exp(b):
    """Coefficients a_0..a_n of exp(b_1 x + ... + b_n x^n); inverse of formal_log."""
    n = len(b)
    bb = [Fraction(0)] + list(b)
    a = [Fraction(1)] + [Fraction(0)] * n
    for l in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, l + 1):
            acc += j * bb[j] * a[l - j]
        a[l] = acc / l
    return a


def j_series_coeffs(order, max_order):
    """a_0..a_L of the normalised J_nu power series in z = k^2."""
    nu = bessel_order(order)
    a = [Fraction(1)]
    for l in range(1, max_order + 1):
        a.append(-a[-1] / (4 * l * (nu + l)))
    return a


def reflection_product(order, l):
    """Gamma(nu+1/2+l)/Gamma(nu+1/2-l) as the exact product of 2l factors."""
    nu = bessel_order(order)
    out = Fraction(1)
    start = nu + Fraction(1, 2) - l
    for i in range(2 * l):
        out *= start + i
    return out


def i_asymptotic_coeffs(order, max_order):
    """c_0..c_J of the large-k series of I_nu in w = 1/k (c_0 = 1)."""
    nu = bessel_order(order)
    c = [Fraction(1)]
    fact = 1
    for l in range(1, max_order + 1):
        fact *= l
        c.append(Fraction((-1) ** l, 2 ** l * fact) * reflection_product(nu, l))
    return c


def _check_max(max_order):
    if int(max_order) != max_order or max_order < 1:
        raise DomainError(f"series order must be a positive integer, got {max_order!r}")
    return int(max_order)


def log_j_small_k_coeffs(order, max_order):
    """g_1..g_L with log J_nu(k) = nu log k - log(2^nu Gamma(nu+1)) + sum g_l k^(2l)."""
    nu = bessel_order(order)
    L = _check_max(max_order)
    g = formal_log(j_series_coeffs(nu, L))
    return RationalSeries(order=nu, kind=SeriesKind.LOG_J_SMALL_K, coeffs=tuple(g))


def log_i_large_k_coeffs(order, max_order):
    """h_1..h_J with log I_nu(k) ~ k - log(2 pi k)/2 + sum h_j k^(-j)."""
    nu = bessel_order(order)
    J = _check_max(max_order)
    h = formal_log(i_asymptotic_coeffs(nu, J))
    return RationalSeries(order=nu, kind=SeriesKind.LOG_I_LARGE_K, coeffs=tuple(h))
