"""Positive zeros of J_nu and power sums over them."""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy.special import zeta as hurwitz_zeta

from ..errors import BracketError, DomainError, NumericalFailure
from .bessel import bessel_j, bessel_order

RESIDUAL_LIMIT = 1e-12
_SCAN_STEP = 0.5
# consecutive zeros of J_nu (nu >= 0) are never closer than this
_MIN_GAP = 2.0


@dataclass(frozen=True)
class ZeroList:
    order: Fraction
    zeros: tuple
    residual_bound: float

    def __len__(self):
        return len(self.zeros)

    def __getitem__(self, index):
        return self.zeros[index]


def mcmahon_guess(order, k):
    """Three-term McMahon approximation of the k-th positive zero of J_nu.

    Returns ``(guess, size_of_last_term)``; the second value is a cheap
    reliability indicator.
    """
    nu = float(order)
    beta = (k + nu / 2.0 - 0.25) * math.pi
    m = 4.0 * nu * nu
    t1 = (m - 1.0) / (8.0 * beta)
    t2 = 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * (8.0 * beta) ** 3)
    return beta - t1 - t2, abs(t2)


def _sign(v):
    return 1 if v > 0 else (-1 if v < 0 else 0)


def _scan_bracket(nu, start, expected, index, limit):
    a = start
    fa = bessel_j(nu, a)
    if _sign(fa) != expected:
        raise BracketError(f"zero {index} of J_{nu}: lost sign pattern at x={a}", index)
    while a < limit:
        b = a + _SCAN_STEP
        fb = bessel_j(nu, b)
        if _sign(fb) != expected:
            return a, b, fa, fb
        a, fa = b, fb
    raise BracketError(f"zero {index} of J_{nu}: no sign change before x={limit}", index)


def _refine(nu, lo, hi, flo, index):
    """Bisection to width 1e-3, then Newton kept inside the bracket."""
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        fmid = bessel_j(nu, mid)
        if fmid == 0.0:
            return mid
        if _sign(fmid) == _sign(flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    nu_f = float(nu)
    for _ in range(60):
        fx = bessel_j(nu, x)
        if fx == 0.0:
            return x
        if _sign(fx) == _sign(flo):
            lo, flo = x, fx
        else:
            hi = x
        dfx = nu_f / x * fx - bessel_j(nu + 1, x)
        step = fx / dfx if dfx != 0.0 else math.inf
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 2.0 * math.ulp(x):
            return x_new
        x = x_new
    raise NumericalFailure(f"zero {index} of J_{nu}: Newton iteration did not settle")


@lru_cache(maxsize=64)
def _zeros_cached(nu, count):
    zeros = []
    residual = 0.0
    prev = 0.0
    for k in range(1, count + 1):
        expected = 1 if k % 2 else -1
        guess, last_term = mcmahon_guess(nu, k)
        bracket = None
        if last_term < 0.1:
            lo = max(guess - math.pi / 2.0, prev + _MIN_GAP if k > 1 else 1e-3)
            hi = guess + math.pi / 2.0
            flo, fhi = bessel_j(nu, lo), bessel_j(nu, hi)
            if _sign(flo) == expected and _sign(fhi) == -expected:
                bracket = (lo, hi, flo, fhi)
        if bracket is None:
            if k == 1:
                start = max(math.sqrt(float(nu) * (float(nu) + 2.0)), 0.5)
            else:
                start = prev + _MIN_GAP
            bracket = _scan_bracket(nu, start, expected, k, start + 10.0 * math.pi)
        lo, hi, flo, _ = bracket
        root = _refine(nu, lo, hi, flo, k)
        if root <= prev:
            raise BracketError(f"zero {k} of J_{nu} is not above zero {k - 1}", k)
        residual = max(residual, abs(bessel_j(nu, root)))
        zeros.append(root)
        prev = root
    if residual > RESIDUAL_LIMIT:
        raise NumericalFailure(f"zeros of J_{nu}: residual {residual:.3g} exceeds limit")
    return tuple(zeros), residual


def bessel_j_zeros(order, count):
    """First ``count`` positive zeros of J_nu, strictly increasing.

    Each zero starts from a McMahon bracket of half-width pi/2 when the
    McMahon expansion is trustworthy, otherwise from a forward sign-change
    scan behind the previous zero; it is then refined by bisection and a
    bracketed Newton iteration.
    """
    nu = bessel_order(order)
    if int(count) != count or count < 1:
        raise DomainError(f"zero count must be a positive integer, got {count!r}")
    zeros, residual = _zeros_cached(nu, int(count))
    return ZeroList(order=nu, zeros=zeros, residual_bound=residual)


def mcmahon_tail_sum(order, count, power, terms=3):
    """Asymptotic value of sum_{k > count} j_{nu,k}^(-power).

    Uses the McMahon form of the zeros expanded to relative order beta^-4
    and sums each power of beta_k = pi (k + nu/2 - 1/4) exactly as a Hurwitz
    zeta value. The neglected remainder is O(count^(1 - power - 6)).
    ``terms`` < 3 drops the trailing corrections (used for error estimates).
    """
    nu = float(order)
    p = float(power)
    m = 4.0 * nu * nu
    a = (m - 1.0) / 8.0
    b = (m - 1.0) * (7.0 * m - 31.0) / 384.0
    shift = count + 1 + nu / 2.0 - 0.25

    def beta_sum(s):
        return math.pi ** (-s) * float(hurwitz_zeta(s, shift))

    parts = [
        lambda: beta_sum(p),
        lambda: p * a * beta_sum(p + 2.0),
        lambda: (p * b + 0.5 * p * (p + 1.0) * a * a) * beta_sum(p + 4.0),
    ]
    return sum(part() for part in parts[:terms])


def rayleigh_sum(order, count=300):
    """sum_k j_{nu,k}^-2 from ``count`` computed zeros plus the McMahon tail."""
    zl = bessel_j_zeros(order, count)
    head = math.fsum(z ** -2 for z in zl.zeros)
    return head + mcmahon_tail_sum(zl.order, count, 2)
