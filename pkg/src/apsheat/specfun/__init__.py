"""Bessel functions, their zeros, and exact log-series coefficients."""

from .bessel import (
    SERIES_MAX_X,
    bessel_i,
    bessel_j,
    bessel_j_derivative,
    bessel_order,
    log_bessel_i,
)
from .series import (
    RationalSeries,
    SeriesKind,
    formal_exp,
    formal_log,
    log_i_large_k_coeffs,
    log_j_small_k_coeffs,
)
from .zeros import ZeroList, bessel_j_zeros, mcmahon_guess, mcmahon_tail_sum, rayleigh_sum

__all__ = [
    "SERIES_MAX_X",
    "RationalSeries",
    "SeriesKind",
    "ZeroList",
    "bessel_i",
    "bessel_j",
    "bessel_j_derivative",
    "bessel_j_zeros",
    "bessel_order",
    "formal_exp",
    "formal_log",
    "log_bessel_i",
    "log_i_large_k_coeffs",
    "log_j_small_k_coeffs",
    "mcmahon_guess",
    "mcmahon_tail_sum",
    "rayleigh_sum",
]
