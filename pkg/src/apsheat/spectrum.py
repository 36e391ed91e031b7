"""Spectral data (eigenvalues and mode weights) with a certified tail model."""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class TailBound:
    """Majorant for the modes beyond the stored ones.

    For every k > count: sqrt(lambda_k) >= slope * (k + offset) and
    |w_k| <= amplitude * sqrt(lambda_k) ** -power.
    """

    amplitude: float
    power: float
    slope: float = math.pi
    offset: float = 0.0

    def bound(self, t, count):
        """Upper bound on sum_{k > count} |w_k| exp(-t lambda_k).

        The summand is decreasing in k, so the sum is below the integral from
        ``count`` to infinity; the integral is bounded through
        y^-power <= Y^-power on [Y, inf) and an erfc.
        """
        if self.amplitude == 0.0:
            return 0.0
        y0 = self.slope * (count + self.offset)
        if y0 <= 0.0:
            return math.inf
        gauss = math.sqrt(math.pi) / (2.0 * math.sqrt(t)) * math.erfc(math.sqrt(t) * y0)
        return self.amplitude / self.slope * y0 ** (-self.power) * gauss

    def required_count(self, t, tol):
        """Smallest stored-mode count whose tail bound at t is <= tol."""
        lo = max(1, math.ceil(1.0 - self.offset))
        if self.bound(t, lo) <= tol:
            return lo
        hi = 2 * lo
        while self.bound(t, hi) > tol:
            hi *= 2
            if hi > 1 << 40:
                raise DomainError(f"no finite mode count reaches tol={tol} at t={t}")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.bound(t, mid) <= tol:
                hi = mid
            else:
                lo = mid
        return hi

    def scaled(self, c, m):
        # mu -> mu / c, w -> c^m w
        return TailBound(
            amplitude=self.amplitude * c ** (m - self.power),
            power=self.power,
            slope=self.slope / c,
            offset=self.offset,
        )


def _frozen_array(values):
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues lambda_k (ascending) and weights w_k = sigma_k(f1) sigma_k(f2)."""

    eigenvalues: np.ndarray
    weights: np.ndarray
    tail: TailBound
    label: str
    setup: object = None
    function_pair: tuple = ()
    satisfies_boundary_condition: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        lam = _frozen_array(self.eigenvalues)
        w = _frozen_array(self.weights)
        if lam.shape != w.shape or lam.ndim != 1:
            raise DomainError("eigenvalues and weights must be 1-d and equally long")
        if lam.size and np.any(np.diff(lam) <= 0.0):
            raise DomainError("eigenvalues must be strictly increasing")
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "weights", w)

    @property
    def count(self):
        return int(self.eigenvalues.size)

    def scaled(self, c, m):
        """Data of c^-2 D: lambda -> lambda / c^2 and w -> c^m w."""
        if not c > 0:
            raise DomainError("scale factor must be positive")
        return replace(
            self,
            eigenvalues=self.eigenvalues / c**2,
            weights=self.weights * c**m,
            tail=self.tail.scaled(c, m),
            label=f"{self.label} scaled c={c!r}",
        )

    def derived(self):
        """Data of the pair (D f1, f2): weights lambda_k w_k."""
        if self.tail.power < 2.0:
            raise DomainError("weights decay too slowly for the (D f1, f2) pair to converge")
        return replace(
            self,
            weights=self.eigenvalues * self.weights,
            tail=TailBound(
                amplitude=self.tail.amplitude,
                power=self.tail.power - 2.0,
                slope=self.tail.slope,
                offset=self.tail.offset,
            ),
            label=f"{self.label} (D f1, f2)",
            satisfies_boundary_condition=False,
        )
