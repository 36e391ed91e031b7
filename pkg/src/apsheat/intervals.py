"""Spectral data of -d^2/dx^2 on [0, 1] for the initial temperature f = 1.

Dirichlet: u = sin(k pi x), lambda = k^2 pi^2, w = 8/(k pi)^2 for odd k.

Robin: B = d/dn + S with the inward normal derivative, so B u = 0 reads
u'(0) + S u(0) = 0 and -u'(1) + S u(1) = 0. For S > 0 the symmetric sector
has exactly one negative eigenvalue (the Rayleigh quotient of u = 1 is
-2S), so the heat content grows at small t.

Modes antisymmetric about x = 1/2 are orthogonal to f = 1 and carry zero
weight, so only the symmetric sector is stored:

    u = cosh(kappa (x - 1/2)),  kappa tanh(kappa/2) = S,  lambda = -kappa^2
    u = cos(mu (x - 1/2)),      mu tan(mu/2) = -S,        lambda = mu^2

and w = (int u)^2 / ||u||^2 with int u = (2/mu) sin(mu/2),
||u||^2 = 1/2 + sin(mu)/(2 mu) (hyperbolic analogues for kappa).
"""

import math

import numpy as np
from scipy.optimize import brentq

from .errors import BracketError, DomainError
from .spectrum import SpectralData, TailBound


def dirichlet_interval_spectrum(count=400):
    """lambda_k = (k pi)^2 for k = 1..count, w_k = 8/(k pi)^2 for odd k, else 0."""
    if int(count) != count or count < 1:
        raise DomainError(f"mode count must be a positive integer, got {count!r}")
    k = np.arange(1, int(count) + 1, dtype=float)
    mu = k * math.pi
    weights = np.where(k % 2 == 1, 8.0 / mu**2, 0.0)
    return SpectralData(
        eigenvalues=mu**2,
        weights=weights,
        tail=TailBound(amplitude=8.0, power=2.0),
        label="dirichlet interval",
        function_pair=("1", "1"),
        satisfies_boundary_condition=False,
    )


def _negative_root(S):
    g = lambda kappa: kappa * math.tanh(0.5 * kappa) - S
    hi = 1.0
    while g(hi) <= 0.0:
        hi *= 2.0
        if hi > 1e6:
            raise BracketError(f"no negative Robin eigenvalue bracket for S={S}", 0)
    return brentq(g, 0.0, hi, xtol=1e-15, rtol=4.0 * np.finfo(float).eps, maxiter=200)


def _positive_root(S, j):
    # mu = 2y with y + arctan(S/(2y)) = j pi; the root lies in (j pi - pi/2, j pi)
    target = j * math.pi
    g = lambda y: (y - target) + math.atan(S / (2.0 * y))
    lo, hi = target - 0.5 * math.pi, target
    glo, ghi = g(lo), g(hi)
    if not (glo < 0.0 < ghi):
        raise BracketError(f"Robin root {j} (S={S}) not bracketed in [{lo}, {hi}]", j)
    y = brentq(g, lo, hi, xtol=1e-15, rtol=4.0 * np.finfo(float).eps, maxiter=200)
    return 2.0 * y


def robin_interval_spectrum(S, count=400):
    """Symmetric-sector spectrum of the Robin problem; S = 0 gives Neumann."""
    S = float(S)
    if not (S >= 0.0 and math.isfinite(S)):
        raise DomainError(f"Robin parameter must be finite and >= 0, got {S!r}")
    if int(count) != count or count < 1:
        raise DomainError(f"mode count must be a positive integer, got {count!r}")
    if S == 0.0:
        # only the constant eigenfunction overlaps f = 1
        return SpectralData(
            eigenvalues=[0.0],
            weights=[1.0],
            tail=TailBound(amplitude=0.0, power=2.0),
            label="neumann interval",
            function_pair=("1", "1"),
            satisfies_boundary_condition=True,
            meta={"S": 0.0},
        )
    kappa = _negative_root(S)
    lam = [-kappa * kappa]
    w = [(2.0 / kappa * math.sinh(0.5 * kappa)) ** 2 / (0.5 + math.sinh(kappa) / (2.0 * kappa))]
    for j in range(1, int(count)):
        mu = _positive_root(S, j)
        lam.append(mu * mu)
        w.append((2.0 / mu * math.sin(0.5 * mu)) ** 2 / (0.5 + math.sin(mu) / (2.0 * mu)))
    mu_last = math.sqrt(lam[-1])
    # sin^2(mu/2) = S^2/(mu^2+S^2) on the root set, so w <= 8 S^2 mu^-4 / (1 - 1/mu);
    # index k = j + 1 holds mu_j >= 2 pi (j - 1/2) = 2 pi (k - 3/2)
    tail = TailBound(
        amplitude=8.0 * S * S / (1.0 - 1.0 / mu_last),
        power=4.0,
        slope=2.0 * math.pi,
        offset=-1.5,
    )
    return SpectralData(
        eigenvalues=lam,
        weights=w,
        tail=tail,
        label=f"robin interval S={S!r}",
        function_pair=("1", "1"),
        satisfies_boundary_condition=False,
        meta={"S": S},
    )
