"""Dirac Laplacian on the unit m-ball with spectral boundary conditions.

Spinors are written in the split form ``f = (a(r) Z, b(r) Z)`` with Z the
lowest spherical spinor (tangential Dirac eigenvalue theta = (m-1)/2, unit
L^2 norm on the sphere). On such spinors the Dirac operator acts as

    P f = (-i b'(r) Z, -i (a'(r) + (m-1) a(r)/r) Z),

the boundary projection keeps the lower component, and the spectral
condition reduces to J_{m/2-1}(mu) = 0 for the n = 0 radial modes, which are
the only ones the two test spinors see.

Test spinors:
    F1 = (0, Z)      with Pi F1 = F1
    F2 = (r Z, 0)    with Pi F2 = 0
"""

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DomainError, NumericalFailure
from .oracles import AnsatzInputs
from .specfun import bessel_j, bessel_j_zeros
from .spectrum import SpectralData, TailBound


@dataclass(frozen=True)
class BallSetup:
    m: int
    nu: Fraction = field(init=False)
    theta: Fraction = field(init=False)

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise DomainError(f"ball dimension must be an integer >= 2, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "nu", Fraction(self.m, 2) - 1)
        object.__setattr__(self, "theta", Fraction(self.m - 1, 2))


class TestFunctionId(enum.Enum):
    F1 = "f1"
    F2 = "f2"

    __test__ = False  # not a pytest class

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown test function {value!r}; use f1 or f2") from None


# radial profiles (upper a(r), lower b(r)) as integer coefficient lists in r
_PROFILES = {
    TestFunctionId.F1: ((0,), (1,)),
    TestFunctionId.F2: ((0, 1), (0,)),
}


def radial_profiles(f):
    a, b = _PROFILES[TestFunctionId.parse(f)]
    return Polynomial(a), Polynomial(b)


def build_spectral_data(setup, f, count):
    """Eigenvalues mu_k^2 and weights for the diagonal pair (f, f).

    F1 couples to both sign families with sigma = +-1/mu, so w = 2/mu^2.
    F2 has sigma = J_{m/2+1}(mu) / (mu J_{m/2}(mu)); at a zero of J_{m/2-1}
    the recurrence gives J_{m/2+1} = m J_{m/2} / mu, so w = 2 m^2 / mu^4.
    """
    f = TestFunctionId.parse(f)
    if int(count) != count or count < 1:
        raise DomainError(f"mode count must be a positive integer, got {count!r}")
    count = int(count)
    mu = np.array(bessel_j_zeros(setup.nu, count).zeros)
    nu = float(setup.nu)
    offset = nu / 2.0 - 0.75
    # zeros sit above pi (k + nu/2 - 3/4) from index `count` on: the McMahon
    # deviation j_k - pi (k + nu/2 - 1/4) is monotone in k
    if mu[-1] < math.pi * (count + offset):
        raise NumericalFailure("tail model not validated: last zero below its McMahon floor")
    m = setup.m
    if f is TestFunctionId.F1:
        weights = 2.0 / mu**2
        tail = TailBound(amplitude=2.0, power=2.0, offset=offset)
    else:
        weights = 2.0 * m * m / mu**4
        tail = TailBound(amplitude=2.0 * m * m, power=4.0, offset=offset)
    return SpectralData(
        eigenvalues=mu**2,
        weights=weights,
        tail=tail,
        label=f"ball m={m} {f.value}",
        setup=setup,
        function_pair=(f, f),
        satisfies_boundary_condition=f is TestFunctionId.F2,
    )


def fourier_coefficient(setup, f, mu):
    """(f, phi_+^(+)) evaluated from Bessel values rather than the closed form."""
    f = TestFunctionId.parse(f)
    half_m = Fraction(setup.m, 2)
    norm = bessel_j(half_m, mu)
    if f is TestFunctionId.F1:
        # C * int_0^1 r^{m/2} J_{m/2-1}(mu r) dr = C J_{m/2}(mu) / mu
        return bessel_j(half_m, mu) / (mu * norm)
    return bessel_j(half_m + 1, mu) / (mu * norm)


def l2_norm_squared(setup, f):
    """Exact int_M |f|^2 = int_0^1 r^{m-1} (a^2 + b^2) dr."""
    a, b = _PROFILES[TestFunctionId.parse(f)]
    total = Fraction(0)
    for coeffs in (a, b):
        for i, ci in enumerate(coeffs):
            for j, cj in enumerate(coeffs):
                total += Fraction(ci * cj, setup.m + i + j)
    return total


def dirac_profiles(setup, f):
    """Radial profiles of P f, without the -i factor: (b', a' + (m-1) a / r)."""
    a, b = radial_profiles(f)
    a_over_r = Polynomial(a.coef[1:]) if a.coef.size > 1 else Polynomial([0.0])
    if a.coef[0] != 0:
        raise DomainError("upper profile must vanish at r = 0")
    return b.deriv(), a.deriv() + (setup.m - 1) * a_over_r


def interior_dirac_energy(setup, f, nodes=24):
    """int_M |P f|^2 by Gauss-Legendre quadrature on the radial integral."""
    upper, lower = dirac_profiles(setup, f)
    x, w = np.polynomial.legendre.leggauss(nodes)
    r = 0.5 * (x + 1.0)
    integrand = r ** (setup.m - 1) * (upper(r) ** 2 + lower(r) ** 2)
    return 0.5 * float(np.dot(w, integrand))


def boundary_data(setup, f):
    """Inputs of the two-coefficient ansatz for the pair (f, f) on the ball."""
    a, b = radial_profiles(f)
    b1 = float(b(1.0))
    db1 = float(b.deriv()(1.0))
    pi_norm = b1 * b1
    return AnsatzInputs(
        interior_pf_pf=interior_dirac_energy(setup, f),
        boundary_pi_pi=pi_norm,
        boundary_pigp1_pi2=db1 * b1,
        boundary_pi1_pigp2=b1 * db1,
        boundary_laa_pi_pi=(setup.m - 1) * pi_norm,
        boundary_theta_pi_pi=float(setup.theta) * pi_norm,
    )
