"""Heat content coefficients of the ball through the spectral zeta function.

zeta(s) = sum_k w_k lambda_k^-s. With mu_k the zeros of J_nu, nu = m/2 - 1,

    zeta_F1(s) = 2 sum mu^(-2s-2) =: Z(s),    zeta_F2(s) = m^2 Z(s + 1).

Z is split into a small semicircle around k = 0 (fed by the g_l of
log J_nu) and an integral along the imaginary axis (fed by the h_j of
log I_nu). Their epsilon-free parts at integer s are

    circle(s) = -2 (s+1) g_(s+1)  (s >= 0),   -nu  (s = -1),   0  (s <= -2)
    axis(s)   = 0  (s >= 0),   -1/2  (s = -1),   (-1)^k 2 (k-1) h_(2k-2)  (s = -k <= -2)

and the residues come from the axis alone:
Res(-1/2) = 1/pi and Res(-n-1/2) = (-1)^(n+1) (2n-1) h_(2n-1) / pi.
Coefficients follow from beta_2k = (-1)^k / k! zeta(-k) and
beta_(2k+1) = Gamma(-k-1/2) Res(-k-1/2).

Three bookkeeping variants of the integer values are produced:
``resolved`` (circle + axis as above), ``axis`` (a merged axis list whose
s = -1 entry, -(m-1)/2, already absorbs the circle's -nu) and
``circle_plus_axis`` (circle values 1/m at s = 0 and 1 - m/2 at s = -1
added on top of the merged list, counting -nu twice).
Which one reproduces the heat content is decided by comparing with fitted
coefficients, never assumed.
"""

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ball import BallSetup, TestFunctionId
from .errors import DivergenceError, DomainError, InsufficientModesError, MissingValueError
from .specfun import bessel_j_zeros, log_i_large_k_coeffs, log_j_small_k_coeffs, mcmahon_tail_sum

VARIANTS = ("resolved", "axis", "circle_plus_axis")
SCHEMA = 1


@dataclass(frozen=True)
class PiRational:
    """Exact number coefficient * pi^pi_power with rational entries."""

    coefficient: Fraction
    pi_power: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        object.__setattr__(self, "pi_power", Fraction(self.pi_power))
        if self.coefficient == 0:
            object.__setattr__(self, "pi_power", Fraction(0))

    def __mul__(self, other):
        if not isinstance(other, PiRational):
            other = PiRational(Fraction(other))
        return PiRational(self.coefficient * other.coefficient, self.pi_power + other.pi_power)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, PiRational):
            other = PiRational(Fraction(other))
        if other.coefficient == 0:
            return self
        if self.coefficient == 0:
            return other
        if other.pi_power != self.pi_power:
            raise ValueError("cannot add different powers of pi exactly")
        return PiRational(self.coefficient + other.coefficient, self.pi_power)

    __radd__ = __add__

    def __neg__(self):
        return PiRational(-self.coefficient, self.pi_power)

    def __float__(self):
        return float(self.coefficient) * math.pi ** float(self.pi_power)

    def __str__(self):
        if self.pi_power == 0:
            return str(self.coefficient)
        return f"{self.coefficient}*pi^({self.pi_power})"


def gamma_half_integer(k):
    """Gamma(k + 1/2) for integer k as an exact multiple of sqrt(pi)."""
    value = Fraction(1)
    x = Fraction(1, 2)
    if k >= 0:
        for _ in range(k):
            value *= x
            x += 1
    else:
        for _ in range(-k):
            x -= 1
            value /= x
    return PiRational(value, Fraction(1, 2))


class Provenance(enum.Enum):
    CONTOUR_FORMULA = "contour_formula"
    SPECTRAL_SUM = "spectral_sum"


@dataclass(frozen=True)
class ZetaSpecialValues:
    setup: BallSetup
    function: TestFunctionId
    values: dict
    residues: dict
    provenance: Provenance = Provenance.CONTOUR_FORMULA
    variant: str = "resolved"

    def value(self, s):
        s = Fraction(s)
        if s not in self.values:
            raise MissingValueError(f"zeta({s}) not available (variant {self.variant})")
        return self.values[s]

    def residue(self, s):
        s = Fraction(s)
        if s not in self.residues:
            raise MissingValueError(f"residue at s={s} not available")
        return self.residues[s]

    def to_dict(self, beta_orders=None):
        out = {
            "schema": SCHEMA,
            "m": self.setup.m,
            "function": self.function.value,
            "variant": self.variant,
            "provenance": self.provenance.value,
            "values": [
                {"s": str(s), "value": float(v), "exact": str(v)}
                for s, v in sorted(self.values.items(), reverse=True)
            ],
            "residues": [
                {"s": str(s), "value": float(v), "exact": str(v)}
                for s, v in sorted(self.residues.items(), reverse=True)
            ],
        }
        if beta_orders is not None:
            rows = []
            for n in beta_orders:
                b = beta_from_zeta(self, n)
                rows.append({"n": n, "value": float(b), "exact": str(b)})
            out["beta"] = rows
        return out


class _Base:
    """Exact pieces of Z(s) for one order nu."""

    def __init__(self, setup, depth):
        self.m = setup.m
        self.nu = setup.nu
        self.g = log_j_small_k_coeffs(self.nu, depth + 2).coeffs
        self.h = log_i_large_k_coeffs(self.nu, 2 * depth + 2).coeffs

    def _h(self, j):
        return self.h[j - 1] if j >= 1 else Fraction(0)

    def circle(self, s):
        if s >= 0:
            return -2 * (s + 1) * self.g[s]
        return -self.nu if s == -1 else Fraction(0)

    def axis(self, s):
        if s >= 0:
            return Fraction(0)
        if s == -1:
            return Fraction(-1, 2)
        k = -s
        return (-1) ** k * 2 * (k - 1) * self._h(2 * k - 2)

    def merged_axis(self, s):
        if s == -1:
            return -Fraction(self.m - 1, 2)
        return self.axis(s)

    def full_circle(self, s):
        if s == 0:
            return Fraction(1, self.m)
        if s == -1:
            return -Fraction(self.m, 2) + 1
        return self.circle(s)

    def value(self, s, variant):
        if variant == "resolved":
            return self.circle(s) + self.axis(s)
        if variant == "axis":
            return self.merged_axis(s)
        if variant == "circle_plus_axis":
            return self.full_circle(s) + self.merged_axis(s)
        raise DomainError(f"unknown variant {variant!r}; choose from {', '.join(VARIANTS)}")

    def residue(self, n):
        """Residue of Z at s = -n - 1/2 (n >= 0; n = -1 means s = +1/2)."""
        if n < 0:
            return Fraction(0)
        if n == 0:
            return Fraction(1)
        return (-1) ** (n + 1) * (2 * n - 1) * self._h(2 * n - 1)


def zeta_contour_values(setup, f, k_max=3, variant=None):
    """Special values at s = 0..-k_max and residues at s = -1/2..-k_max-1/2.

    Returns a dict variant -> ZetaSpecialValues, or a single entry when
    ``variant`` is given. All numbers are exact PiRational values.
    """
    f = TestFunctionId.parse(f)
    if int(k_max) != k_max or k_max < 1:
        raise DomainError(f"k_max must be a positive integer, got {k_max!r}")
    k_max = int(k_max)
    base = _Base(setup, k_max + 1)
    shift = 0 if f is TestFunctionId.F1 else 1
    scale = Fraction(1) if f is TestFunctionId.F1 else Fraction(setup.m**2)
    residues = {
        Fraction(-2 * n - 1, 2): PiRational(scale * base.residue(n - shift), -1) for n in range(k_max + 1)
    }
    chosen = VARIANTS if variant is None else (variant,)
    out = {}
    for name in chosen:
        values = {Fraction(-k): PiRational(scale * base.value(shift - k, name)) for k in range(k_max + 1)}
        out[name] = ZetaSpecialValues(
            setup=setup, function=f, values=values, residues=dict(residues), variant=name
        )
    return out if variant is None else out[variant]


def beta_from_zeta(values, n):
    """beta_n from a special value (even n) or a residue (odd n), exactly."""
    if int(n) != n or n < 0:
        raise DomainError(f"coefficient order must be a non-negative integer, got {n!r}")
    n = int(n)
    k = n // 2
    if n % 2 == 0:
        return PiRational(Fraction((-1) ** k, math.factorial(k))) * values.value(-k)
    s = Fraction(-2 * k - 1, 2)
    return gamma_half_integer(-k - 1) * values.residue(s)


def zeta_series(data, s, tol=1e-10):
    """sum_k w_k lambda_k^-s for ball data with weights A mu^-p.

    Stored modes are summed exactly rounded; the remainder is the McMahon
    (Hurwitz zeta) tail, whose last included correction serves as the error
    estimate. Converges for p + 2s > 1.
    """
    setup = data.setup
    if not isinstance(setup, BallSetup):
        raise DomainError("zeta_series needs ball spectral data")
    A, p = float(data.tail.amplitude), float(data.tail.power)
    s = float(s)
    q = p + 2.0 * s
    if not q > 1.0:
        raise DivergenceError(f"zeta series diverges for s={s!r} (needs s > {(1.0 - p) / 2.0!r})")
    mu = [math.sqrt(x) for x in data.eigenvalues]
    zeros = bessel_j_zeros(setup.nu, data.count).zeros
    for a, b, w in zip(mu, zeros, data.weights):
        if abs(a - b) > 1e-12 * b or abs(w - A * b ** (-p)) > 1e-13 * abs(w):
            raise DomainError("data are not unscaled ball data with weights A mu^-p")
    head = math.fsum(A * z ** (-q) for z in zeros)
    tail = A * mcmahon_tail_sum(setup.nu, data.count, q)
    without_last = A * mcmahon_tail_sum(setup.nu, data.count, q, terms=2)
    err = abs(tail - without_last)
    if err > tol:
        raise InsufficientModesError(
            f"zeta tail error estimate {err:.3g} exceeds tol={tol:.3g}; store more modes",
            2 * data.count,
        )
    return head + tail


@dataclass(frozen=True)
class Arbitration:
    """Outcome of comparing each variant with fitted coefficients."""

    selected: tuple
    cases: dict = field(default_factory=dict)

    def to_dict(self):
        return {"schema": SCHEMA, "selected": list(self.selected), "cases": self.cases}


DEFAULT_LADDER = (1e-6, 1e-4, 1e-3, 5e-2, 5e-2, 5e-1, 5e-1)


def arbitrate_variants(fits, orders=(0, 2), ladder=DEFAULT_LADDER):
    """Select the variants that reproduce every supplied fit.

    ``fits`` maps (m, function) to an AsymptoticFit. A coefficient is
    reproduced when it lies within max(ladder[n], 3 * uncertainty) of the fit.
    """
    if not fits:
        raise DomainError("arbitration needs at least one fit")
    k_max = max(1, max(orders) // 2 + 1)
    cases = {name: [] for name in VARIANTS}
    for (m, fid), fit in sorted(fits.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
        table = zeta_contour_values(BallSetup(m), fid, k_max)
        for name, zv in table.items():
            for n in orders:
                predicted = float(beta_from_zeta(zv, n))
                fitted = fit.coefficients[n]
                allowed = max(ladder[n], 3.0 * fit.uncertainties[n])
                cases[name].append(
                    {
                        "m": m,
                        "function": TestFunctionId.parse(fid).value,
                        "n": n,
                        "predicted": predicted,
                        "fitted": fitted,
                        "tolerance": allowed,
                        "pass": abs(predicted - fitted) <= allowed,
                    }
                )
    selected = tuple(name for name in VARIANTS if all(c["pass"] for c in cases[name]))
    return Arbitration(selected=selected, cases=cases)


def zeta_json(entries, arbitration=None, beta_orders=(0, 1, 2, 3)):
    out = {"schema": SCHEMA, "variants": [e.to_dict(beta_orders) for e in entries]}
    if arbitration is not None:
        out["arbitration"] = arbitration.to_dict()
    return json.dumps(out, indent=2) + "\n"
