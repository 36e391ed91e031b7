"""Closed-form heat content coefficients on model geometries.

* Dirichlet and Robin coefficients beta_0..beta_3 of a Laplace-type operator,
  evaluated from pre-integrated local boundary data.
* The two-coefficient ansatz for spectral boundary conditions with constants
  c0 = -1, c1 = 1, c2 = 1/2, c3 = 0.
* Functional identities of heat content (scaling, symmetry, and the
  recursion for pairs that satisfy the boundary condition), checked against
  spectral data.

Boundary integrals use the inward unit normal; ``;m`` is the inward normal
derivative and ``;a`` a tangential one.
"""

import math
from dataclasses import dataclass, fields, replace

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DomainError, MissingValueError, PreconditionError

SQRT_PI = math.sqrt(math.pi)

ANSATZ_C0 = -1.0
ANSATZ_C1 = 1.0
ANSATZ_C2 = 0.5
ANSATZ_C3 = 0.0


def _require(obj, names):
    missing = [n for n in names if getattr(obj, n) is None]
    if missing:
        raise MissingValueError(f"{type(obj).__name__} is missing: {', '.join(missing)}")
    return [float(getattr(obj, n)) for n in names]


@dataclass(frozen=True)
class BoundaryGeometryData:
    """Integrated local data for a pair (f1, f2); unset entries are None."""

    m: int
    interior_f1_f2: float = None
    interior_df1_f2: float = None
    boundary_f1_f2: float = None
    boundary_laa_f1_f2: float = None
    boundary_f1_f2m: float = None
    boundary_f1m_f2: float = None
    boundary_f1mm_f2: float = None
    boundary_f1_f2mm: float = None
    boundary_f1a_f2a: float = None
    boundary_ef1_f2: float = None
    boundary_laa_f1m_f2: float = None
    boundary_laa_f1_f2m: float = None
    boundary_laalbb_f1_f2: float = None
    boundary_lablab_f1_f2: float = None
    boundary_ramam_f1_f2: float = None
    robin_bf1_f2: float = None
    robin_bf1_bf2: float = None

    def transposed(self):
        """Data of the pair (f2, f1).

        Green's formula with the inward normal gives
        int <D f2, f1> = int <D f1, f2> - int <f1;m, f2> + int <f1, f2;m>,
        and the same boundary swap turns int <B f1, f2> into int <B f2, f1>.
        """
        swap = {
            "boundary_f1_f2m": self.boundary_f1m_f2,
            "boundary_f1m_f2": self.boundary_f1_f2m,
            "boundary_f1mm_f2": self.boundary_f1_f2mm,
            "boundary_f1_f2mm": self.boundary_f1mm_f2,
            "boundary_laa_f1m_f2": self.boundary_laa_f1_f2m,
            "boundary_laa_f1_f2m": self.boundary_laa_f1m_f2,
        }
        if None not in (self.boundary_f1m_f2, self.boundary_f1_f2m):
            flux = self.boundary_f1_f2m - self.boundary_f1m_f2
            if self.interior_df1_f2 is not None:
                swap["interior_df1_f2"] = self.interior_df1_f2 + flux
            if self.robin_bf1_f2 is not None:
                swap["robin_bf1_f2"] = self.robin_bf1_f2 + flux
        return replace(self, **swap)

    def scaled(self, alpha, name):
        """Copy with one integral multiplied by ``alpha`` (linearity probes)."""
        return replace(self, **{name: alpha * getattr(self, name)})


@dataclass(frozen=True)
class AnsatzInputs:
    """Integrated data entering the spectral-condition ansatz."""

    interior_pf_pf: float = None
    boundary_pi_pi: float = None
    boundary_pigp1_pi2: float = None
    boundary_pi1_pigp2: float = None
    boundary_laa_pi_pi: float = None
    boundary_theta_pi_pi: float = None

    def transposed(self):
        return replace(
            self,
            boundary_pigp1_pi2=self.boundary_pi1_pigp2,
            boundary_pi1_pigp2=self.boundary_pigp1_pi2,
        )


_DIRICHLET_FIELDS = (
    "interior_f1_f2",
    "interior_df1_f2",
    "boundary_f1_f2",
    "boundary_laa_f1_f2",
    "boundary_f1_f2m",
    "boundary_f1mm_f2",
    "boundary_f1_f2mm",
    "boundary_f1a_f2a",
    "boundary_ef1_f2",
    "boundary_laa_f1m_f2",
    "boundary_laa_f1_f2m",
    "boundary_laalbb_f1_f2",
    "boundary_lablab_f1_f2",
    "boundary_ramam_f1_f2",
)


def dirichlet_coeffs(data):
    """(beta_0, beta_1, beta_2, beta_3) for Dirichlet conditions."""
    (i0, idf, b0, blaa, bf2m, bf1mm, bf2mm, ba, be, blaa1m, blaa2m, bll, blab, br) = _require(
        data, _DIRICHLET_FIELDS
    )
    beta0 = i0
    beta1 = -2.0 / SQRT_PI * b0
    beta2 = -idf + 0.5 * blaa - bf2m
    bracket = (
        2.0 / 3.0 * bf1mm
        + 2.0 / 3.0 * bf2mm
        - ba
        + be
        - 2.0 / 3.0 * blaa1m
        - 2.0 / 3.0 * blaa2m
        + bll / 12.0
        - blab / 6.0
        + br / 6.0
    )
    beta3 = -2.0 / SQRT_PI * bracket
    return beta0, beta1, beta2, beta3


def robin_coeffs(data):
    """(beta_0, beta_1, beta_2, beta_3) for Robin conditions B = d/dn + S."""
    i0, idf, bf, bb = _require(data, ("interior_f1_f2", "interior_df1_f2", "robin_bf1_f2", "robin_bf1_bf2"))
    return i0, 0.0, -idf + bf, 4.0 / 3.0 / SQRT_PI * bb


def ansatz_coeffs(inputs):
    """(beta_1, beta_2) from the ansatz with the fixed universal constants."""
    pp, pi, g1, g2, laa, th = _require(inputs, [f.name for f in fields(AnsatzInputs)])
    beta1 = 2.0 / SQRT_PI * ANSATZ_C0 * pi
    # g1 + g2 commutes exactly, so swapping the pair leaves beta_2 bit-identical
    beta2 = -pp + ANSATZ_C1 * (g1 + g2) + ANSATZ_C2 * laa + ANSATZ_C3 * th
    return beta1, beta2


def _poly(p):
    if isinstance(p, Polynomial):
        return p
    return Polynomial(np.atleast_1d(np.asarray(p, dtype=float)))


def interval_geometry(f1, f2, S=None):
    """Local data on [0, 1] for D = -d^2/dx^2 and polynomial f1, f2.

    The boundary is the two points x = 0 (inward derivative +d/dx) and
    x = 1 (inward derivative -d/dx); it is flat and has no tangential
    directions. ``S`` fills the Robin entries for B = d/dn + S.
    """
    f1, f2 = _poly(f1), _poly(f2)
    d1, d2 = f1.deriv(), f2.deriv()
    dd1, dd2 = f1.deriv(2), f2.deriv(2)

    def both(g):
        return float(g(0.0) + g(1.0))

    def inward(g, h, order):
        # sum over both endpoints of (d/dn)^order applied to g, times h
        sign = -1.0 if order % 2 else 1.0
        return float(g(0.0) * h(0.0) + sign * g(1.0) * h(1.0))

    prod = (f1 * f2).integ()
    dprod = (-dd1 * f2).integ()
    data = BoundaryGeometryData(
        m=1,
        interior_f1_f2=float(prod(1.0) - prod(0.0)),
        interior_df1_f2=float(dprod(1.0) - dprod(0.0)),
        boundary_f1_f2=both(f1 * f2),
        boundary_laa_f1_f2=0.0,
        boundary_f1_f2m=inward(d2, f1, 1),
        boundary_f1m_f2=inward(d1, f2, 1),
        boundary_f1mm_f2=inward(dd1, f2, 2),
        boundary_f1_f2mm=inward(dd2, f1, 2),
        boundary_f1a_f2a=0.0,
        boundary_ef1_f2=0.0,
        boundary_laa_f1m_f2=0.0,
        boundary_laa_f1_f2m=0.0,
        boundary_laalbb_f1_f2=0.0,
        boundary_lablab_f1_f2=0.0,
        boundary_ramam_f1_f2=0.0,
    )
    if S is not None:
        S = float(S)
        bf1_f2 = data.boundary_f1m_f2 + S * data.boundary_f1_f2
        # B f = f;m + S f at each endpoint
        b1 = lambda x, s: s * float(d1(x)) + S * float(f1(x))
        b2 = lambda x, s: s * float(d2(x)) + S * float(f2(x))
        bb = b1(0.0, 1.0) * b2(0.0, 1.0) + b1(1.0, -1.0) * b2(1.0, -1.0)
        data = replace(data, robin_bf1_f2=bf1_f2, robin_bf1_bf2=bb)
    return data


def sphere_volume(m):
    """Volume of the unit sphere S^(m-1) bounding the unit m-ball."""
    return 2.0 * math.pi ** (m / 2.0) / math.gamma(m / 2.0)


def ball_scalar_geometry(m):
    """Local data on the unit m-ball for the flat Laplacian and f1 = f2 = 1."""
    if int(m) != m or m < 2:
        raise DomainError(f"ball dimension must be an integer >= 2, got {m!r}")
    vol = sphere_volume(m)
    return BoundaryGeometryData(
        m=int(m),
        interior_f1_f2=vol / m,
        interior_df1_f2=0.0,
        boundary_f1_f2=vol,
        boundary_laa_f1_f2=(m - 1) * vol,
        boundary_f1_f2m=0.0,
        boundary_f1m_f2=0.0,
        boundary_f1mm_f2=0.0,
        boundary_f1_f2mm=0.0,
        boundary_f1a_f2a=0.0,
        boundary_ef1_f2=0.0,
        boundary_laa_f1m_f2=0.0,
        boundary_laa_f1_f2m=0.0,
        boundary_laalbb_f1_f2=(m - 1) ** 2 * vol,
        boundary_lablab_f1_f2=(m - 1) * vol,
        boundary_ramam_f1_f2=0.0,
    )


# -- report plumbing ---------------------------------------------------------


def case(name, expected, fitted, tolerance, passed=None, **extra):
    """One report row; ``passed`` defaults to |fitted - expected| <= tolerance."""
    if passed is None:
        passed = bool(abs(float(fitted) - float(expected)) <= tolerance)
    row = {
        "name": name,
        "expected": float(expected),
        "fitted": float(fitted),
        "tolerance": float(tolerance),
        "pass": bool(passed),
    }
    row.update(extra)
    return row


def report(suite, cases):
    return {"suite": suite, "cases": list(cases)}


def report_passed(rep):
    return bool(rep["cases"]) and all(c["pass"] for c in rep["cases"])


# -- functional identities ---------------------------------------------------


def default_t_grid():
    return np.geomspace(1e-4, 1e-1, 121)


def lemma2_recursion_check(data, t_grid=None, max_order=6, tol=1e-3):
    """Check -d/dt beta = beta(D f1, f2) and beta_2 = -beta_0(D f1, f2).

    Only valid when f1 satisfies the boundary condition. The pointwise
    checks compare two summation orders of the derivative series (relative
    1e-12) and a central difference of beta (relative 1e-6); the coefficient
    check fits both curves.
    """
    from .asymptotics import fit_expansion
    from .heat import HeatCurve, beta_at

    if not data.satisfies_boundary_condition:
        raise PreconditionError(f"{data.label}: f1 does not satisfy the boundary condition")
    grid = default_t_grid() if t_grid is None else np.asarray(t_grid, dtype=float)
    derived = data.derived()
    lam, w = data.eigenvalues, data.weights
    worst_term, worst_fd = 0.0, 0.0
    for t in grid[::10]:
        direct = math.fsum((lam * (w * np.exp(-t * lam))).tolist())
        via_derived, _ = beta_at(derived, t, 1e-14)
        scale = max(abs(via_derived), 1e-300)
        worst_term = max(worst_term, abs(direct - via_derived) / scale)
        h = 1e-3 * t
        fd = -(beta_at(data, t + h, 1e-15)[0] - beta_at(data, t - h, 1e-15)[0]) / (2.0 * h)
        worst_fd = max(worst_fd, abs(fd - via_derived) / max(abs(via_derived), 1e-12))
    curve = HeatCurve(*zip(*[(t,) + beta_at(data, t, 1e-12) for t in grid]))
    dcurve = HeatCurve(*zip(*[(t,) + beta_at(derived, t, 1e-12) for t in grid]))
    fit = fit_expansion(curve, max_order, log_orders=())
    dfit = fit_expansion(dcurve, max_order, log_orders=())
    lhs = fit.coefficients[2]
    rhs = -dfit.coefficients[0]
    allowed = max(tol, fit.uncertainties[2] + dfit.uncertainties[0])
    return report(
        f"lemma2-recursion {data.label}",
        [
            case("termwise -dbeta/dt = beta(Df1,f2)", 0.0, worst_term, 1e-12),
            case("central difference of beta", 0.0, worst_fd, 1e-6),
            case("beta_2 = -beta_0(Df1,f2)", rhs, lhs, allowed),
        ],
    )


def lemma2_scaling_check(data, m, t_values, c_values=(0.5, 2.0), tol=1e-12):
    """beta for c^-2 D equals c^m beta(c^-2 t), both sides from the same modes."""
    from .heat import beta_at

    rows = []
    for c in c_values:
        scaled = data.scaled(c, m)
        worst = 0.0
        for t in t_values:
            lhs, _ = beta_at(scaled, t, 1e-12 * c**m + 1e-300)
            rhs, _ = beta_at(data, t / c**2, 1e-12)
            rhs *= c**m
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
        rows.append(case(f"scaling c={c!r} {data.label}", 0.0, worst, tol))
    return rows
