"""Verification suites comparing fitted curves with closed forms.

Each suite returns a report ``{"suite": name, "cases": [...]}`` whose rows
carry name, expected, fitted, tolerance and pass.
"""

import math
from functools import lru_cache

import numpy as np

from .asymptotics import fit_expansion
from .ball import BallSetup, TestFunctionId, boundary_data, build_spectral_data, l2_norm_squared
from .errors import DomainError
from .heat import sample_curve
from .intervals import dirichlet_interval_spectrum, robin_interval_spectrum
from .oracles import (
    ansatz_coeffs,
    ball_scalar_geometry,
    case,
    dirichlet_coeffs,
    interval_geometry,
    lemma2_recursion_check,
    lemma2_scaling_check,
    report,
    robin_coeffs,
    sphere_volume,
)
from .specfun import mcmahon_tail_sum
from .zeta import arbitrate_variants, beta_from_zeta, zeta_contour_values, zeta_series

SQRT_PI = math.sqrt(math.pi)
SUITES = ("ball", "lemma1", "lemma2", "zeta")

BALL_MODES = 300
INTERVAL_MODES = 400
T_MIN, T_MAX, POINTS, FIT_ORDER = 1e-4, 1e-1, 121, 6
BALL_TOL = (1e-6, 1e-4, 1e-3)
LEMMA1_TOL = (1e-8, 1e-4, 1e-3, 5e-2)


def parse_m_range(text):
    """'2..5' -> [2, 3, 4, 5]; a single integer gives one value."""
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise DomainError(f"m-range must look like '2..5', got {text!r}") from None
    values = list(range(lo, hi + 1))
    if not values:
        raise DomainError(f"m-range {text!r} is empty")
    if lo < 2:
        raise DomainError(f"ball dimension must be >= 2, m-range starts at {lo}")
    return values


@lru_cache(maxsize=None)
def ball_data(m, f, modes=BALL_MODES):
    return build_spectral_data(BallSetup(m), TestFunctionId.parse(f), modes)


@lru_cache(maxsize=None)
def ball_fit(m, f, workers=None):
    curve = sample_curve(ball_data(m, f), T_MIN, T_MAX, POINTS, 1e-12, workers=workers)
    return fit_expansion(curve, FIT_ORDER, log_orders=())


def _fit_spectrum(data, workers=None):
    curve = sample_curve(data, T_MIN, T_MAX, POINTS, 1e-12, workers=workers)
    return fit_expansion(curve, FIT_ORDER, log_orders=())


def ball_table(m, f):
    if TestFunctionId.parse(f) is TestFunctionId.F1:
        return (1.0 / m, -2.0 / SQRT_PI, (m - 1) / 2.0)
    return (1.0 / (m + 2), 0.0, -float(m))


def suite_ball(m_values, workers=None):
    rows = []
    for m in m_values:
        setup = BallSetup(m)
        for f in (TestFunctionId.F1, TestFunctionId.F2):
            fit = ball_fit(m, f.value, workers)
            for n, (exp, tol) in enumerate(zip(ball_table(m, f), BALL_TOL)):
                rows.append(case(f"m={m} {f.value} beta_{n}", exp, fit.coefficients[n], tol))
            b1, b2 = ansatz_coeffs(boundary_data(setup, f))
            rows.append(case(f"m={m} {f.value} ansatz beta_1", ball_table(m, f)[1], b1, 1e-12))
            rows.append(case(f"m={m} {f.value} ansatz beta_2", ball_table(m, f)[2], b2, 1e-12))
            data = ball_data(m, f.value)
            total = math.fsum(data.weights.tolist()) + data.tail.amplitude * mcmahon_tail_sum(
                setup.nu, data.count, data.tail.power
            )
            rows.append(case(f"m={m} {f.value} sum of weights = |f|^2", float(l2_norm_squared(setup, f)), total, 1e-8))
        f1, f2 = ball_fit(m, "f1", workers), ball_fit(m, "f2", workers)
        witness = abs(f1.coefficients[1] + 2.0 / SQRT_PI) <= BALL_TOL[1] and abs(f2.coefficients[1]) <= BALL_TOL[1]
        rows.append(
            case(
                f"m={m} non-locality: beta_1(F1) != beta_1(F2) on the same boundary",
                -2.0 / SQRT_PI,
                f1.coefficients[1] - f2.coefficients[1],
                2 * BALL_TOL[1],
                passed=witness,
                beta_1_f1=f1.coefficients[1],
                beta_1_f2=f2.coefficients[1],
            )
        )
    return report("ball", rows)


def _compare(rows, label, expected, fit, tolerances):
    for n, (exp, tol) in enumerate(zip(expected, tolerances)):
        rows.append(case(f"{label} beta_{n}", exp, fit.coefficients[n], tol))


def suite_lemma1(m_values, workers=None):
    rows = []
    fit = _fit_spectrum(dirichlet_interval_spectrum(INTERVAL_MODES), workers)
    _compare(rows, "dirichlet interval", dirichlet_coeffs(interval_geometry(1.0, 1.0)), fit, LEMMA1_TOL)
    expected = robin_coeffs(interval_geometry(1.0, 1.0, S=1.0))
    fit = _fit_spectrum(robin_interval_spectrum(1.0, INTERVAL_MODES), workers)
    tols = LEMMA1_TOL[:3] + (max(5e-3 * abs(expected[3]), 5e-2),)
    _compare(rows, "robin interval S=1", expected, fit, tols)
    neumann = robin_interval_spectrum(0.0)
    expected = robin_coeffs(interval_geometry(1.0, 1.0, S=0.0))
    fit = fit_expansion(sample_curve(neumann, T_MIN, T_MAX, POINTS), FIT_ORDER, log_orders=())
    _compare(rows, "neumann interval", expected, fit, LEMMA1_TOL)
    for m in m_values:
        # scalar Dirichlet ball, f = 1: the weights are vol(S^(m-1)) times the F1 weights
        vol = sphere_volume(m)
        fit = ball_fit(m, "f1", workers)
        expected = dirichlet_coeffs(ball_scalar_geometry(m))
        fitted = [vol * c for c in fit.coefficients[:4]]
        for n, (exp, tol) in enumerate(zip(expected, LEMMA1_TOL)):
            rows.append(case(f"dirichlet ball m={m} beta_{n}", exp, fitted[n], tol * max(1.0, vol)))
    return report("lemma1", rows)


def suite_lemma2(m_values, workers=None):
    rows = []
    t_values = np.geomspace(1e-3, 1e-1, 7)
    for m in m_values:
        for f in ("f1", "f2"):
            rows.extend(lemma2_scaling_check(ball_data(m, f), m, t_values))
        # fitted coefficients scale as c^(m-n)
        fit = ball_fit(m, "f1", workers)
        for c in (0.5, 2.0):
            curve = sample_curve(ball_data(m, "f1"), T_MIN, T_MAX, POINTS).transformed(c, m)
            cfit = fit_expansion(curve, FIT_ORDER, log_orders=())
            for n in range(3):
                exp = c ** (m - n) * fit.coefficients[n]
                tol = c ** (m - n) * BALL_TOL[n]
                rows.append(case(f"m={m} f1 fit scaling c={c!r} beta_{n}", exp, cfit.coefficients[n], tol))
        for f in (TestFunctionId.F1, TestFunctionId.F2):
            inputs = boundary_data(BallSetup(m), f)
            a, b = ansatz_coeffs(inputs), ansatz_coeffs(inputs.transposed())
            rows.append(case(f"m={m} {f.value} ansatz symmetry beta_1", a[0], b[0], 0.0))
            rows.append(case(f"m={m} {f.value} ansatz symmetry beta_2", a[1], b[1], 0.0))
    geom = interval_geometry([1.0, 2.0, -1.0], [0.5, 0.0, 3.0, 1.0], S=0.7)
    for label, fn in (("dirichlet", dirichlet_coeffs), ("robin", robin_coeffs)):
        a, b = fn(geom), fn(geom.transposed())
        for n in range(4):
            rows.append(case(f"interval {label} symmetry beta_{n}", a[n], b[n], 1e-12 * max(1.0, abs(a[n]))))
    for m in m_values:
        if m <= 4:
            rows.extend(lemma2_recursion_check(ball_data(m, "f2"))["cases"])
    rows.extend(lemma2_recursion_check(robin_interval_spectrum(0.0))["cases"])
    return report("lemma2", rows)


def suite_zeta(m_values, workers=None):
    rows = []
    fits = {}
    for m in m_values:
        setup = BallSetup(m)
        for f in ("f1", "f2"):
            fit = ball_fit(m, f, workers)
            fits[(m, f)] = fit
            zv = zeta_contour_values(setup, f, 2)["resolved"]
            direct = zeta_series(ball_data(m, f), 0.0)
            rows.append(case(f"m={m} {f} zeta(0) spectral sum = contour", float(zv.value(0)), direct, 1e-8))
            for n in range(3):
                pred = float(beta_from_zeta(zv, n))
                tol = max(BALL_TOL[n], 3.0 * fit.uncertainties[n])
                rows.append(case(f"m={m} {f} beta_{n} zeta route vs fit", pred, fit.coefficients[n], tol))
        b1 = beta_from_zeta(zeta_contour_values(setup, "f1", 1)["resolved"], 1)
        exact = b1.coefficient == -2 and b1.pi_power == -0.5
        rows.append(case(f"m={m} f1 beta_1 = Gamma(-1/2)/pi exactly", -2.0 / SQRT_PI, float(b1), 0.0, passed=exact))
        r2 = zeta_contour_values(setup, "f2", 1)["resolved"].residue(-0.5)
        rows.append(case(f"m={m} f2 residue at -1/2 vanishes", 0.0, float(r2), 0.0, passed=r2.coefficient == 0))
    arb = arbitrate_variants(fits)
    rows.append(
        case(
            "variant arbitration selects exactly the resolved bookkeeping",
            1.0,
            float(arb.selected == ("resolved",)),
            0.0,
            selected=list(arb.selected),
        )
    )
    if 3 in m_values:
        fit = ball_fit(3, "f1", workers)
        pred = float(beta_from_zeta(zeta_contour_values(BallSetup(3), "f1", 2)["resolved"], 3))
        unc = fit.uncertainties[3]
        ok = abs(fit.coefficients[3] - pred) <= unc and unc <= 5e-2
        rows.append(case("m=3 f1 beta_3 zeta route vs fit", pred, fit.coefficients[3], unc, passed=ok))
    return report("zeta", rows)


def run_suite(name, m_values, workers=None):
    runners = {"ball": suite_ball, "lemma1": suite_lemma1, "lemma2": suite_lemma2, "zeta": suite_zeta}
    if name not in runners:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return runners[name](list(m_values), workers)
