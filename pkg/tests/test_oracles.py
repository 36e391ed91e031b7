import math
from dataclasses import fields

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from apsheat.asymptotics import fit_expansion
from apsheat.ball import BallSetup, boundary_data, build_spectral_data
from apsheat.errors import DomainError, MissingValueError, PreconditionError
from apsheat.heat import sample_curve
from apsheat.intervals import dirichlet_interval_spectrum, robin_interval_spectrum
from apsheat.oracles import (
    AnsatzInputs,
    BoundaryGeometryData,
    ansatz_coeffs,
    ball_scalar_geometry,
    case,
    dirichlet_coeffs,
    interval_geometry,
    lemma2_recursion_check,
    lemma2_scaling_check,
    report,
    report_passed,
    robin_coeffs,
    sphere_volume,
)
from apsheat.spectrum import SpectralData, TailBound

SQRT_PI = math.sqrt(math.pi)
DIRICHLET_TOL = (1e-8, 1e-4, 1e-3, 5e-2)


# -- closed forms on the interval -------------------------------------------------


def test_dirichlet_interval_constant():
    b = dirichlet_coeffs(interval_geometry([1.0], [1.0]))
    assert b == pytest.approx((1.0, -4 / SQRT_PI, 0.0, 0.0), abs=1e-15)


def test_robin_interval_constant():
    b = robin_coeffs(interval_geometry([1.0], [1.0], S=1.0))
    assert b == pytest.approx((1.0, 0.0, 2.0, 8 / (3 * SQRT_PI)), abs=1e-15)


def test_neumann_interval_constant():
    assert robin_coeffs(interval_geometry([1.0], [1.0], S=0.0)) == (1.0, 0.0, 0.0, 0.0)


def _panel_rule(panels=200, nodes=30):
    """Composite Gauss-Legendre rule on [0, 1]."""
    g, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    x = (edges[:-1, None] + half[:, None] * (g[None, :] + 1.0)).ravel()
    return x, (half[:, None] * w[None, :]).ravel()


def _sine_modes(f2_coeffs, count=2000):
    """Heat content of f1 = 1 against polynomial f2 under Dirichlet conditions."""
    x, wq = _panel_rule()
    f2 = np.polynomial.Polynomial(f2_coeffs)(x)
    k = np.arange(1, count + 1)
    mu = k * math.pi
    s1 = math.sqrt(2.0) * (1.0 - (-1.0) ** k) / mu
    s2 = math.sqrt(2.0) * (np.sin(np.outer(mu, x)) @ (wq * f2))
    return SpectralData(eigenvalues=mu**2, weights=s1 * s2, tail=TailBound(8.0, 2.0), label="dirichlet (1, f2)")


@pytest.mark.parametrize("f2", [[0.0, 1.0], [0.0, 0.0, 1.0], [1.0, -2.0, 3.0]])
def test_dirichlet_evaluator_against_spectral_fit(f2):
    expected = dirichlet_coeffs(interval_geometry([1.0], f2))
    curve = sample_curve(_sine_modes(f2), 1e-4, 1e-1, 121, 1e-12)
    fit = fit_expansion(curve, 6, log_orders=())
    for n, tol in enumerate(DIRICHLET_TOL):
        assert abs(fit.coefficients[n] - expected[n]) <= tol, (n, fit.coefficients[n], expected[n])


def test_dirichlet_x_squared_values():
    b = dirichlet_coeffs(interval_geometry([1.0], [0.0, 0.0, 1.0]))
    assert b == pytest.approx((1 / 3, -2 / SQRT_PI, 2.0, -16 / (3 * SQRT_PI)), abs=1e-14)


@pytest.mark.parametrize("S", [0.5, 1.0, 2.0])
def test_robin_evaluator_against_spectral_fit(S):
    expected = robin_coeffs(interval_geometry([1.0], [1.0], S=S))
    fit = fit_expansion(sample_curve(robin_interval_spectrum(S, 400), 1e-4, 1e-1, 121, 1e-12), 6, log_orders=())
    tol3 = max(5e-3 * abs(expected[3]), 5e-2)
    for n, tol in enumerate((1e-8, 1e-4, 1e-3, tol3)):
        assert abs(fit.coefficients[n] - expected[n]) <= tol


def test_scalar_ball_against_dirichlet_spectrum():
    """Dirichlet heat content of the m-ball with f = 1 equals |S^(m-1)| times the F1 curve."""
    for m in (2, 3, 4):
        expected = dirichlet_coeffs(ball_scalar_geometry(m))
        vol = sphere_volume(m)
        fit = fit_expansion(
            sample_curve(build_spectral_data(BallSetup(m), "f1", 300), 1e-4, 1e-1, 121, 1e-12), 6, log_orders=()
        )
        for n, tol in enumerate((1e-6, 1e-4, 1e-3)):
            assert abs(vol * fit.coefficients[n] - expected[n]) <= tol * vol


def test_scalar_ball_beta_2_closed_form():
    m = 5
    b = dirichlet_coeffs(ball_scalar_geometry(m))
    assert b[2] == pytest.approx(sphere_volume(m) * (m - 1) / 2, rel=1e-14)


def test_ball_geometry_validation():
    with pytest.raises(DomainError):
        ball_scalar_geometry(1)


# -- linearity and symmetry ---------------------------------------------------------

poly = st.lists(st.floats(-3.0, 3.0, allow_nan=False), min_size=1, max_size=4)
dirichlet_fields = [f.name for f in fields(BoundaryGeometryData) if f.name != "m" and not f.name.startswith("robin")]


@settings(max_examples=40, deadline=None)
@given(f1=poly, f2=poly, name=st.sampled_from(dirichlet_fields), alpha=st.floats(-4.0, 4.0, allow_nan=False))
def test_dirichlet_is_linear_in_each_integral(f1, f2, name, alpha):
    base = interval_geometry(f1, f2)
    assume(getattr(base, name) != 0.0)
    zero = dirichlet_coeffs(base.scaled(0.0, name))
    one = dirichlet_coeffs(base)
    scaled = dirichlet_coeffs(base.scaled(alpha, name))
    for z, o, s in zip(zero, one, scaled):
        assert s - z == pytest.approx(alpha * (o - z), rel=1e-12, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(f1=poly, f2=poly, S=st.floats(0.0, 4.0))
def test_interval_heat_content_is_symmetric(f1, f2, S):
    """The pair (f1, f2) and (f2, f1) share all coefficients on the interval."""
    for evaluate, s in ((dirichlet_coeffs, None), (robin_coeffs, S)):
        ab = evaluate(interval_geometry(f1, f2, S=s))
        ba = evaluate(interval_geometry(f2, f1, S=s))
        tr = evaluate(interval_geometry(f1, f2, S=s).transposed())
        scale = 1.0 + max(abs(v) for v in ab)
        for x, y, z in zip(ab, ba, tr):
            assert abs(x - y) <= 1e-12 * scale
            assert abs(y - z) <= 1e-12 * scale


@settings(max_examples=40, deadline=None)
@given(vals=st.lists(st.floats(-5.0, 5.0, allow_nan=False), min_size=6, max_size=6))
def test_ansatz_symmetry_on_transposed_inputs(vals):
    inputs = AnsatzInputs(*vals)
    assert ansatz_coeffs(inputs.transposed()) == ansatz_coeffs(inputs)


@given(m=st.integers(2, 9))
def test_ansatz_on_the_ball(m):
    b1, b2 = ansatz_coeffs(boundary_data(BallSetup(m), "f1"))
    assert b1 == pytest.approx(-2 / SQRT_PI, rel=1e-15)
    assert b2 == pytest.approx((m - 1) / 2, rel=1e-15)
    c1, c2 = ansatz_coeffs(boundary_data(BallSetup(m), "f2"))
    assert c1 == 0.0
    assert c2 == pytest.approx(-m, rel=1e-13)


def test_missing_values_are_named():
    with pytest.raises(MissingValueError) as info:
        dirichlet_coeffs(BoundaryGeometryData(m=3, interior_f1_f2=1.0))
    assert "boundary_f1_f2" in str(info.value)
    with pytest.raises(MissingValueError):
        robin_coeffs(interval_geometry([1.0], [1.0]))
    with pytest.raises(MissingValueError):
        ansatz_coeffs(AnsatzInputs(interior_pf_pf=1.0))


# -- recursion and scaling ----------------------------------------------------------


def test_single_mode_recursion():
    data = SpectralData(
        eigenvalues=[2.0], weights=[1.0], tail=TailBound(0.0, 2.0), label="single", satisfies_boundary_condition=True
    )
    rep = lemma2_recursion_check(data)
    assert report_passed(rep)
    derived = data.derived()
    assert derived.weights[0] == 2.0


@pytest.mark.parametrize("m", [2, 3, 4])
def test_recursion_for_f2(m):
    rep = lemma2_recursion_check(build_spectral_data(BallSetup(m), "f2", 300))
    assert report_passed(rep), rep
    coeff = rep["cases"][-1]
    assert abs(coeff["fitted"] - coeff["expected"]) <= 1e-3


def test_recursion_for_neumann():
    assert report_passed(lemma2_recursion_check(robin_interval_spectrum(0.0)))


def test_recursion_requires_the_boundary_condition():
    with pytest.raises(PreconditionError):
        lemma2_recursion_check(build_spectral_data(BallSetup(3), "f1", 50))
    with pytest.raises(PreconditionError):
        lemma2_recursion_check(dirichlet_interval_spectrum(50))


@pytest.mark.parametrize("m", [2, 3, 5])
def test_scaling_check(m):
    rows = lemma2_scaling_check(build_spectral_data(BallSetup(m), "f1", 300), m, [1e-3, 1e-2, 1e-1])
    assert [r["pass"] for r in rows] == [True, True]
    assert all(r["fitted"] <= 1e-12 for r in rows)


# -- reports ------------------------------------------------------------------------


def test_report_structure():
    rows = [case("a", 1.0, 1.0 + 1e-9, 1e-8), case("b", 0.0, 1.0, 0.5, extra=3)]
    rep = report("demo", rows)
    assert rep["suite"] == "demo"
    assert set(rows[0]) == {"name", "expected", "fitted", "tolerance", "pass"}
    assert rows[1]["extra"] == 3
    assert rows[0]["pass"] and not rows[1]["pass"]
    assert not report_passed(rep)
    assert not report_passed(report("empty", []))


def test_case_honours_explicit_verdict():
    assert case("x", 0.0, 5.0, 1.0, passed=True)["pass"]
