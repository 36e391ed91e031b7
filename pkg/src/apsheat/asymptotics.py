"""Extraction of beta_n from a sampled heat curve, beta(t) ~ sum_n beta_n t^(n/2).

Each window [tau, ratio * tau] is fitted by weighted least squares against
(t / t_hi)^(n/2), n = 0..N, using a QR factorization of the weighted design
matrix. The estimate comes from the window closest to t = 0; its uncertainty
is the larger of

* the change against the next window (truncation of the series), and
* the propagated data error sum_i |A+_{ni}| sigma_i with
  sigma_i = tail_bound_i + 2^-52 |beta_i| (stored-mode truncation plus
  rounding of the exactly rounded sum).
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .errors import DomainError, RankDeficiencyError
from .heat import HeatCurve

MAX_ORDER = 6
CONDITION_LIMIT = 1e12
LOG_CONSISTENT_RATIO = 3.0
_EPS = 2.0**-52


@dataclass(frozen=True)
class WindowSpec:
    """``count`` windows [tau, ratio * tau] with tau = t_min * step^j.

    ``step=None`` spreads the windows geometrically over at most ``span``
    decades above t_min, shrinking the step when the curve is shorter.
    """

    ratio: float = 10.0
    count: int = 5
    step: float = None
    span: float = 2.0

    def windows(self, t_min, t_max):
        if self.ratio <= 1.0 or self.count < 2:
            raise DomainError("windows need ratio > 1 and count >= 2")
        top = t_max / self.ratio
        if top < t_min * (1.0 - 1e-12):
            raise DomainError(
                f"curve range [{t_min!r}, {t_max!r}] is shorter than one window (ratio {self.ratio})"
            )
        step = self.step
        if step is None:
            reach = min(10.0 ** (self.span - math.log10(self.ratio)), max(top / t_min, 1.0))
            step = reach ** (1.0 / (self.count - 1))
        if step <= 1.0:
            raise DomainError("curve too short for distinct windows; lower the window ratio")
        out = []
        for j in range(self.count):
            tau = t_min * step**j
            if tau * self.ratio > t_max * (1.0 + 1e-12):
                break
            out.append((tau, tau * self.ratio))
        return out


def _as_curve(curve):
    if isinstance(curve, HeatCurve):
        return curve
    t, beta = curve[0], curve[1]
    tail = curve[2] if len(curve) > 2 else np.zeros(len(t))
    return HeatCurve(t=t, beta=beta, tail_bound=tail)


def _sigma(beta, tail):
    scale = float(np.max(np.abs(beta))) if beta.size else 0.0
    floor = max(_EPS * _EPS * scale, np.finfo(float).tiny)
    return np.maximum(tail + _EPS * np.abs(beta), floor)


def _window_solve(t, beta, tail, lo, hi, exponents, log_exponent=None):
    """One weighted QR solve; returns (coeffs, noise, condition, samples)."""
    sel = (t >= lo * (1.0 - 1e-12)) & (t <= hi * (1.0 + 1e-12))
    ts, bs, sig = t[sel], beta[sel], _sigma(beta, tail)[sel]
    ncols = len(exponents) + (log_exponent is not None)
    if ts.size < ncols:
        raise RankDeficiencyError(
            f"window [{lo:.3g}, {hi:.3g}] holds {ts.size} samples for {ncols} basis functions"
        )
    t_hi = float(ts[-1])
    x = ts / t_hi
    cols = [x ** (e / 2.0) for e in exponents]
    scales = [t_hi ** (e / 2.0) for e in exponents]
    if log_exponent is not None:
        # t^(n/2) ln t = t_hi^(n/2) x^(n/2) (ln x + ln t_hi): keep the basis in x
        cols.append(x ** (log_exponent / 2.0) * np.log(x))
        scales.append(t_hi ** (log_exponent / 2.0))
    A = np.column_stack(cols)
    rw = float(np.median(sig)) / sig
    Aw = A * rw[:, None]
    q, r = np.linalg.qr(Aw)
    col_norm = np.linalg.norm(r, axis=0)
    cond = float(np.linalg.cond(r / col_norm))
    pinv = solve_triangular(r, q.T) * rw[None, :]
    raw = pinv @ bs
    # one step of iterative refinement against the solver's own rounding
    raw = raw + pinv @ (bs - A @ raw)
    noise = np.abs(pinv) @ sig
    scales = np.array(scales)
    coeffs = raw / scales
    noise = noise / scales
    if log_exponent is not None:
        # undo the ln t_hi mixing into the pure power of the same order
        k = exponents.index(log_exponent) if log_exponent in exponents else None
        if k is not None:
            coeffs[k] -= coeffs[-1] * math.log(t_hi)
            noise[k] += noise[-1] * abs(math.log(t_hi))
    return coeffs, noise, cond, int(ts.size)


def _run_windows(curve, windows, exponents, log_exponent=None):
    t, beta, tail = curve.t, curve.beta, curve.tail_bound
    report, good = [], []
    for lo, hi in windows:
        coeffs, noise, cond, n = _window_solve(t, beta, tail, lo, hi, exponents, log_exponent)
        entry = {"t_lo": lo, "t_hi": hi, "samples": n, "condition": cond}
        if cond > CONDITION_LIMIT or not np.all(np.isfinite(coeffs)):
            entry["discarded"] = True
            entry["reason"] = "condition estimate above limit"
        else:
            entry["discarded"] = False
            good.append((coeffs, noise))
        entry["coefficients"] = [float(c) for c in coeffs]
        report.append(entry)
    if len(good) < 2:
        raise RankDeficiencyError("fewer than two well-conditioned windows")
    return report, good


def _estimate(good):
    (c0, n0), (c1, _) = good[0], good[1]
    return c0, np.maximum(np.abs(c0 - c1), n0)


@dataclass(frozen=True)
class AsymptoticFit:
    max_order: int
    coefficients: tuple
    uncertainties: tuple
    windows: tuple
    log_diagnostic: dict = field(default_factory=dict)

    def coefficient(self, n):
        return self.coefficients[n]

    def uncertainty(self, n):
        return self.uncertainties[n]

    def to_dict(self):
        return {
            "max_order": self.max_order,
            "coefficients": list(self.coefficients),
            "uncertainties": list(self.uncertainties),
            "windows": list(self.windows),
            "log_diagnostic": self.log_diagnostic,
        }

    def to_json(self, target=None):
        text = json.dumps(self.to_dict(), indent=2) + "\n"
        if target is not None:
            with open(target, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        return text


def _check_order(curve, max_order):
    if int(max_order) != max_order or not 0 <= max_order <= MAX_ORDER:
        raise DomainError(f"max_order must be an integer in 0..{MAX_ORDER}, got {max_order!r}")
    max_order = int(max_order)
    if len(curve) < 3 * (max_order + 1):
        raise RankDeficiencyError(
            f"curve has {len(curve)} samples; order {max_order} needs at least {3 * (max_order + 1)}"
        )
    return max_order


def fit_expansion(curve, max_order=4, windows=None, log_orders=None):
    """Fit beta_0..beta_N on sliding windows and report per-coefficient spread.

    ``windows`` is a WindowSpec or an explicit list of (t_lo, t_hi) pairs
    ordered toward larger t. ``log_orders`` lists the orders scanned for a
    t^(n/2) ln t term (default 1..N).
    """
    curve = _as_curve(curve)
    N = _check_order(curve, max_order)
    if windows is None:
        windows = WindowSpec()
    if isinstance(windows, WindowSpec):
        windows = windows.windows(float(curve.t[0]), float(curve.t[-1]))
    windows = [(float(lo), float(hi)) for lo, hi in windows]
    exponents = list(range(N + 1))
    report, good = _run_windows(curve, windows, exponents)
    coeffs, unc = _estimate(good)
    if log_orders is None:
        log_orders = range(1, N + 1)
    scans = [log_term_scan(curve, n, max_order=N, windows=windows) for n in log_orders]
    return AsymptoticFit(
        max_order=N,
        coefficients=tuple(float(c) for c in coeffs),
        uncertainties=tuple(float(u) for u in unc),
        windows=tuple(report),
        log_diagnostic={"consistent_ratio": LOG_CONSISTENT_RATIO, "scans": scans},
    )


def log_term_scan(curve, order, max_order=None, windows=None):
    """Test for a t^(n/2) ln t term at order n.

    The log column is fitted jointly with the full power basis 0..N so that
    neither lower nor higher powers leak into it. Reports the log coefficient,
    its cross-window spread and their ratio; a ratio at or below 3 is
    consistent with no log term.
    """
    curve = _as_curve(curve)
    if max_order is None:
        max_order = max(int(order), 4)
    N = _check_order(curve, max_order)
    n = int(order)
    if not 0 <= n <= N:
        raise DomainError(f"log scan order {order!r} outside 0..{N}")
    if windows is None:
        windows = WindowSpec()
    if isinstance(windows, WindowSpec):
        windows = windows.windows(float(curve.t[0]), float(curve.t[-1]))
    exponents = list(range(N + 1))
    _, good = _run_windows(curve, windows, exponents, log_exponent=n)
    coeffs, unc = _estimate(good)
    b, spread = float(coeffs[-1]), float(unc[-1])
    ratio = abs(b) / spread if spread > 0.0 else math.inf
    return {
        "order": n,
        "log_coefficient": b,
        "spread": spread,
        "ratio": ratio,
        "consistent_with_zero": ratio <= LOG_CONSISTENT_RATIO,
    }
