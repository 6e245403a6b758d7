"""Nonlinear least-squares extraction of the fitted quantities.

All problems here are small (2-5 parameters, smooth residuals), so a
damped Gauss-Newton / Levenberg-Marquardt iteration with numerically
differentiated Jacobians is used throughout. Parameter uncertainties are
the curvature sigmas at the optimum scaled by the reduced chi-square.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .freq_domain import SweepGrid2D, branch_minima

MAX_ITER = 200
GTOL = 1e-10
REL_STEP = 1e-6


class FitError(RuntimeError):
    pass


@dataclass
class FitResult:
    params: dict[str, float]
    sigmas: dict[str, float]
    residual_norm: float
    converged: bool
    n_iter: int
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "params": self.params,
                "sigmas": self.sigmas,
                "residual_norm": self.residual_norm,
                "converged": self.converged,
                "n_iter": self.n_iter,
                "flags": self.flags,
            },
            indent=2,
        )


@dataclass
class FitProblem:
    """Generic residual-based problem for the LM core."""

    residual_fn: object  # callable x -> residual vector
    initial_guess: np.ndarray
    bounds: list[tuple[float, float]] | None = None
    names: list[str] | None = None


def _numeric_jacobian(fn, x, r0, rel_step=REL_STEP):
    n = len(x)
    J = np.empty((len(r0), n))
    for j in range(n):
        # parameters sitting exactly at zero still need a usable step
        h = max(rel_step * abs(x[j]), 1e-10)
        xp = x.copy()
        xp[j] += h
        J[:, j] = (fn(xp) - r0) / h
    return J


def _clip(x, bounds):
    if bounds is None:
        return x
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])
    return np.clip(x, lo, hi)


def levenberg_marquardt(
    fn,
    x0,
    bounds=None,
    max_iter: int = MAX_ITER,
    gtol: float = GTOL,
) -> tuple[np.ndarray, np.ndarray, float, bool, int]:
    """Minimize 0.5 ||fn(x)||^2.

    Returns (x, covariance, residual_norm, converged, n_iter). The
    covariance is (J^T J)^{-1} scaled by the reduced chi-square.
    """
    x = _clip(np.asarray(x0, dtype=float).copy(), bounds)
    r = np.asarray(fn(x), dtype=float)
    cost = 0.5 * float(r @ r)
    lam = 1e-3
    converged = False
    it = 0
    J = _numeric_jacobian(fn, x, r)
    for it in range(1, max_iter + 1):
        g = J.T @ r
        if np.max(np.abs(g)) < gtol:
            converged = True
            break
        JtJ = J.T @ J
        diag = np.diag(np.maximum(np.diag(JtJ), 1e-30))
        accepted = False
        for _ in range(30):
            try:
                step = np.linalg.solve(JtJ + lam * diag, -g)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            x_new = _clip(x + step, bounds)
            r_new = np.asarray(fn(x_new), dtype=float)
            cost_new = 0.5 * float(r_new @ r_new)
            if cost_new < cost:
                rel_impr = (cost - cost_new) / max(cost, 1e-300)
                x, r, cost = x_new, r_new, cost_new
                lam = max(lam / 10.0, 1e-14)
                accepted = True
                J = _numeric_jacobian(fn, x, r)
                if rel_impr < 1e-14 or np.max(np.abs(step)) < 1e-14 * (1 + np.max(np.abs(x))):
                    converged = True
                break
            lam *= 10.0
        if converged:
            break
        if not accepted:
            converged = True  # stalled at a (local) optimum
            break

    dof = max(len(r) - len(x), 1)
    chi2_red = 2.0 * cost / dof
    try:
        cov = np.linalg.inv(J.T @ J) * chi2_red
    except np.linalg.LinAlgError:
        cov = np.full((len(x), len(x)), np.nan)
    return x, cov, math.sqrt(2.0 * cost), converged, it


def _result(names, x, cov, res_norm, converged, n_iter, flags=()):
    sig = np.sqrt(np.maximum(np.diag(cov), 0.0))
    return FitResult(
        params=dict(zip(names, map(float, x))),
        sigmas=dict(zip(names, map(float, sig))),
        residual_norm=float(res_norm),
        converged=bool(converged),
        n_iter=int(n_iter),
        flags=list(flags),
    )


# -- resonator spectroscopy ------------------------------------------------


def notch_model(freq, f0, kappa_tot, kappa_ext, scale=1.0, twosided=True):
    """|S| of a single resonance notch, geometry-appropriate depth."""
    kappa_eff = kappa_ext / 2.0 if twosided else kappa_ext
    return scale * np.abs(
        1.0 - kappa_eff / (1j * (freq - f0) + kappa_tot / 2.0)
    )


def fit_lorentzian_notch(freq, mag, twosided: bool = True, overcoupled: bool = False) -> FitResult:
    """Fit a resonance dip; returns f0, kappa_tot, kappa_ext, depth.

    Frequency units are whatever the input axis uses. A magnitude-only
    notch fit cannot distinguish kappa_eff from kappa_tot - kappa_eff
    (the lineshape is exactly symmetric in that swap); `overcoupled`
    selects which branch to report, default the weaker-coupled one.
    """
    freq = np.asarray(freq, dtype=float)
    mag = np.asarray(mag, dtype=float)
    if len(freq) < 10:
        raise FitError("need at least 10 points")
    scale0 = float(np.median(np.concatenate([mag[:3], mag[-3:]])))
    depth0 = 1.0 - mag.min() / max(scale0, 1e-300)
    if depth0 < 0.02:
        raise FitError("no resonance dip found (flat spectrum)")
    f0 = float(freq[np.argmin(mag)])
    half = scale0 * (1.0 - depth0 / 2.0)
    below = freq[mag < half]
    width0 = float(below.max() - below.min()) if len(below) > 1 else (freq[1] - freq[0]) * 3
    if freq.max() - freq.min() < 3 * width0:
        raise FitError("spectrum must span at least 3 linewidths")
    factor = 2.0 if twosided else 1.0
    kext0 = min(depth0 * width0 * factor, width0 * factor * 0.999)

    def resid(p):
        return notch_model(freq, p[0], p[1], p[2], p[3], twosided) - mag

    x, cov, rn, conv, it = levenberg_marquardt(
        resid,
        np.array([f0, width0, kext0, scale0]),
        bounds=[(freq.min(), freq.max()), (1e-12, np.inf), (0.0, np.inf), (1e-12, np.inf)],
    )
    if not conv:
        raise FitError(f"notch fit did not converge (best residual {rn:.3g})")
    # resolve the branch degeneracy: kappa_eff <-> kappa_tot - kappa_eff
    k_eff = x[2] / factor
    k_alt = x[1] - k_eff
    chosen = max(k_eff, k_alt) if overcoupled else min(k_eff, k_alt)
    x[2] = chosen * factor
    res = _result(["f0", "kappa_tot", "kappa_ext", "scale"], x, cov, rn, conv, it)
    res.params["depth"] = 1.0 - notch_model(
        np.array([res.params["f0"]]), *x, twosided
    )[0] / res.params["scale"]
    res.sigmas["depth"] = float("nan")
    return res


def peak_model(x, x0, kappa, height, base):
    return base + height * (kappa / 2.0) ** 2 / ((x - x0) ** 2 + (kappa / 2.0) ** 2)


def fit_lorentzian_peak(x, y) -> FitResult:
    """Fit a Lorentzian peak on a flat background."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    base0 = float(np.median(np.concatenate([y[:3], y[-3:]])))
    x0 = float(x[np.argmax(y)])
    h0 = float(y.max() - base0)
    if h0 <= 0:
        raise FitError("no peak found")
    above = x[y > base0 + h0 / 2.0]
    w0 = float(above.max() - above.min()) if len(above) > 1 else (x[1] - x[0]) * 3

    def resid(p):
        return peak_model(x, *p) - y

    xx, cov, rn, conv, it = levenberg_marquardt(
        resid, np.array([x0, w0, h0, base0]),
        bounds=[(x.min(), x.max()), (1e-12, np.inf), (0.0, np.inf), (-np.inf, np.inf)],
    )
    return _result(["x0", "kappa", "height", "base"], xx, cov, rn, conv, it)


# -- avoided crossing ------------------------------------------------------


def crossing_branches(omega_e, omega_m, g):
    """Upper/lower hybridized branch frequencies."""
    mean = (omega_e + omega_m) / 2.0
    split = np.sqrt(g**2 + ((omega_e - omega_m) / 2.0) ** 2)
    return mean - split, mean + split


def extract_branches(grid: SweepGrid2D):
    """Per-control branch dip frequencies from an |S_ee| map."""
    controls, lowers, uppers = [], [], []
    for c, row in zip(grid.y_axis, np.abs(grid.values)):
        pair = branch_minima(row, grid.x_axis)
        if pair is not None:
            controls.append(c)
            lowers.append(pair[0])
            uppers.append(pair[1])
    if len(controls) < 5:
        raise FitError("crossing not resolved in the scanned window")
    return np.array(controls), np.array(lowers), np.array(uppers)


def fit_avoided_crossing(grid: SweepGrid2D) -> FitResult:
    """Fit branch frequencies; returns g, omega_m and linear tuning params.

    The electrical-mode frequency is modelled as tune0 + tune1 * control.
    """
    c, lo, hi = extract_branches(grid)
    sep = hi - lo
    i_min = int(np.argmin(sep))
    omega_m0 = (lo[i_min] + hi[i_min]) / 2.0
    g0 = sep[i_min] / 2.0
    # trace identity: omega_e = omega_+ + omega_- - omega_m
    omega_e_est = lo + hi - omega_m0
    tune1, tune0 = np.polyfit(c, omega_e_est, 1)
    scale = max(abs(omega_m0), 1.0)

    def resid(p):
        g, om, t0, t1 = p[0] * scale, p[1] * scale, p[2] * scale, p[3]
        oe = t0 + t1 * c
        bl, bu = crossing_branches(oe, om, g)
        return np.concatenate([(bl - lo), (bu - hi)]) / scale

    x0 = np.array([g0 / scale, omega_m0 / scale, tune0 / scale, tune1])
    x, cov, rn, conv, it = levenberg_marquardt(resid, x0)
    params = np.array([x[0] * scale, x[1] * scale, x[2] * scale, x[3]])
    scl = np.diag([scale, scale, scale, 1.0])
    cov = scl @ cov @ scl
    return _result(["g", "omega_m", "tune0", "tune1"], params, cov, rn * scale, conv, it)


# -- step response ---------------------------------------------------------


def step_response_occupation(t, delta_e, g, kappa_e, kappa_m):
    """Mechanical occupation under a unit step drive on the electrical mode.

    Analytic two-mode solution with the drive amplitude normalized out
    (an overall scale is fitted separately).
    """
    A = np.array(
        [[-1j * delta_e - kappa_e / 2.0, 1j * g], [1j * g, -kappa_m / 2.0]],
        dtype=np.complex128,
    )
    b = np.array([1.0, 0.0], dtype=np.complex128)
    ap = -np.linalg.solve(A, b)
    evals, V = np.linalg.eig(A)
    c0 = np.linalg.solve(V, -ap)
    am = (V[1, :, None] * (np.exp(np.outer(evals, t)) * c0[:, None])).sum(axis=0) + ap[1]
    return np.abs(am) ** 2


def fit_step_response(
    t_grid,
    delta_e_values,
    traces,
    kappa_m: float,
    joint: bool = True,
) -> FitResult:
    """Fit g and kappa_e across a detuning family of |a_m(t)|^2 traces.

    joint=False fits per-trace and reports the mean parameters with the
    scatter as sigma. Reports the derived cooperativity with propagated
    uncertainty.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    delta_e_values = np.asarray(delta_e_values, dtype=float)
    traces = np.asarray(traces, dtype=float)
    rate0 = max(kappa_m, 1e3)

    def fit_subset(deltas, trs, g0, ke0):
        norm = trs.max()

        def resid(p):
            g, ke = p[0] * rate0, p[1] * rate0
            out = []
            for de, tr, s in zip(deltas, trs, p[2:]):
                out.append(s * step_response_occupation(t_grid, de, g, ke, kappa_m) - tr / norm)
            return np.concatenate(out)

        scales0 = []
        for de, tr in zip(deltas, trs):
            mshape = step_response_occupation(t_grid, de, g0, ke0, kappa_m)
            scales0.append((tr.max() / norm) / max(mshape.max(), 1e-300))
        x0 = np.concatenate([[g0 / rate0, ke0 / rate0], scales0])
        bounds = [(1e-6, np.inf), (1e-6, np.inf)] + [(0.0, np.inf)] * len(scales0)
        x, cov, rn, conv, it = levenberg_marquardt(resid, x0, bounds=bounds)
        return x, cov, rn, conv, it

    # initial guesses from the most-resonant trace's oscillation
    i0 = int(np.argmin(np.abs(delta_e_values)))
    tr0 = traces[i0]
    peaks = np.nonzero((tr0[1:-1] > tr0[:-2]) & (tr0[1:-1] >= tr0[2:]))[0] + 1
    if len(peaks) >= 2:
        period = float(np.mean(np.diff(t_grid[peaks])))
        g0 = math.pi / period
    else:
        g0 = 5.0 * kappa_m
    ke0 = 2.0 * kappa_m

    if joint:
        x, cov, rn, conv, it = fit_subset(delta_e_values, traces, g0, ke0)
        g, ke = x[0] * rate0, x[1] * rate0
        cov_gk = cov[:2, :2] * rate0**2
    else:
        gs, kes = [], []
        for de, tr in zip(delta_e_values, traces):
            x, _, rn, conv, it = fit_subset(np.array([de]), tr[None, :], g0, ke0)
            gs.append(x[0] * rate0)
            kes.append(x[1] * rate0)
        g, ke = float(np.mean(gs)), float(np.mean(kes))
        cov_gk = np.diag([np.var(gs, ddof=1), np.var(kes, ddof=1)])

    c_em = 4.0 * g * g / (ke * kappa_m)
    grad = np.array([8.0 * g / (ke * kappa_m), -4.0 * g * g / (ke * ke * kappa_m)])
    sigma_c = float(np.sqrt(max(grad @ cov_gk @ grad, 0.0)))
    res = _result(["g", "kappa_e"], [g, ke], cov_gk, rn, conv, it)
    res.params["c_em"] = float(c_em)
    res.sigmas["c_em"] = sigma_c
    return res


# -- exponential recovery --------------------------------------------------


def recovery_model(rep_rates, tau, n_heat, n_base, ref_rate=50e3):
    x = np.exp(-1.0 / (np.asarray(rep_rates, dtype=float) * tau))
    xr = math.exp(-1.0 / (ref_rate * tau))
    ref = n_base + n_heat * xr / (1.0 - xr)
    return (n_base + n_heat * x / (1.0 - x)) / ref


def fit_exp_recovery(rep_rates, noise_rel, ref_rate: float = 50e3) -> FitResult:
    """Fit the thermal recovery time from relative noise vs repetition rate."""
    rep_rates = np.asarray(rep_rates, dtype=float)
    noise_rel = np.asarray(noise_rel, dtype=float)
    if len(rep_rates) < 5:
        raise FitError("need at least 5 repetition rates")
    flags = []
    spread = noise_rel.max() - noise_rel.min()
    if spread < 0.02 * np.abs(noise_rel).max():
        flags.append("tau_unidentifiable")
        return FitResult(
            params={"tau": float("nan"), "n_heat": 0.0, "n_base": float(np.mean(noise_rel))},
            sigmas={"tau": float("inf"), "n_heat": 0.0, "n_base": float(np.std(noise_rel))},
            residual_norm=float(np.linalg.norm(noise_rel - noise_rel.mean())),
            converged=True,
            n_iter=0,
            flags=flags,
        )
    # knee: first rate where the excess passes half the total rise
    base0 = float(noise_rel.min())
    half = base0 + spread / 2.0
    knee = rep_rates[np.argmax(noise_rel > half)]
    tau0 = 1.0 / max(knee, 1e-9)

    # the observable is a ratio of count rates, so its noise is
    # multiplicative; relative residuals keep the fit unbiased
    weight = 1.0 / np.maximum(np.abs(noise_rel), 1e-12)

    def resid(p):
        tau, n_heat, n_base = p
        model = recovery_model(rep_rates, tau, n_heat, n_base, ref_rate)
        return (model - noise_rel) * weight

    x, cov, rn, conv, it = levenberg_marquardt(
        resid,
        np.array([tau0, base0 * 0.5, base0]),
        bounds=[(1e-9, np.inf), (0.0, np.inf), (1e-12, np.inf)],
    )
    res = _result(["tau", "n_heat", "n_base"], x, cov, rn, conv, it, flags)
    if rep_rates.max() * x[0] < 0.2:
        res.flags.append("knee_outside_range")
        res.sigmas["tau"] = float("inf")
    return res


# -- flux tuning -----------------------------------------------------------


def fit_flux_tuning(currents, freqs) -> FitResult:
    """Quadratic tuning fit omega(I) = omega0 - c2 I^2 (linear in params)."""
    currents = np.asarray(currents, dtype=float)
    freqs = np.asarray(freqs, dtype=float)
    if len(currents) < 3:
        raise FitError("need at least 3 currents")
    X = np.column_stack([np.ones_like(currents), -(currents**2)])
    if np.linalg.matrix_rank(X) < 2:
        raise FitError("degenerate current values (need two distinct |I|)")
    coef, res_ss, *_ = np.linalg.lstsq(X, freqs, rcond=None)
    resid = freqs - X @ coef
    dof = max(len(freqs) - 2, 1)
    cov = np.linalg.inv(X.T @ X) * float(resid @ resid) / dof
    return _result(
        ["omega0", "c2"], coef, cov, float(np.linalg.norm(resid)), True, 1
    )


# -- plain linear fit ------------------------------------------------------


def fit_linear(x, y, sigma=None) -> FitResult:
    """Weighted straight-line fit; returns slope and intercept."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    w = 1.0 / np.asarray(sigma, dtype=float) if sigma is not None else np.ones_like(y)
    X = np.column_stack([x, np.ones_like(x)]) * w[:, None]
    coef, *_ = np.linalg.lstsq(X, y * w, rcond=None)
    resid = (y - np.column_stack([x, np.ones_like(x)]) @ coef) * w
    dof = max(len(y) - 2, 1)
    cov = np.linalg.inv(X.T @ X) * float(resid @ resid) / dof
    return _result(
        ["slope", "intercept"], coef, cov, float(np.linalg.norm(resid)), True, 1
    )
