"""Breit-Wigner amplitudes, cross sections, and line-shape fitting.

The resonance amplitude is a(E) = R / (E - z_R) with the pole pinned at
z_R = E_R - i*Gamma/2 in the lower half-plane, i.e. denominator
E - E_R + i*Gamma/2.  The observable line shape is

    sigma(E) = (4 pi / p^2) (2 j + 1) (Gamma/2)^2 / ((E - E_R)^2 + (Gamma/2)^2),

peaking at (4 pi / p^2)(2 j + 1).  :func:`fit_pole` inverts sampled line
shapes back to (E_R, Gamma) with a damped Gauss-Newton (Levenberg-
Marquardt) iteration; an overall scale is fitted alongside so the pole
parameters are invariant under rescaling of the data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import FitFailed, InvalidArgument


def _check_half_integer(j):
    if j < 0 or abs(2.0 * j - round(2.0 * j)) > 1e-12:
        raise InvalidArgument(f"j = {j} must be a non-negative half-integer")


@dataclass(frozen=True)
class BreitWignerParams:
    """Resonance energy, width, residue, and angular momentum."""

    E_R: float
    Gamma: float
    R: complex = 1.0 + 0.0j
    j: float = 0.0

    def __post_init__(self):
        if self.E_R <= 0:
            raise InvalidArgument("E_R must be positive (resonance above threshold)")
        if self.Gamma <= 0:
            raise InvalidArgument("Gamma must be positive")
        _check_half_integer(self.j)

    def pole(self):
        """Second-sheet pole z_R = E_R - i Gamma/2 (lower half-plane)."""
        return complex(self.E_R, -0.5 * self.Gamma)


def bw_amplitude(p, E):
    """Resonance amplitude R / (E - z_R); works on scalars and arrays."""
    E = np.asarray(E, dtype=float)
    out = p.R / (E - p.pole())
    return complex(out) if out.ndim == 0 else out


def bw_cross_section(p, momentum, E):
    """Breit-Wigner line shape (4 pi / p^2)(2j+1) * Lorentzian factor."""
    if momentum <= 0:
        raise InvalidArgument("momentum must be positive")
    E = np.asarray(E, dtype=float)
    half = 0.5 * p.Gamma
    lorentz = half ** 2 / ((E - p.E_R) ** 2 + half ** 2)
    out = (4.0 * np.pi / momentum ** 2) * (2.0 * p.j + 1.0) * lorentz
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FitReport:
    """Outcome of a line-shape fit."""

    residual: float
    iterations: int
    converged: bool
    covariance: np.ndarray       # 3x3 over (scale, E_R, Gamma)
    scale: float                 # fitted peak height / nominal peak height
    message: str = ""

    def to_json(self, params):
        return json.dumps({
            "E_R": params.E_R,
            "Gamma": params.Gamma,
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
        })


def _initial_guess(E, sigma):
    peak = np.max(sigma)
    # ties broken toward the smallest energy for determinism
    i0 = int(np.argmax(sigma))
    E_R = E[i0]
    half = 0.5 * peak
    # FWHM by linear interpolation of the half-maximum crossings
    left = E[0]
    for i in range(i0, 0, -1):
        if sigma[i - 1] <= half:
            f = (half - sigma[i - 1]) / (sigma[i] - sigma[i - 1])
            left = E[i - 1] + f * (E[i] - E[i - 1])
            break
    right = E[-1]
    for i in range(i0, E.size - 1):
        if sigma[i + 1] <= half:
            f = (sigma[i] - half) / (sigma[i] - sigma[i + 1])
            right = E[i] + f * (E[i + 1] - E[i])
            break
    Gamma = max(right - left, 1e-3 * (E[-1] - E[0]))
    return peak, E_R, Gamma


def _model_and_jacobian(theta, E):
    A, E_R, Gamma = theta
    half = 0.5 * Gamma
    d = E - E_R
    den = d ** 2 + half ** 2
    L = half ** 2 / den
    model = A * L
    # d model / d (A, E_R, Gamma)
    dA = L
    dER = A * half ** 2 * 2.0 * d / den ** 2
    dG = A * (half * d ** 2 / den ** 2)   # = A * d(L)/dGamma with dhalf=1/2: 2*half*0.5*den - half^2*0.5*2half over den^2
    J = np.column_stack([dA, dER, dG])
    return model, J


def fit_pole(samples, momentum, j=0.0, init=None, max_iter=200, tol=1e-12):
    """Recover (E_R, Gamma) from sampled (E, sigma) pairs.

    Levenberg-Marquardt on parameters (scale, E_R, Gamma) with analytic
    Jacobian and multiplicative damping.  Returns ``(BreitWignerParams,
    FitReport)``; raises :class:`FitFailed` (carrying the best parameters
    seen) if the iteration does not converge.
    """
    if momentum <= 0:
        raise InvalidArgument("momentum must be positive")
    _check_half_integer(j)
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidArgument("samples must be a sequence of (E, sigma) pairs")
    E, sigma = arr[:, 0], arr[:, 1]
    if E.size < 5:
        raise InvalidArgument("need at least 5 samples")
    if np.any(sigma < 0):
        raise InvalidArgument("sigma values must be non-negative")
    if np.ptp(E) == 0:
        raise InvalidArgument("degenerate samples: all energies equal")
    order = np.argsort(E, kind="stable")
    E, sigma = E[order], sigma[order]

    if init is not None:
        theta = np.array([np.max(sigma), init.E_R, init.Gamma])
    else:
        theta = np.array(_initial_guess(E, sigma))

    lam = 1e-3
    model, J = _model_and_jacobian(theta, E)
    r = model - sigma
    cost = float(r @ r)
    grad0 = np.linalg.norm(J.T @ r)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        JtJ = J.T @ J
        gradient = J.T @ r
        scale_diag = np.diag(np.maximum(np.diag(JtJ), 1e-300))
        try:
            step = np.linalg.solve(JtJ + lam * scale_diag, -gradient)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(JtJ + lam * scale_diag, -gradient, rcond=None)[0]
        trial = theta + step
        trial[2] = abs(trial[2]) or theta[2]    # keep the width positive
        m_trial, J_trial = _model_and_jacobian(trial, E)
        r_trial = m_trial - sigma
        cost_trial = float(r_trial @ r_trial)
        if cost_trial <= cost:
            rel_step = np.max(np.abs(step) / np.maximum(np.abs(theta), 1e-300))
            rel_cost = abs(cost - cost_trial) / max(cost, 1e-300)
            theta, model, J, r, cost = trial, m_trial, J_trial, r_trial, cost_trial
            lam = max(lam / 10.0, 1e-14)
            if rel_step < tol or rel_cost < tol ** 2:
                converged = True
                break
        else:
            lam *= 10.0
            if lam > 1e12:
                break
        if np.linalg.norm(J.T @ r) <= 1e-14 * max(grad0, 1e-300):
            converged = True
            break

    A, E_R, Gamma = theta
    dof = max(E.size - 3, 1)
    s2 = cost / dof
    try:
        cov = s2 * np.linalg.inv(J.T @ J)
    except np.linalg.LinAlgError:
        cov = np.full((3, 3), np.nan)

    nominal_peak = (4.0 * np.pi / momentum ** 2) * (2.0 * j + 1.0)
    scale = A / nominal_peak
    report = FitReport(residual=float(np.sqrt(cost)), iterations=it,
                       converged=converged, covariance=cov, scale=float(scale),
                       message="" if converged else "max iterations reached")
    # residue chosen so |a(E)|^2 reproduces the fitted line shape up to the
    # nominal kinematic factor; its phase is not constrained by |a|^2 data
    params = BreitWignerParams(E_R=float(E_R), Gamma=float(abs(Gamma)),
                               R=complex(np.sqrt(abs(scale)) * 0.5 * abs(Gamma)),
                               j=j)
    if not converged:
        raise FitFailed("fit did not converge", params=params, report=report)
    return params, report


def read_lineshape_csv(text):
    """Parse CSV with header ``E,sigma`` into an (n, 2) array."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0].replace(" ", "").lower() != "e,sigma":
        raise InvalidArgument('line-shape CSV must start with header "E,sigma"')
    try:
        rows = [tuple(float(x) for x in ln.split(",")) for ln in lines[1:]]
    except ValueError as exc:
        raise InvalidArgument(f"malformed line-shape CSV: {exc}") from exc
    if any(len(rw) != 2 for rw in rows):
        raise InvalidArgument("each CSV row must have exactly two columns")
    return np.asarray(rows, dtype=float)
