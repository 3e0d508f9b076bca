"""Gamow states: Lorentzian energy amplitudes attached to a resonance pole.

A resonance pole at z_R = E_R - i*Gamma/2 on the second sheet defines the
normalized energy amplitude

    psi_G(E) = i * sqrt(Gamma / 2 pi) / (E - z_R),

whose squared modulus is the unit Breit-Wigner distribution.  Sampled on a
full line it is (up to truncation) a unit-norm member of H2_plus, it is a
weak eigenvector of multiplication-by-E with eigenvalue z_R, and its
survival amplitude is the pure exponential exp(-i z_R t) for t >= 0.
Restricting the same amplitude to the physical half-line [0, E_max) keeps
the short-time exponential but produces the familiar non-exponential
long-time tail, which is the point of :func:`truncated_gamow`.

Survival amplitudes are evaluated by direct quadrature of
Int w(E) |psi(E)|^2 exp(-i E t) dE so that the full-line and truncated
states share one code path; the closed form exp(-i z_R t) is reserved for
the tests as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import grid as g
from .errors import (DegenerateTest, InsufficientGrid, InvalidArgument,
                     OutsideSemigroup, PoleNotInLowerHalfPlane)
from .hardy import DEFAULT_LEAKAGE_TOL, hardy_leakage

#: maximum Lorentzian mass a full-line grid may leave outside its window
DEFAULT_TAIL_TOL = 1e-3


@dataclass(frozen=True)
class GamowState:
    """Pole position plus the sampled Lorentzian amplitude.

    ``normalization`` records the sqrt(2 pi Gamma) factor relating the
    normalized amplitude to the bare pole kernel 1/(E - z_R).
    """

    z_R: complex
    wavefunction: g.SampledWaveFunction
    normalization: float

    @property
    def E_R(self):
        return self.z_R.real

    @property
    def Gamma(self):
        return -2.0 * self.z_R.imag


@dataclass(frozen=True)
class DecaySeries:
    """Survival amplitudes A(t) and probabilities |A(t)|^2 on a time grid."""

    times: np.ndarray
    amplitude: np.ndarray
    survival: np.ndarray = field(default=None)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        amp = np.asarray(self.amplitude, dtype=complex)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "amplitude", amp)
        surv = np.abs(amp) ** 2 if self.survival is None else np.asarray(self.survival)
        object.__setattr__(self, "survival", surv)
        if times.size and times[0] < 0:
            raise InvalidArgument("decay series starts before t = 0")
        if not np.allclose(self.survival, np.abs(amp) ** 2, rtol=1e-12, atol=0):
            raise InvalidArgument("survival must equal |amplitude|^2")

    def to_csv(self):
        lines = ["t,re_A,im_A,survival"]
        for t, a, s in zip(self.times, self.amplitude, self.survival):
            lines.append(f"{t:.17g},{a.real:.17g},{a.imag:.17g},{s:.17g}")
        return "\n".join(lines) + "\n"


def _lorentzian_values(z_R, points):
    Gamma = -2.0 * z_R.imag
    return 1j * np.sqrt(Gamma / (2.0 * np.pi)) / (points - z_R)


def make_gamow(z_R, grid_, tail_tol=DEFAULT_TAIL_TOL):
    """Gamow state on a full-line grid wide enough for its Lorentzian.

    The grid must leave at most ``tail_tol`` of the unit Breit-Wigner mass
    outside its window; the resulting wave function then has unit norm up
    to that truncation bound.
    """
    z_R = complex(z_R)
    if z_R.imag >= 0:
        raise PoleNotInLowerHalfPlane(f"Im z_R = {z_R.imag} must be negative")
    if grid_.kind != g.FULL_LINE:
        raise InvalidArgument("make_gamow needs a full-line grid")
    Gamma = -2.0 * z_R.imag
    tail = g.lorentzian_tail_bound(grid_, z_R.real, Gamma)
    if tail > tail_tol:
        raise InsufficientGrid(
            f"grid leaves {tail:.3g} of the Breit-Wigner mass outside its "
            f"window (allowed {tail_tol:.3g})")
    wf = g.SampledWaveFunction(
        grid=grid_, values=_lorentzian_values(z_R, grid_.points),
        role=g.ROLE_STATE, hardy_class=g.H2_PLUS,
        # it evolves like a decaying state but expands in the observable
        # basis; exempt from the role/class pairing rule on purpose
        labels={"role_class_exempt": True, "gamow": True})
    return GamowState(z_R=z_R, wavefunction=wf,
                      normalization=float(np.sqrt(2.0 * np.pi * Gamma)))


def truncated_gamow(z_R, grid_):
    """The same Lorentzian amplitude restricted to a half-line grid.

    Renormalized to unit norm, because the physical spectrum [0, E_max)
    carries less than the full Breit-Wigner mass.  Returned as a plain
    wave function; it is deliberately *not* a Hardy-class object.
    """
    z_R = complex(z_R)
    if z_R.imag >= 0:
        raise PoleNotInLowerHalfPlane(f"Im z_R = {z_R.imag} must be negative")
    if grid_.kind != g.HALF_LINE:
        raise InvalidArgument("truncated_gamow needs a half-line grid")
    vals = _lorentzian_values(z_R, grid_.points)
    norm = np.sqrt(np.sum(grid_.weights * np.abs(vals) ** 2))
    wf = g.SampledWaveFunction(grid=grid_, values=vals / norm,
                               role=g.ROLE_STATE, hardy_class=g.UNKNOWN,
                               labels={"gamow": True, "truncated": True})
    return wf


def _wavefunction_of(state):
    return state.wavefunction if isinstance(state, GamowState) else state


def survival_amplitude(state, t):
    """A(t) = Int w |psi|^2 exp(-i E t): overlap of the state with its own
    evolved self.  Defined for t >= 0 only."""
    if t < 0:
        raise OutsideSemigroup(f"t = {t} < 0 lies outside the semigroup domain")
    wf = _wavefunction_of(state)
    density = wf.grid.weights * np.abs(wf.values) ** 2
    return complex(np.sum(density * np.exp(-1j * wf.grid.points * t)))


def decay_curve(state, times):
    """Survival series over an ascending list of non-negative times."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise InvalidArgument("times must be a non-empty 1-d sequence")
    if times[0] < 0:
        raise OutsideSemigroup("decay curves are defined for t >= 0 only")
    if not np.all(np.diff(times) >= 0):
        raise InvalidArgument("times must be ascending")
    wf = _wavefunction_of(state)
    density = wf.grid.weights * np.abs(wf.values) ** 2
    E = wf.grid.points
    amps = np.empty(times.size, dtype=complex)
    steps = np.diff(times)
    if times.size > 2 and np.allclose(steps, steps[0], rtol=1e-12, atol=0.0):
        # uniform time stride: march the phases instead of re-exponentiating
        u = density * np.exp(-1j * E * times[0])
        stride = np.exp(-1j * E * steps[0])
        for i in range(times.size):
            amps[i] = np.sum(u)
            if i + 1 < times.size:
                u *= stride
    else:
        chunk = max(1, int(2e7 // E.size))
        for i in range(0, times.size, chunk):
            tt = times[i:i + chunk, None]
            amps[i:i + chunk] = np.sum(density[None, :] * np.exp(-1j * E[None, :] * tt),
                                       axis=1)
    return DecaySeries(times=times, amplitude=amps)


def eigenvalue_defect(state, test, leakage_tol=DEFAULT_LEAKAGE_TOL,
                      overlap_tol=1e-8):
    """Weak-eigenvalue residual <test|E psi> / <test|psi> - z_R.

    ``test`` must be a genuine H2_plus function on the same grid (its
    conjugate then continues into the lower half-plane, where the residue
    of the pairing sits at z_R).  Small defect = the Gamow state behaves
    as an eigenvector of multiplication-by-E with complex eigenvalue z_R.
    """
    if not isinstance(state, GamowState):
        raise InvalidArgument("eigenvalue_defect expects a GamowState")
    wf = state.wavefunction
    if test.grid != wf.grid:
        raise g.IncompatibleGrids("test function lives on a different grid")
    if test.hardy_class != g.H2_PLUS:
        raise InvalidArgument("test function must declare hardy_class H2_plus")
    if hardy_leakage(test, g.H2_PLUS) > leakage_tol:
        from .errors import ClassMismatch
        raise ClassMismatch("test function is not H2_plus within tolerance")
    denom = g.inner_product(test, wf)
    if abs(denom) < overlap_tol:
        raise DegenerateTest(f"|<test|psi>| = {abs(denom):.3g} below {overlap_tol}")
    e_wf = wf.with_values(wf.values * wf.grid.points)
    num = g.inner_product(test, e_wf)
    return num / denom - state.z_R
