"""Hardy-space machinery: membership tests, projections, half-plane extension.

A square-integrable boundary function f(E) belongs to H2_plus (analytic in
the upper half-plane) exactly when its Fourier transform is supported on
the non-positive frequency semiaxis, and to H2_minus (lower half-plane)
when the support is non-negative.  The transform convention that makes the
support sides come out this way is

    g(tau) = (2*pi)**(-1/2) * integral f(E) exp(+i E tau) dE,

fixed here once and recorded on every :class:`FrequencySpectrum`.  A simple
pole 1/(E - z0) with Im z0 < 0 then has its spectrum on tau <= 0, which the
tests pin down by residue calculus.

Discretely, the transform is a unitary DFT evaluated on frequencies offset
by half a bin, tau_m = (m - N/2 + 1/2) * dtau.  The offset means no sample
sits at tau = 0, so the L2(R) = H2_plus (+) H2_minus splitting becomes an
exact complementary bin mask: reconstruction, orthogonality and Pythagoras
hold to machine precision, and the measure-zero boundary point never has
to be apportioned between the two halves.

Projections are orthogonal with respect to the uniform-measure pairing
dE * sum(conj(f) g) under which the DFT is unitary (see
:func:`uniform_inner_product`); for functions that decay inside the grid
window this coincides with the trapezoidal ``grid.inner_product`` up to
endpoint terms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import grid as g
from .errors import (ClassMismatch, InvalidArgument, NeedsFullLine,
                     TooCloseToAxis, UndefinedLeakage)

CONVENTION = ("g(tau) = (2*pi)**-0.5 * Int f(E) exp(+i*E*tau) dE; "
              "frequencies offset by half a bin (no tau = 0 sample); "
              "H2_plus spectra live on tau < 0, H2_minus on tau > 0")

#: leakage above this fraction disqualifies a function from an operation
#: that needs genuine Hardy-class membership
DEFAULT_LEAKAGE_TOL = 1e-6


@dataclass(frozen=True)
class FrequencySpectrum:
    """Discrete Fourier data of a full-line wave function."""

    freqs: np.ndarray
    amplitudes: np.ndarray
    convention: str = CONVENTION

    def __post_init__(self):
        object.__setattr__(self, "freqs", np.asarray(self.freqs, dtype=float))
        object.__setattr__(self, "amplitudes",
                           np.asarray(self.amplitudes, dtype=complex))

    @property
    def d_tau(self):
        return float(self.freqs[1] - self.freqs[0])

    def energy(self):
        """Total spectral energy sum |g|^2 dtau (Parseval partner of
        the uniform-measure boundary energy)."""
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.d_tau)


def _require_full_line(f):
    if f.grid.kind != g.FULL_LINE:
        raise NeedsFullLine("operation requires a full-line grid")
    if not f.grid.is_uniform:
        raise NeedsFullLine("operation requires a uniform grid")
    if f.grid.n % 2 != 0:
        raise InvalidArgument("full-line spectral operations need an even "
                              "number of samples")


def _transform_setup(grid_):
    n = grid_.n
    dE = grid_.spacing
    dtau = 2.0 * np.pi / (n * dE)
    taus = (np.arange(n) - n / 2 + 0.5) * dtau
    return n, dE, dtau, taus


def fourier_transform(f):
    """Unitary spectrum of a full-line wave function (see module docstring).

    Parseval holds exactly against the uniform-measure boundary energy
    ``spacing * sum |f|^2``.
    """
    _require_full_line(f)
    n, dE, dtau, taus = _transform_setup(f.grid)
    e0 = f.grid.points[0]
    sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    h = f.values * sign * np.exp(1j * np.pi * np.arange(n) / n)
    amps = (dE / np.sqrt(2.0 * np.pi)) * np.exp(1j * e0 * taus) * (n * np.fft.ifft(h))
    return FrequencySpectrum(freqs=taus, amplitudes=amps)


def inverse_fourier_transform(spec, grid_):
    """Boundary values on ``grid_`` from a spectrum produced for it."""
    n, dE, dtau, taus = _transform_setup(grid_)
    if spec.freqs.size != n or abs(spec.d_tau - dtau) > 1e-6 * dtau:
        raise InvalidArgument("spectrum does not match the target grid")
    e0 = grid_.points[0]
    a = spec.amplitudes * np.exp(-1j * e0 * taus)
    idx = np.arange(n)
    sign = np.where(idx % 2 == 0, 1.0, -1.0)
    vals = (dtau / np.sqrt(2.0 * np.pi)) * sign * np.exp(-1j * np.pi * idx / n) * np.fft.fft(a)
    return vals


def uniform_inner_product(f, h):
    """Riemann-sum pairing spacing * sum conj(f) h.

    This is the measure under which the spectral transform is unitary and
    the Hardy projections are exactly orthogonal.  It differs from the
    trapezoidal ``grid.inner_product`` only in the two endpoint weights.
    """
    if f.grid != h.grid:
        raise g.IncompatibleGrids("wave functions live on different grids")
    return complex(f.grid.spacing * np.sum(np.conj(f.values) * h.values))


def uniform_energy(f):
    """spacing * sum |f|^2 — the boundary energy paired with the spectrum."""
    return float(f.grid.spacing * np.sum(np.abs(f.values) ** 2))


def _project(f, keep_negative):
    _require_full_line(f)
    spec = fourier_transform(f)
    mask = spec.freqs < 0 if keep_negative else spec.freqs > 0
    kept = np.where(mask, spec.amplitudes, 0.0)
    vals = inverse_fourier_transform(
        FrequencySpectrum(freqs=spec.freqs, amplitudes=kept), f.grid)
    cls = g.H2_PLUS if keep_negative else g.H2_MINUS
    role = g.ROLE_OBSERVABLE if keep_negative else g.ROLE_STATE
    return g.SampledWaveFunction(grid=f.grid, values=vals, role=role,
                                 hardy_class=cls, labels=dict(f.labels))


def project_plus(f):
    """Orthogonal projection onto H2_plus (spectrum masked to tau < 0)."""
    return _project(f, keep_negative=True)


def project_minus(f):
    """Orthogonal projection onto H2_minus (spectrum masked to tau > 0)."""
    return _project(f, keep_negative=False)


def hardy_leakage(f, target):
    """Fraction of spectral energy on the side forbidden for ``target``.

    0 means perfect membership, 1 means the function lies entirely in the
    opposite Hardy class.
    """
    if target not in (g.H2_PLUS, g.H2_MINUS):
        raise InvalidArgument(f"target must be H2_plus or H2_minus, got {target!r}")
    _require_full_line(f)
    spec = fourier_transform(f)
    total = np.sum(np.abs(spec.amplitudes) ** 2)
    if total == 0.0:
        raise UndefinedLeakage("leakage of the zero function is undefined")
    forbidden = spec.freqs > 0 if target == g.H2_PLUS else spec.freqs < 0
    return float(np.sum(np.abs(spec.amplitudes[forbidden]) ** 2) / total)


@dataclass(frozen=True)
class HalfPlanePoint:
    """A complex energy with an informational sheet label."""

    z: complex
    sheet: str = "physical"

    def __post_init__(self):
        if self.sheet not in ("physical", "second"):
            raise InvalidArgument(f"unknown sheet label {self.sheet!r}")


def _extension_values(spec, zs, hardy_class):
    """Evaluate the analytic extension at points ``zs`` from a spectrum.

    For H2_plus the spectrum lives on tau < 0 and exp(-i z tau) decays for
    Im z > 0; mirrored for H2_minus.  This is the Cauchy boundary-value
    integral evaluated through its Paley-Wiener form, so it stays stable
    arbitrarily close to the real axis.
    """
    mask = spec.freqs < 0 if hardy_class == g.H2_PLUS else spec.freqs > 0
    taus = spec.freqs[mask]
    amps = spec.amplitudes[mask]
    # amplitudes at the noise floor contribute nothing but cost; drop them
    keep = np.abs(amps) > 1e-17 * np.max(np.abs(amps))
    if np.any(keep):
        taus, amps = taus[keep], amps[keep]
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    pref = spec.d_tau / np.sqrt(2.0 * np.pi)
    out = np.empty(zs.shape, dtype=complex)
    chunk = max(1, int(4e6 // max(taus.size, 1)))
    for i in range(0, zs.size, chunk):
        zz = zs[i:i + chunk, None]
        out[i:i + chunk] = pref * np.sum(amps[None, :] * np.exp(-1j * zz * taus[None, :]),
                                         axis=1)
    return out


def extend(f, p, leakage_tol=DEFAULT_LEAKAGE_TOL):
    """Value of the Hardy extension of ``f`` at the half-plane point ``p``.

    ``f`` must carry a declared Hardy class matching the half-plane of
    ``p.z`` and actually belong to it (leakage below ``leakage_tol``).
    Points closer to the real axis than two grid spacings are rejected:
    there the discrete extension is no better than the boundary data
    itself (error estimate ~ spacing / |Im z|).
    """
    _require_full_line(f)
    z = complex(p.z if isinstance(p, HalfPlanePoint) else p)
    if z.imag == 0.0:
        raise InvalidArgument("extension point must have Im z != 0")
    wanted = g.H2_PLUS if z.imag > 0 else g.H2_MINUS
    if f.hardy_class != wanted:
        raise ClassMismatch(
            f"point with Im z {'>' if z.imag > 0 else '<'} 0 needs a "
            f"{wanted} function, got {f.hardy_class}")
    if hardy_leakage(f, wanted) > leakage_tol:
        raise ClassMismatch(f"function leaks more than {leakage_tol} outside {wanted}")
    if abs(z.imag) < 2.0 * f.grid.spacing:
        raise TooCloseToAxis(
            f"|Im z| = {abs(z.imag):.3g} is inside the exclusion zone of "
            f"two grid spacings ({2 * f.grid.spacing:.3g})")
    spec = fourier_transform(f)
    return complex(_extension_values(spec, z, wanted)[0])


def norm_profile(f, alphas, leakage_tol=DEFAULT_LEAKAGE_TOL):
    """Line norms Int |f(x + i alpha)|^2 dx for each alpha.

    ``f`` must be in H2_plus.  Each horizontal line multiplies the
    spectrum by exp(alpha * tau) on tau < 0, so the sequence is exactly
    non-increasing in alpha and bounded by the boundary energy — the
    uniform bound that characterizes Hardy functions.
    """
    alphas = np.asarray(alphas, dtype=float)
    if alphas.ndim != 1 or alphas.size == 0:
        raise InvalidArgument("alphas must be a non-empty 1-d sequence")
    if not np.all(alphas > 0):
        raise InvalidArgument("alphas must be positive")
    if not np.all(np.diff(alphas) >= 0):
        raise InvalidArgument("alphas must be ascending")
    _require_full_line(f)
    if hardy_leakage(f, g.H2_PLUS) > leakage_tol:
        raise ClassMismatch("norm_profile needs an H2_plus function")
    spec = fourier_transform(f)
    mask = spec.freqs < 0
    taus = spec.freqs[mask]
    pw = np.abs(spec.amplitudes[mask]) ** 2
    out = [float(np.sum(pw * np.exp(2.0 * a * taus)) * spec.d_tau) for a in alphas]
    return out
