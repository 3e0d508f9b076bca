"""Rational unitary S-matrix models and pole/background decomposition.

The partial-wave S-matrix is modelled as a finite Blaschke-type product
S(E) = prod_k (E - conj(z_k)) / (E - z_k) with every pole z_k strictly in
the lower half-plane; this is unimodular on the real axis and meromorphic
everywhere, so the "second sheet" is the literal analytic continuation of
the same rational function.

A matrix element (psi, S phi) = int_0^inf psi*(E) S(E) phi(E) dE, taken
between an out-observable psi in H2+ and an in-state phi in H2-, is
decomposed by rotating the contour onto the negative imaginary axis: the
resonance pole contributes -2*pi*i * Res[S] * psibar(z_R) * phi(z_R) while
the rotated ray carries the non-resonant background.  Both analytic
continuations are obtained from the sampled boundary data through the
Hardy-space machinery, never from a closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import grid as g
from . import hardy
from .errors import (ClassMismatch, DecompositionInconsistent, IncompatibleGrids,
                     InvalidArgument, PoleNotInLowerHalfPlane)

CLOSURE_TOL = 1e-6


@dataclass(frozen=True)
class SMatrixModel:
    """Unitary rational model S(E) = prod (E - z_k*)/(E - z_k)."""

    poles: tuple = field(default_factory=tuple)

    def __post_init__(self):
        poles = tuple(complex(p) for p in self.poles)
        for p in poles:
            if p.imag >= 0:
                raise PoleNotInLowerHalfPlane(
                    f"S-matrix pole {p} must lie strictly in the lower half-plane")
        object.__setattr__(self, "poles", poles)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.ones(z.shape, dtype=complex)
        for p in self.poles:
            out = out * (z - np.conj(p)) / (z - p)
        return complex(out) if out.ndim == 0 else out

    def residue(self, pole):
        """Residue of S at one of its (simple) poles."""
        if pole not in self.poles:
            raise InvalidArgument(f"{pole} is not a pole of this model")
        res = pole - np.conj(pole)
        for q in self.poles:
            if q != pole:
                res *= (pole - np.conj(q)) / (pole - q)
        return complex(res)


def single_pole_smatrix(z_R):
    """One-resonance model S(E) = (E - z_R*)/(E - z_R); needs Im z_R < 0."""
    return SMatrixModel(poles=(complex(z_R),))


@dataclass(frozen=True)
class DecompositionResult:
    """Pole term, ray background, direct quadrature, and their mismatch."""

    pole_term: complex
    background: complex
    direct: complex
    closure_defect: float

    def __iter__(self):
        return iter((self.pole_term, self.background))


def _halfline_weights(grid_):
    """Quadrature weights for int_0^inf over the E >= 0 samples.

    Trapezoid over the sampled half-line plus a linearly extrapolated
    strip between E = 0 and the first non-negative sample (full-line
    grids with even n straddle the origin, so E = 0 itself is not a node).
    """
    E = grid_.points
    idx = np.nonzero(E >= 0)[0]
    if idx.size < 4:
        raise InvalidArgument("grid has too few E >= 0 samples")
    dE = grid_.spacing
    w = np.full(idx.size, dE)
    w[0] = w[-1] = 0.5 * dE
    E1 = E[idx[0]]
    if E1 > 0:
        # strip [0, E1]: integral of the line through (E1, f1), (E2, f2)
        w[0] += E1 + 0.5 * E1 ** 2 / dE
        w[1] -= 0.5 * E1 ** 2 / dE
    return idx, w


def _check_pair(psi, phi, leakage_tol):
    if psi.grid != phi.grid:
        raise IncompatibleGrids("psi and phi must share a grid")
    if psi.role != g.ROLE_OBSERVABLE or psi.hardy_class != g.H2_PLUS:
        raise ClassMismatch("psi must be an H2+ observable")
    if phi.role != g.ROLE_STATE or phi.hardy_class != g.H2_MINUS:
        raise ClassMismatch("phi must be an H2- state")
    for f in (psi, phi):
        leak = hardy.hardy_leakage(f, f.hardy_class)
        if leak > leakage_tol:
            raise ClassMismatch(
                f"{f.hardy_class} leakage {leak:.3e} exceeds {leakage_tol:.3e}")


def smatrix_element(psi, phi, S, leakage_tol=hardy.DEFAULT_LEAKAGE_TOL):
    """Quadrature of int_0^inf psi*(E) S(E) phi(E) dE on the shared grid."""
    _check_pair(psi, phi, leakage_tol)
    idx, w = _halfline_weights(psi.grid)
    E = psi.grid.points[idx]
    vals = np.conj(psi.values[idx]) * S(E) * phi.values[idx]
    return complex(np.sum(w * vals))


def _ray_nodes(Y, n_panels, order):
    """Gauss-Legendre nodes/weights on [0, Y] with dyadic panel refinement
    toward the origin, where the rotated integrand varies fastest."""
    x, wts = np.polynomial.legendre.leggauss(order)
    edges = [0.0] + [Y * 2.0 ** (k - n_panels + 1) for k in range(n_panels)]
    ys, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        ys.append(0.5 * (b - a) * x + 0.5 * (b + a))
        ws.append(0.5 * (b - a) * wts)
    return np.concatenate(ys), np.concatenate(ws)


def pole_background_decomposition(psi, phi, S, leakage_tol=hardy.DEFAULT_LEAKAGE_TOL,
                                  closure_tol=CLOSURE_TOL, ray_length=None,
                                  n_panels=16, panel_order=12):
    """Split (psi, S phi) into resonance pole term plus ray background.

    The integration contour [0, inf) is rotated to the ray 0 -> -iY; the
    quarter-circle at infinity drops out for integrands decaying faster
    than 1/|E|, leaving ``direct = pole_term + background``.  The mismatch
    is reported as ``closure_defect`` (relative when direct is non-zero)
    and raises :class:`DecompositionInconsistent` above ``closure_tol``.
    """
    direct = smatrix_element(psi, phi, S, leakage_tol=leakage_tol)

    spec_psi = hardy.fourier_transform(psi)
    spec_phi = hardy.fourier_transform(phi)

    # psibar is the H2- continuation of psi*: psibar(z) = [psi(z*)]*
    def psibar(zs):
        return np.conj(hardy._extension_values(spec_psi, np.conj(zs), g.H2_PLUS))

    def phival(zs):
        return hardy._extension_values(spec_phi, zs, g.H2_MINUS)

    pole_term = 0.0 + 0.0j
    for z_R in S.poles:
        res = S.residue(z_R)
        pole_term += -2j * np.pi * res * complex(psibar(np.array([z_R]))[0]) \
            * complex(phival(np.array([z_R]))[0])

    if ray_length is None:
        scale = max(abs(z) for z in S.poles) if S.poles else 1.0
        Y = 64.0 * max(1.0, scale)
        probe = abs(complex(psibar(np.array([-1j * Y]))[0])
                    * complex(phival(np.array([-1j * Y]))[0]))
        while probe * Y > 1e-12 * max(abs(direct), 1e-30) and Y < 1e9:
            Y *= 4.0
            probe = abs(complex(psibar(np.array([-1j * Y]))[0])
                        * complex(phival(np.array([-1j * Y]))[0]))
    else:
        Y = float(ray_length)
        if Y <= 0:
            raise InvalidArgument("ray_length must be positive")

    ys, ws = _ray_nodes(Y, n_panels, panel_order)
    zs = -1j * ys
    integrand = psibar(zs) * S(zs) * phival(zs)
    background = complex(np.sum(-1j * ws * integrand))   # dz = -i dy

    mismatch = abs(pole_term + background - direct)
    defect = mismatch / abs(direct) if direct != 0 else mismatch
    result = DecompositionResult(pole_term=complex(pole_term),
                                 background=background,
                                 direct=direct,
                                 closure_defect=float(defect))
    if defect > closure_tol:
        raise DecompositionInconsistent(
            f"pole + background misses direct by {defect:.3e} (tol {closure_tol:.3e})",
            direct=direct, pole_term=complex(pole_term),
            background=background, defect=float(defect))
    return result
