"""Semigroup time evolution of states and observables, with causality checks.

In the energy representation the Hamiltonian acts by multiplication with E,
so evolving a state multiplies its wave function by exp(-i E t) and evolving
an observable by exp(+i E t).  Both multipliers are unimodular: norms are
preserved for *any* t.  The time asymmetry lives elsewhere — only t >= 0
keeps a state inside H2_minus (and an observable inside H2_plus), which is
why the API refuses t < 0 unless the caller explicitly opts into diagnostic
mode to watch the Hardy class break.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import grid as g
from . import hardy
from .errors import ClassRequired, InvalidArgument, OutsideSemigroup

SCHRODINGER_STATE = "schrodinger_state"
HEISENBERG_OBSERVABLE = "heisenberg_observable"


@dataclass(frozen=True)
class EvolutionRequest:
    """A single evolution job: time, direction, and the semigroup switch."""

    t: float
    direction: str = SCHRODINGER_STATE
    enforce_semigroup: bool = True

    def __post_init__(self):
        if self.direction not in (SCHRODINGER_STATE, HEISENBERG_OBSERVABLE):
            raise InvalidArgument(f"unknown direction {self.direction!r}")
        if self.enforce_semigroup and self.t < 0:
            raise OutsideSemigroup("t < 0 lies outside the semigroup domain")


def _check_time(t, enforce_semigroup):
    if enforce_semigroup and t < 0:
        raise OutsideSemigroup(
            f"t = {t} < 0: states and observables evolve for t >= 0 only "
            "(pass enforce_semigroup=False for diagnostics)")


def evolve_state(phi, t, enforce_semigroup=True):
    """Multiply by exp(-i E t); defined for t >= 0 (preparation at t0 = 0)."""
    if phi.role != g.ROLE_STATE:
        raise InvalidArgument("evolve_state expects a wave function with role 'state'")
    _check_time(t, enforce_semigroup)
    return phi.with_values(phi.values * np.exp(-1j * phi.grid.points * t))


def evolve_observable(psi, t, enforce_semigroup=True):
    """Multiply by exp(+i E t); the Heisenberg-picture partner of evolve_state."""
    if psi.role != g.ROLE_OBSERVABLE:
        raise InvalidArgument("evolve_observable expects role 'observable'")
    _check_time(t, enforce_semigroup)
    return psi.with_values(psi.values * np.exp(1j * psi.grid.points * t))


def born_probability(psi, phi, t):
    """|<psi | phi(t)>|^2, the detector probability at time t >= t0 = 0.

    Identical to |<psi(t) | phi>|^2: evolving the state forward or the
    observable forward is the same inner product.
    """
    if t < 0:
        raise OutsideSemigroup("Born probabilities exist for t >= 0 only")
    evolved = phi.with_values(phi.values * np.exp(-1j * phi.grid.points * t))
    return float(abs(g.inner_product(psi, evolved)) ** 2)


def causality_leak(f, t):
    """Hardy-class leakage of f evolved to time t (enforcement off).

    Evolution shifts the spectral support by t (states) or -t (observables);
    for t >= 0 the support moves deeper into the allowed half-line and the
    leakage stays at its baseline, while t < 0 pushes a slice of spectral
    energy across tau = 0.  For the canonical pole function 1/(E - (a+ib)),
    b > 0, in H2_minus the leaked fraction is 1 - exp(-2 b |t|).
    """
    if f.hardy_class == g.UNKNOWN:
        raise ClassRequired("causality_leak needs a declared hardy_class")
    if f.hardy_class == g.H2_MINUS:
        mult = np.exp(-1j * f.grid.points * t)     # Schroedinger direction
    else:
        mult = np.exp(1j * f.grid.points * t)      # Heisenberg direction
    evolved = f.with_values(f.values * mult)
    return hardy.hardy_leakage(evolved, f.hardy_class)
