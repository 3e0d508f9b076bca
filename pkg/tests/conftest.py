"""Shared builders for rational/Gaussian test functions and small grids."""

import numpy as np
import pytest

from gamow_lab import grid as g


def rational(points, poles, amplitude=1.0):
    """Product of simple-pole factors amplitude / prod (E - p_k)."""
    out = np.full(np.shape(points), amplitude, dtype=complex)
    for p in poles:
        out = out / (points - p)
    return out


def pole_function(grid_, z0, hardy_class, role=None):
    """1/(E - z0) tagged with the Hardy class its pole position implies."""
    if role is None:
        role = g.ROLE_OBSERVABLE if hardy_class == g.H2_PLUS else g.ROLE_STATE
    return g.SampledWaveFunction(grid_, rational(grid_.points, [z0]),
                                 role=role, hardy_class=hardy_class)


def gaussian(points, center, width, momentum=0.0):
    return np.exp(-0.5 * ((points - center) / width) ** 2
                  + 1j * momentum * points).astype(complex)


@pytest.fixture(scope="session")
def line_grid_small():
    """Full-line grid cheap enough for per-test reuse."""
    return g.make_line_grid(0.0, 200.0, 2 ** 14)


@pytest.fixture(scope="session")
def line_grid_fine():
    """Wider, finer grid for extension and S-matrix work."""
    return g.make_line_grid(0.0, 400.0, 2 ** 18)
