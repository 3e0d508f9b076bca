import numpy as np
import pytest

from gamow_lab import grid as g
from gamow_lab import hardy
from gamow_lab.errors import (ClassMismatch, InvalidArgument, NeedsFullLine,
                              TooCloseToAxis, UndefinedLeakage)

from conftest import gaussian, pole_function, rational


def _random_function(grid_, rng):
    vals = (gaussian(grid_.points, rng.uniform(-20, 20), rng.uniform(0.5, 5),
                     rng.uniform(-1, 1))
            + rational(grid_.points, [complex(rng.uniform(-5, 5),
                                              rng.choice([-1, 1]) * rng.uniform(0.5, 2))]))
    return g.SampledWaveFunction(grid_, vals)


def test_transform_roundtrip_and_parseval(line_grid_small):
    rng = np.random.default_rng(21)
    for _ in range(10):
        f = _random_function(line_grid_small, rng)
        spec = hardy.fourier_transform(f)
        back = hardy.inverse_fourier_transform(spec, line_grid_small)
        scale = np.max(np.abs(f.values))
        assert np.max(np.abs(back - f.values)) < 1e-12 * scale
        assert abs(spec.energy() - hardy.uniform_energy(f)) < 1e-10 * spec.energy()


def test_spectrum_has_no_zero_frequency(line_grid_small):
    f = _random_function(line_grid_small, np.random.default_rng(1))
    spec = hardy.fourier_transform(f)
    assert np.min(np.abs(spec.freqs)) > 0.4 * spec.d_tau


def test_full_line_preconditions():
    halfline = g.make_halfline_grid(10.0, 64)
    f = g.SampledWaveFunction(halfline, np.ones(64, dtype=complex))
    with pytest.raises(NeedsFullLine):
        hardy.fourier_transform(f)
    odd = g.EnergyGrid(points=np.linspace(-1, 1, 33),
                       weights=np.full(33, 2.0 / 32), kind=g.FULL_LINE)
    with pytest.raises(InvalidArgument):
        hardy.fourier_transform(g.SampledWaveFunction(odd, np.ones(33, dtype=complex)))


def test_projection_reconstruction_orthogonality(line_grid_small):
    rng = np.random.default_rng(42)
    for _ in range(10):
        f = _random_function(line_grid_small, rng)
        fp = hardy.project_plus(f)
        fm = hardy.project_minus(f)
        energy = hardy.uniform_energy(f)
        recon = np.max(np.abs(fp.values + fm.values - f.values))
        assert recon < 1e-12 * np.max(np.abs(f.values))
        cross = abs(hardy.uniform_inner_product(fp, fm))
        assert cross < 1e-12 * energy
        pyth = abs(hardy.uniform_energy(fp) + hardy.uniform_energy(fm) - energy)
        assert pyth < 1e-12 * energy


def test_projection_idempotence_and_tags(line_grid_small):
    f = _random_function(line_grid_small, np.random.default_rng(3))
    fp = hardy.project_plus(f)
    fm = hardy.project_minus(f)
    assert fp.hardy_class == g.H2_PLUS and fp.role == g.ROLE_OBSERVABLE
    assert fm.hardy_class == g.H2_MINUS and fm.role == g.ROLE_STATE
    again = hardy.project_plus(fp)
    assert np.max(np.abs(again.values - fp.values)) < 1e-13 * np.max(np.abs(fp.values))


def test_pole_function_classification():
    # Paley-Wiener: pole below the axis -> H2_plus, above -> H2_minus.
    # The residue-calculus oracle fixes which side carries the spectrum:
    # closing the Fourier contour up/down picks the pole iff it is on
    # that side, so all spectral energy sits on a single tau sign.
    grid_ = g.make_line_grid(0.0, 32000.0, 2 ** 18)
    upper = pole_function(grid_, 1.0 + 0.8j, g.H2_MINUS)
    lower = pole_function(grid_, -2.0 - 1.2j, g.H2_PLUS)
    assert hardy.hardy_leakage(lower, g.H2_PLUS) < 1e-6
    assert hardy.hardy_leakage(lower, g.H2_MINUS) > 1.0 - 1e-6
    assert hardy.hardy_leakage(upper, g.H2_MINUS) < 1e-6
    assert hardy.hardy_leakage(upper, g.H2_PLUS) > 1.0 - 1e-6


def test_leakage_of_zero_function(line_grid_small):
    f = g.SampledWaveFunction(line_grid_small,
                              np.zeros(line_grid_small.n, dtype=complex))
    with pytest.raises(UndefinedLeakage):
        hardy.hardy_leakage(f, g.H2_PLUS)
    with pytest.raises(InvalidArgument):
        hardy.hardy_leakage(_random_function(line_grid_small,
                                             np.random.default_rng(0)), "H2")


def test_extend_matches_pole_formula():
    # extension of 1/(E - z0) evaluated off-axis must match the rational
    # function itself (Cauchy integral oracle)
    grid_ = g.make_line_grid(0.0, 32000.0, 2 ** 20)
    z0 = 1.0 - 0.8j
    f = pole_function(grid_, z0, g.H2_PLUS)
    for z in (2.0 + 1.0j, -1.0 + 0.5j, 0.5 + 3.0j):
        got = hardy.extend(f, hardy.HalfPlanePoint(z))
        exact = 1.0 / (z - z0)
        assert abs(got - exact) < 2e-4 * abs(exact)


def test_extend_preconditions(line_grid_small):
    f = hardy.project_plus(g.SampledWaveFunction(
        line_grid_small, rational(line_grid_small.points, [1.0 - 0.8j]),
        role=g.ROLE_OBSERVABLE))
    with pytest.raises(ClassMismatch):
        hardy.extend(f, hardy.HalfPlanePoint(1.0 - 1.0j))   # wrong half-plane
    with pytest.raises(TooCloseToAxis):
        hardy.extend(f, hardy.HalfPlanePoint(1.0 + 1e-9j))
    with pytest.raises(InvalidArgument):
        hardy.extend(f, 1.0 + 0.0j)
    mixed = g.SampledWaveFunction(
        line_grid_small,
        rational(line_grid_small.points, [1.0 - 0.8j])
        + rational(line_grid_small.points, [1.0 + 0.8j]),
        role=g.ROLE_OBSERVABLE, hardy_class=g.H2_PLUS)
    with pytest.raises(ClassMismatch):                      # leaks half its energy
        hardy.extend(mixed, hardy.HalfPlanePoint(0.0 + 1.0j))
    with pytest.raises(InvalidArgument):
        hardy.HalfPlanePoint(1.0 + 1.0j, sheet="third")


def test_norm_profile_closed_form():
    # Int |1/(x + i(b + alpha))|^2 dx = pi / (b + alpha)
    grid_ = g.make_line_grid(0.0, 16000.0, 2 ** 18)
    f = pole_function(grid_, 0.0 - 0.5j, g.H2_PLUS)
    alphas = np.array([0.25, 0.5, 1.0, 2.0, 4.0])
    got = hardy.norm_profile(f, alphas)
    exact = np.pi / (0.5 + alphas)
    assert np.max(np.abs(np.asarray(got) / exact - 1.0)) < 1e-3


def test_norm_profile_monotone_and_bounded(line_grid_small):
    rng = np.random.default_rng(17)
    alphas = np.linspace(0.1, 5.0, 12)
    for _ in range(10):
        f = hardy.project_plus(_random_function(line_grid_small, rng))
        prof = np.asarray(hardy.norm_profile(f, alphas))
        assert np.all(np.diff(prof) <= 1e-8 * prof[0])
        assert prof[0] <= hardy.uniform_energy(f) * (1.0 + 1e-12)


def test_norm_profile_validation(line_grid_small):
    f = hardy.project_plus(_random_function(line_grid_small,
                                            np.random.default_rng(2)))
    with pytest.raises(InvalidArgument):
        hardy.norm_profile(f, [-1.0, 1.0])
    with pytest.raises(InvalidArgument):
        hardy.norm_profile(f, [2.0, 1.0])
    with pytest.raises(ClassMismatch):
        hardy.norm_profile(pole_function(line_grid_small, 1.0 + 0.8j, g.H2_MINUS),
                           [1.0])
