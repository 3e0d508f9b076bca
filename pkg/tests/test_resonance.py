import numpy as np
import pytest

from gamow_lab import resonance
from gamow_lab.errors import FitFailed, InvalidArgument


def _samples(p, momentum, n=401, span=10.0):
    E = np.linspace(p.E_R - span * p.Gamma, p.E_R + span * p.Gamma, n)
    return np.column_stack([E, resonance.bw_cross_section(p, momentum, E)])


def test_params_validation():
    resonance.BreitWignerParams(E_R=2.0, Gamma=0.4, j=1.5)
    with pytest.raises(InvalidArgument):
        resonance.BreitWignerParams(E_R=-1.0, Gamma=0.4)
    with pytest.raises(InvalidArgument):
        resonance.BreitWignerParams(E_R=2.0, Gamma=0.0)
    with pytest.raises(InvalidArgument):
        resonance.BreitWignerParams(E_R=2.0, Gamma=0.4, j=0.3)


def test_pole_position():
    p = resonance.BreitWignerParams(E_R=2.0, Gamma=0.4)
    assert p.pole() == 2.0 - 0.2j


def test_bw_amplitude():
    p = resonance.BreitWignerParams(E_R=2.0, Gamma=0.4, R=0.5 + 0.25j)
    E = np.array([1.0, 2.0, 3.0])
    got = resonance.bw_amplitude(p, E)
    assert np.allclose(got, (0.5 + 0.25j) / (E - (2.0 - 0.2j)), rtol=1e-15)
    assert resonance.bw_amplitude(p, 2.0) == (0.5 + 0.25j) / 0.2j


def test_bw_cross_section_shape():
    p = resonance.BreitWignerParams(E_R=2.0, Gamma=0.4, j=0.5)
    momentum = 1.7
    peak = resonance.bw_cross_section(p, momentum, 2.0)
    assert abs(peak - (4 * np.pi / momentum ** 2) * 2.0) < 1e-12
    # half maximum at E_R +- Gamma/2
    for E in (2.0 - 0.2, 2.0 + 0.2):
        assert abs(resonance.bw_cross_section(p, momentum, E) - 0.5 * peak) < 1e-12
    # line shape is |amplitude|^2 up to the kinematic factor
    E = np.linspace(1.0, 3.0, 101)
    amp2 = np.abs(resonance.bw_amplitude(p, E)) ** 2
    sig = resonance.bw_cross_section(p, momentum, E)
    ratio = sig / amp2
    assert np.max(np.abs(ratio / ratio[0] - 1.0)) < 1e-12
    with pytest.raises(InvalidArgument):
        resonance.bw_cross_section(p, -1.0, 2.0)


def test_fit_noise_free_roundtrip():
    p = resonance.BreitWignerParams(E_R=3.2, Gamma=0.45, j=0.5)
    fitted, report = resonance.fit_pole(_samples(p, 1.7), 1.7, j=0.5)
    assert abs(fitted.E_R / p.E_R - 1.0) < 1e-9
    assert abs(fitted.Gamma / p.Gamma - 1.0) < 1e-9
    assert report.converged and report.residual < 1e-10
    assert abs(report.scale - 1.0) < 1e-9


def test_fit_scale_equivariance():
    # multiplying the data by a constant must not move the pole parameters
    p = resonance.BreitWignerParams(E_R=3.2, Gamma=0.45)
    base = _samples(p, 1.0)
    f1, _ = resonance.fit_pole(base, 1.0)
    for factor in (1e-6, 1e6):
        scaled = np.column_stack([base[:, 0], factor * base[:, 1]])
        f2, r2 = resonance.fit_pole(scaled, 1.0)
        assert abs(f2.E_R - f1.E_R) < 1e-9 * f1.E_R
        assert abs(f2.Gamma - f1.Gamma) < 1e-9 * f1.Gamma
        assert abs(r2.scale / factor - 1.0) < 1e-9


def test_fit_noisy_and_unsorted():
    rng = np.random.default_rng(42)
    p = resonance.BreitWignerParams(E_R=3.2, Gamma=0.45)
    data = _samples(p, 1.0)
    noisy = data.copy()
    noisy[:, 1] = np.maximum(noisy[:, 1] * (1 + 0.01 * rng.standard_normal(len(noisy))), 0.0)
    rng.shuffle(noisy)
    fitted, report = resonance.fit_pole(noisy, 1.0)
    assert report.converged
    assert abs(fitted.E_R / 3.2 - 1.0) < 2e-3
    assert abs(fitted.Gamma / 0.45 - 1.0) < 2e-2
    # covariance is a positive 3x3 matrix with finite entries
    assert report.covariance.shape == (3, 3)
    assert np.all(np.isfinite(report.covariance))
    assert np.all(np.linalg.eigvalsh(report.covariance) > 0)


def test_fit_with_initial_guess():
    p = resonance.BreitWignerParams(E_R=3.2, Gamma=0.45)
    init = resonance.BreitWignerParams(E_R=3.0, Gamma=0.6)
    fitted, _ = resonance.fit_pole(_samples(p, 1.0), 1.0, init=init)
    assert abs(fitted.E_R / 3.2 - 1.0) < 1e-9


def test_fit_failure_carries_best_params():
    p = resonance.BreitWignerParams(E_R=3.2, Gamma=0.45)
    data = _samples(p, 1.0)
    noisy = data.copy()
    noisy[:, 1] *= (1 + 0.05 * np.random.default_rng(0).standard_normal(len(noisy)))
    noisy[:, 1] = np.maximum(noisy[:, 1], 0.0)
    with pytest.raises(FitFailed) as exc_info:
        resonance.fit_pole(noisy, 1.0, max_iter=1)
    err = exc_info.value
    assert err.params is not None and err.report is not None
    assert not err.report.converged
    assert err.params.Gamma > 0


def test_fit_input_validation():
    p = resonance.BreitWignerParams(E_R=3.2, Gamma=0.45)
    good = _samples(p, 1.0)
    with pytest.raises(InvalidArgument):
        resonance.fit_pole(good[:3], 1.0)
    with pytest.raises(InvalidArgument):
        resonance.fit_pole(good, -1.0)
    bad = good.copy()
    bad[5, 1] = -1.0
    with pytest.raises(InvalidArgument):
        resonance.fit_pole(bad, 1.0)
    flat = good.copy()
    flat[:, 0] = 2.0
    with pytest.raises(InvalidArgument):
        resonance.fit_pole(flat, 1.0)


def test_read_lineshape_csv():
    text = "E,sigma\n1.0,0.5\n2.0,1.5\n"
    arr = resonance.read_lineshape_csv(text)
    assert arr.shape == (2, 2) and arr[1, 1] == 1.5
    with pytest.raises(InvalidArgument):
        resonance.read_lineshape_csv("x,y\n1,2\n")
    with pytest.raises(InvalidArgument):
        resonance.read_lineshape_csv("E,sigma\n1,2,3\n")
    with pytest.raises(InvalidArgument):
        resonance.read_lineshape_csv("E,sigma\n1,abc\n")


def test_fit_report_json():
    p = resonance.BreitWignerParams(E_R=3.2, Gamma=0.45)
    fitted, report = resonance.fit_pole(_samples(p, 1.0), 1.0)
    import json
    d = json.loads(report.to_json(fitted))
    assert set(d) == {"E_R", "Gamma", "residual", "iterations", "converged"}
    assert abs(d["E_R"] - 3.2) < 1e-8
