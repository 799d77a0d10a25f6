import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from macrowave.analysis import (
    PathLength,
    Spectrum,
    SweepConfig,
    beat_envelope,
    detect_peaks,
    inverse_length_check,
    local_fringe_spacing,
    separate_scales,
    sweep_phase,
    transmission_signal,
    transmission_sweep,
)
from macrowave.exceptions import ConfigurationError, DomainError, EvanescentError
from macrowave.interference import HarmonicMixture
from macrowave.physcore import CODATA, BeamSpec, Landau, internal_energy

EV = CODATA.electron_charge
SYSTEM = Landau.from_field(1000.0)
BEAM = BeamSpec.from_kinetic_energy(SYSTEM, 500 * EV, CODATA.electron_mass, 10)
E_INT = internal_energy(SYSTEM, 10)


def config(lengths, samples=20000, lo=400.0, hi=600.0, **kwargs):
    return SweepConfig(E_INT + lo * EV, E_INT + hi * EV, samples,
                       [PathLength(f"L{i}", L) for i, L in enumerate(lengths)], SYSTEM, BEAM, **kwargs)


def exact_peaks(length, lo, hi):
    """[DERIVED] k(E) L = 2 pi m  =>  E_m = E_int + (M/2) (Omega L / (2 pi m))^2."""
    omega = SYSTEM.gyro_frequency
    v_lo = math.sqrt(2 * (lo - E_INT) / CODATA.electron_mass)
    v_hi = math.sqrt(2 * (hi - E_INT) / CODATA.electron_mass)
    m = np.arange(math.ceil(omega * length / (2 * math.pi * v_hi)),
                  math.floor(omega * length / (2 * math.pi * v_lo)) + 1)
    v = omega * length / (2 * math.pi * m)
    return np.sort(E_INT + 0.5 * CODATA.electron_mass * v ** 2)


def _sum_to_product_residual(lp, lg):
    cfg = config([lp, lg], samples=500)
    spectrum = transmission_sweep(cfg)
    k = SYSTEM.gyro_frequency / np.sqrt(2 * (spectrum.abscissa - E_INT) / CODATA.electron_mass)
    expected = 2 + 2 * np.cos(k * (lp + lg) / 2) * np.cos(k * (lp - lg) / 2)
    return np.max(np.abs(spectrum.signal - expected)), np.max(k) * lp


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 0.5), st.floats(0.01, 0.3))
def test_sum_to_product(lp, frac):
    residual, _ = _sum_to_product_residual(lp, lp * (1 - frac))
    assert residual < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(0.5, 10.0), st.floats(0.01, 0.3))
def test_sum_to_product_long_paths(lp, frac):
    # the two sides round their cosine arguments differently, so the
    # floating-point floor grows with the accumulated phase
    residual, phase = _sum_to_product_residual(lp, lp * (1 - frac))
    assert residual < 1e-12 + 8 * np.finfo(float).eps * phase


def test_peaks_match_exact_positions():
    cfg = config([2.0])
    report = detect_peaks(transmission_sweep(cfg))
    exact = exact_peaks(2.0, cfg.energy_min, cfg.energy_max)
    assert report.peak_positions.size == exact.size
    step = (cfg.energy_max - cfg.energy_min) / (cfg.sample_count - 1)
    assert np.max(np.abs(report.peak_positions - exact)) < 1e-3 * step


def test_spacing_error_shrinks_with_sampling():
    exact = np.diff(exact_peaks(2.0, E_INT + 400 * EV, E_INT + 600 * EV))
    errors = []
    for samples in (1000, 2000, 4000, 8000):
        report = detect_peaks(transmission_sweep(config([2.0], samples=samples)))
        errors.append(np.max(np.abs(report.spacings - exact)))
    assert all(b < a for a, b in zip(errors, errors[1:]))
    assert errors[-1] < 1e-4 * np.mean(exact)


def test_analytic_local_spacing():
    cfg = config([2.0])
    exact = exact_peaks(2.0, cfg.energy_min, cfg.energy_max)
    mids = 0.5 * (exact[1:] + exact[:-1])
    analytic = np.array([local_fringe_spacing(cfg, e, 2.0) for e in mids])
    # chirp makes adjacent-peak spacing differ from the local value at second order
    assert np.allclose(np.diff(exact), analytic, rtol=1e-3)


def test_local_spacing_from_phase_derivative():
    cfg = config([3.0])
    e = E_INT + 500 * EV
    h = 1e-6 * EV
    dphase = (sweep_phase(cfg, [e + h], 3.0) - sweep_phase(cfg, [e - h], 3.0))[0] / (2 * h)
    assert local_fringe_spacing(cfg, e, 3.0) == pytest.approx(2 * math.pi / abs(dphase), rel=1e-6)


def test_deterministic():
    a = transmission_sweep(config([2.0, 1.9]))
    b = transmission_sweep(config([2.0, 1.9]))
    assert np.array_equal(a.signal, b.signal)
    assert np.array_equal(a.abscissa, b.abscissa)


def test_transmission_signal_at_arbitrary_energies():
    cfg = config([2.0])
    energies = cfg.energies()[[3, 17, 1001]]
    assert np.array_equal(transmission_signal(cfg, energies), transmission_sweep(cfg).signal[[3, 17, 1001]])


def test_harmonic_mixture_in_sweep():
    cfg = config([2.0], samples=100, mixture=HarmonicMixture(((1, 1.0), (2, 0.5))))
    k = SYSTEM.gyro_frequency / np.sqrt(2 * (cfg.energies() - E_INT) / CODATA.electron_mass)
    expected = (1 + np.cos(2 * k)) + 0.25 * (1 + np.cos(4 * k))
    assert np.allclose(transmission_sweep(cfg).signal, expected, rtol=1e-13)


def test_custom_velocity_model():
    cfg = config([1.0], samples=64, velocity_model=lambda e: np.full_like(e, 2.0))
    assert np.allclose(transmission_sweep(cfg).signal, 1 + math.cos(SYSTEM.gyro_frequency / 2.0))


def test_five_interior_maxima():
    t = np.linspace(0, 1, 2001)
    report = detect_peaks(Spectrum(t, np.cos(2 * math.pi * 5 * t - math.pi)))
    assert np.allclose(report.peak_positions, [0.1, 0.3, 0.5, 0.7, 0.9], atol=1e-9)
    assert report.mean_spacing == pytest.approx(0.2, rel=1e-9)
    assert report.envelope_period is None


@pytest.mark.parametrize("frac", [0.02, 0.05, 0.1])
def test_beat_ratio(frac):
    report = beat_envelope(transmission_sweep(config([5.0, 5.0 * (1 - frac)])))
    expected = 2 * 5.0 / (5.0 * frac)
    assert report.envelope_ratio == pytest.approx(expected, rel=0.1)


def test_beat_envelope_requires_two_lengths():
    with pytest.raises(ConfigurationError):
        beat_envelope(transmission_sweep(config([5.0])))
    with pytest.raises(ConfigurationError):
        beat_envelope(Spectrum(np.arange(20.0), np.zeros(20)))


def test_inverse_length_exponent():
    scan = inverse_length_check(config([1.0]), [1.0, 2.0, 4.0, 8.0])
    assert scan.exponent == pytest.approx(-1.0, abs=0.05)
    assert [L for L, _ in scan.pairs()] == [1.0, 2.0, 4.0, 8.0]


def test_inverse_length_needs_fringes():
    with pytest.raises(DomainError):
        inverse_length_check(config([1.0], lo=499.0, hi=500.0), [1e-3, 2e-3])
    with pytest.raises(ConfigurationError):
        inverse_length_check(config([1.0]), [1.0])


def test_separate_scales():
    x = np.linspace(0, 2, 40000)
    y = 4 + 2 * np.cos(1000 * x) + 2 * np.cos(10 * x)
    fine, coarse = separate_scales(x, y)
    assert fine == pytest.approx(2 * math.pi / 1000, rel=1e-3)
    assert coarse == pytest.approx(2 * math.pi / 10, rel=1e-3)


@pytest.mark.parametrize("kwargs", [dict(lo=600.0, hi=400.0), dict(samples=8)])
def test_sweep_config_validation(kwargs):
    with pytest.raises(ConfigurationError):
        config([1.0], **kwargs)


def test_sweep_config_rejects_bad_length():
    with pytest.raises(ConfigurationError):
        config([0.0])


def test_evanescent_window():
    with pytest.raises(EvanescentError):
        transmission_sweep(SweepConfig(E_INT - EV, E_INT + EV, 16, [PathLength("L", 1.0)],
                                       SYSTEM, BEAM))


def test_spectrum_validation():
    with pytest.raises(ConfigurationError):
        Spectrum(np.array([0.0, 0.0, 1.0]), np.zeros(3))
    with pytest.raises(ConfigurationError):
        Spectrum(np.arange(3.0), np.zeros(4))
