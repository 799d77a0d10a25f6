"""Macroscopic matter-wave phenomenology for composite particles.

A beam of composite particles whose internal motion is quantised (Landau
levels, molecular vibration/rotation, Rydberg states) carries, besides its
de Broglie wave, a macroscopic wave of wave number l * omega_eff / v set by the
internal frequency. This package computes those wave numbers, the resulting
two-grid interference and energy-sweep fringes, evolves the mode amplitudes
numerically, and evaluates the oscillator transition amplitudes.
"""

__version__ = "0.1.0"

from .exceptions import (  # noqa: E402
    CapabilityError,
    ConfigurationError,
    DomainError,
    EvanescentError,
    MacrowaveError,
)
from .physcore import (  # noqa: E402
    CODATA,
    BeamSpec,
    Landau,
    PhysicalConstants,
    Rotational,
    Rydberg,
    Vibrational,
    effective_frequency,
    internal_energy,
)
from .dispersion import beam_velocity, delta_kappa, macroscopic_wavelength  # noqa: E402
from .interference import HarmonicMixture, ScattererGrid, two_grid_intensity  # noqa: E402
from .analysis import SweepConfig, detect_peaks, transmission_sweep  # noqa: E402
from .evolution import EvolutionParams, WaveField, evolve  # noqa: E402
from .matrixelem import OscillatorBasis, beta, matrix_element  # noqa: E402

__all__ = [
    "__version__",
    "MacrowaveError", "DomainError", "EvanescentError", "CapabilityError", "ConfigurationError",
    "CODATA", "PhysicalConstants", "BeamSpec", "Landau", "Vibrational", "Rotational", "Rydberg",
    "effective_frequency", "internal_energy",
    "beam_velocity", "delta_kappa", "macroscopic_wavelength",
    "HarmonicMixture", "ScattererGrid", "two_grid_intensity",
    "SweepConfig", "detect_peaks", "transmission_sweep",
    "EvolutionParams", "WaveField", "evolve",
    "OscillatorBasis", "beta", "matrix_element",
]
