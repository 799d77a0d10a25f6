"""Exact and first-order wave numbers of the centre-of-mass motion.

A beam in internal level ``n`` with total energy E moves with wave number

    kappa_n = sqrt(2 M (E - E_int(n))) / hbar.

A transition n -> n - l at a scatterer shifts this by Delta kappa, whose
leading term l * omega_eff / v no longer contains hbar. The functions here
return both the exact shift and its linearisation together with the
relative error between them, evaluated without subtractive cancellation so
that errors far below machine epsilon of kappa itself remain resolvable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, EvanescentError
from .physcore import (
    CODATA,
    BeamSpec,
    InternalSystem,
    PhysicalConstants,
    Rydberg,
    approximate_energy,
    effective_frequency,
    gap_excess,
    internal_energy,
    transition_gap,
)

__all__ = [
    "DispersionPoint",
    "WaveNumberPair",
    "translational_energy",
    "beam_velocity",
    "kappa_exact",
    "dispersion_point",
    "de_broglie_wavelength",
    "delta_kappa",
    "macroscopic_wavelength",
    "beam_wavelength",
    "rydberg_delta_p_over_hbar",
    "rydberg_delta_p_exact",
    "velocity_array",
]


@dataclass(frozen=True)
class DispersionPoint:
    kappa_exact: float
    velocity: float
    system: InternalSystem
    quantum_number: float
    total_energy: float


@dataclass(frozen=True)
class WaveNumberPair:
    """Exact and linearised wave-number shift for harmonic ``harmonic``.

    ``relative_error`` is |exact - approx| / approx.
    """

    delta_kappa_exact: float
    delta_kappa_approx: float
    harmonic: int
    relative_error: float


def _level(beam, n):
    return beam.central_quantum_number if n is None else n


def translational_energy(beam: BeamSpec, system: InternalSystem, n=None,
                         constants: PhysicalConstants = CODATA):
    """Kinetic energy E - E_int(n); raises :class:`EvanescentError` if not positive."""
    n = _level(beam, n)
    kinetic = beam.total_energy - internal_energy(system, n, constants)
    if not kinetic > 0:
        raise EvanescentError(
            f"E = {beam.total_energy:.6g} J does not exceed the internal energy of level "
            f"{n:g}; propagation is classically forbidden")
    return kinetic


def beam_velocity(beam: BeamSpec, system: InternalSystem, n=None,
                  constants: PhysicalConstants = CODATA) -> float:
    kinetic = translational_energy(beam, system, n, constants)
    return math.sqrt(2.0 * kinetic / beam.com_mass)


def kappa_exact(beam: BeamSpec, system: InternalSystem, n=None,
                constants: PhysicalConstants = CODATA) -> float:
    """Centre-of-mass wave number (1/hbar) sqrt(2 M (E - E_int(n))), rad/m."""
    kinetic = translational_energy(beam, system, n, constants)
    return math.sqrt(2.0 * beam.com_mass * kinetic) / constants.planck_reduced


def dispersion_point(beam: BeamSpec, system: InternalSystem, n=None,
                     constants: PhysicalConstants = CODATA) -> DispersionPoint:
    n = _level(beam, n)
    return DispersionPoint(
        kappa_exact=kappa_exact(beam, system, n, constants),
        velocity=beam_velocity(beam, system, n, constants),
        system=system,
        quantum_number=n,
        total_energy=beam.total_energy,
    )


def de_broglie_wavelength(beam: BeamSpec, system: InternalSystem, n=None,
                          constants: PhysicalConstants = CODATA) -> float:
    return 2.0 * math.pi / kappa_exact(beam, system, n, constants)


def _sqrt1p_m1(x):
    # sqrt(1 + x) - 1 without cancellation for small x
    return x / (1.0 + math.sqrt(1.0 + x))


def delta_kappa(beam: BeamSpec, system: InternalSystem, n=None, l: int = 1,
                constants: PhysicalConstants = CODATA) -> WaveNumberPair:
    """Wave-number shift kappa_{n-l} - kappa_n and its ħ-free linearisation.

    The linearised value is l * omega_eff(n) / v with v evaluated on the
    large-n energy (j^2 instead of j(j+1) for the rotor).
    """
    if l < 1:
        raise DomainError(f"harmonic l must be >= 1, got {l!r}")
    n = _level(beam, n)
    if n - l < 0:
        raise DomainError(f"cannot lower level {n:g} by {l}")
    hbar = constants.planck_reduced
    mass = beam.com_mass

    kinetic = translational_energy(beam, system, n, constants)
    gap = transition_gap(system, n, l, constants)
    exact = (math.sqrt(2.0 * mass) / hbar * gap
             / (math.sqrt(kinetic) + math.sqrt(kinetic + gap)))

    shift = internal_energy(system, n, constants) - approximate_energy(system, n, constants)
    kinetic_approx = kinetic + shift
    if not kinetic_approx > 0:
        raise EvanescentError("beam is evanescent on the large-n energy surface")
    v_approx = math.sqrt(2.0 * kinetic_approx / mass)
    approx = l * effective_frequency(system, n, constants) / v_approx

    # exact/approx = (1 + g) * 2 sqrt(1 + y) / (1 + sqrt(1 + x))
    x = gap / kinetic
    y = shift / kinetic
    g = gap_excess(system, n, l)
    denom = 2.0 + _sqrt1p_m1(x)
    h_minus_1 = (2.0 * _sqrt1p_m1(y) - _sqrt1p_m1(x)) / denom
    ratio_minus_1 = g * (1.0 + h_minus_1) + h_minus_1
    return WaveNumberPair(exact, approx, int(l), abs(ratio_minus_1))


def macroscopic_wavelength(velocity: float, omega_eff: float, l: int = 1) -> float:
    """Wavelength 2 pi v / (l omega) of the l-th harmonic."""
    if not velocity > 0:
        raise DomainError("velocity must be positive")
    if not omega_eff > 0:
        raise DomainError("omega_eff must be positive")
    if l < 1:
        raise DomainError("harmonic l must be >= 1")
    return 2.0 * math.pi * velocity / (l * omega_eff)


def beam_wavelength(beam: BeamSpec, system: InternalSystem, l: int = 1,
                    constants: PhysicalConstants = CODATA) -> float:
    n = beam.central_quantum_number
    return macroscopic_wavelength(beam_velocity(beam, system, n, constants),
                                  effective_frequency(system, n, constants), l)


def rydberg_delta_p_over_hbar(beam: BeamSpec, n=None, l: int = 1,
                              constants: PhysicalConstants = CODATA) -> float:
    """Linearised (P' - P)/hbar = l omega_n / v for a Rydberg beam, rad/m."""
    n = _level(beam, n)
    if n < 1:
        raise DomainError("Rydberg principal quantum number must be >= 1")
    if l < 1:
        raise DomainError("harmonic l must be >= 1")
    system = Rydberg()
    v = beam_velocity(beam, system, n, constants)
    return l * effective_frequency(system, n, constants) / v


def rydberg_delta_p_exact(beam: BeamSpec, n=None, l: int = 1,
                          constants: PhysicalConstants = CODATA) -> float:
    """Exact (P(n - l) - P(n))/hbar for a Rydberg beam, rad/m."""
    n = _level(beam, n)
    if l < 1:
        raise DomainError("harmonic l must be >= 1")
    return delta_kappa(beam, Rydberg(), n, l, constants).delta_kappa_exact


def velocity_array(energies, internal: float, com_mass: float) -> np.ndarray:
    """Vectorised v(E) = sqrt(2 (E - E_int) / M); raises on the first forbidden sample."""
    energies = np.asarray(energies, dtype=float)
    kinetic = energies - internal
    bad = np.flatnonzero(~(kinetic > 0))
    if bad.size:
        i = int(bad[0])
        raise EvanescentError(
            f"sample {i} (E = {energies.flat[i]:.6g} J) does not exceed the internal "
            f"energy {internal:.6g} J")
    return np.sqrt(2.0 * kinetic / com_mass)
