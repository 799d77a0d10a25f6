"""Physical constants, unit conversions and internal-spectrum models.

All quantities are SI internally. Lab units (gauss, eV, cm^-1, amu, angstrom,
cm/s) are accepted only through the ``*_to_*`` converters and the
``from_*`` constructors below.

Four internal systems are modelled:

``Landau``       E = (n + 1/2) hbar Omega, Omega = eB/m (SI) = eB/mc (Gaussian)
``Vibrational``  E = (n + 1/2) hbar omega
``Rotational``   E = K hbar^2 j (j + 1),   K = 1 / (2 m R^2)
``Rydberg``      E = -Ry / n^2

Quantum numbers may be real-valued; the formulas are analytic in n.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import Union

import scipy.constants as _sc

from .exceptions import DomainError

__all__ = [
    "PhysicalConstants",
    "CODATA",
    "Landau",
    "Vibrational",
    "Rotational",
    "Rydberg",
    "InternalSystem",
    "BeamSpec",
    "ActionKind",
    "ClassicalAction",
    "gyrofrequency",
    "internal_energy",
    "approximate_energy",
    "effective_frequency",
    "landau_quantum_number",
    "classical_action",
    "transition_gap",
    "gap_excess",
    "gauss_to_tesla",
    "ev_to_joule",
    "joule_to_ev",
    "wavenumber_to_angular",
    "amu_to_kg",
    "angstrom_to_m",
    "cm_per_s_to_m_per_s",
]

RYDBERG_ENERGY_EV = 13.605693


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants in SI units.

    ``rydberg_energy`` is me^4 / (2 hbar^2) expressed in joules. Use
    :meth:`with_hbar` to build a consistent copy with a rescaled Planck
    constant for semiclassical-limit experiments.
    """

    electron_charge: float
    electron_mass: float
    planck_reduced: float
    light_speed: float
    rydberg_energy: float

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{field.name} must be finite and positive, got {value!r}")

    def with_hbar(self, hbar: float) -> "PhysicalConstants":
        return dataclasses.replace(self, planck_reduced=hbar)


CODATA = PhysicalConstants(
    electron_charge=_sc.e,
    electron_mass=_sc.m_e,
    planck_reduced=_sc.hbar,
    light_speed=_sc.c,
    rydberg_energy=RYDBERG_ENERGY_EV * _sc.e,
)


# -- unit conversions ---------------------------------------------------------

def gauss_to_tesla(b_gauss):
    return b_gauss * 1e-4


def ev_to_joule(energy_ev, constants: PhysicalConstants = CODATA):
    return energy_ev * constants.electron_charge


def joule_to_ev(energy_j, constants: PhysicalConstants = CODATA):
    return energy_j / constants.electron_charge


def wavenumber_to_angular(wavenumber_cm, constants: PhysicalConstants = CODATA):
    """Spectroscopic wavenumber (cm^-1) to angular frequency omega = 2 pi c nu~."""
    return 2.0 * math.pi * constants.light_speed * wavenumber_cm * 100.0


def amu_to_kg(mass_amu):
    return mass_amu * _sc.atomic_mass


def angstrom_to_m(length_angstrom):
    return length_angstrom * 1e-10


def cm_per_s_to_m_per_s(speed_cm_s):
    return speed_cm_s * 1e-2


# -- internal systems ---------------------------------------------------------

def _require_positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be finite and positive, got {value!r}")


@dataclass(frozen=True)
class Landau:
    """Gyro-oscillation of a charged particle; ``gyro_frequency`` in rad/s."""

    gyro_frequency: float

    def __post_init__(self):
        _require_positive("gyro_frequency", self.gyro_frequency)

    @classmethod
    def from_field(cls, b_gauss: float, constants: PhysicalConstants = CODATA) -> "Landau":
        return cls(gyrofrequency(b_gauss, constants))


@dataclass(frozen=True)
class Vibrational:
    """Harmonic vibration of a diatomic molecule."""

    omega: float
    reduced_mass: float

    def __post_init__(self):
        _require_positive("omega", self.omega)
        _require_positive("reduced_mass", self.reduced_mass)

    @classmethod
    def from_wavenumber(cls, wavenumber_cm: float, reduced_mass: float,
                        constants: PhysicalConstants = CODATA) -> "Vibrational":
        return cls(wavenumber_to_angular(wavenumber_cm, constants), reduced_mass)


@dataclass(frozen=True)
class Rotational:
    """Rigid rotor with reduced mass ``reduced_mass`` and bond length ``internuclear_distance``."""

    reduced_mass: float
    internuclear_distance: float

    def __post_init__(self):
        _require_positive("reduced_mass", self.reduced_mass)
        _require_positive("internuclear_distance", self.internuclear_distance)

    @property
    def rotational_constant(self) -> float:
        """K = (2 m R^2)^-1 in 1/(kg m^2)."""
        return 1.0 / (2.0 * self.reduced_mass * self.internuclear_distance ** 2)


@dataclass(frozen=True)
class Rydberg:
    """Hydrogen-like atom in a state of large principal quantum number."""


InternalSystem = Union[Landau, Vibrational, Rotational, Rydberg]


class ActionKind(str, enum.Enum):
    GYROACTION = "gyroaction"
    VIBRATIONAL = "vibrational"
    ANGULAR = "angular"
    PRINCIPAL = "principal"


@dataclass(frozen=True)
class ClassicalAction:
    value: float
    kind: ActionKind


@dataclass(frozen=True)
class BeamSpec:
    """A beam of composite particles in a definite internal state.

    Parameters
    ----------
    total_energy : float
        Translational plus internal energy, J.
    com_mass : float
        Centre-of-mass (translational) mass, kg.
    central_quantum_number : float
        Internal quantum number the beam is prepared in (nu, j or n).
    pitch_angle : float
        Angle between velocity and magnetic field, rad. Landau beams only.
    """

    total_energy: float
    com_mass: float
    central_quantum_number: float
    pitch_angle: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.total_energy):
            raise DomainError("total_energy must be finite")
        _require_positive("com_mass", self.com_mass)
        if self.central_quantum_number < 0:
            raise DomainError("central_quantum_number must be >= 0")
        if not 0.0 <= self.pitch_angle < math.pi / 2:
            raise DomainError("pitch_angle must lie in [0, pi/2)")

    def with_energy(self, total_energy: float) -> "BeamSpec":
        return dataclasses.replace(self, total_energy=total_energy)

    @classmethod
    def from_velocity(cls, system: InternalSystem, velocity: float, com_mass: float,
                      quantum_number: float, constants: PhysicalConstants = CODATA) -> "BeamSpec":
        """Beam whose translational speed is ``velocity`` in state ``quantum_number``."""
        _require_positive("velocity", velocity)
        e_int = internal_energy(system, quantum_number, constants)
        return cls(0.5 * com_mass * velocity ** 2 + e_int, com_mass, quantum_number)

    @classmethod
    def from_kinetic_energy(cls, system: InternalSystem, kinetic_energy: float, com_mass: float,
                            quantum_number: float,
                            constants: PhysicalConstants = CODATA) -> "BeamSpec":
        _require_positive("kinetic_energy", kinetic_energy)
        e_int = internal_energy(system, quantum_number, constants)
        return cls(kinetic_energy + e_int, com_mass, quantum_number)

    @classmethod
    def injected(cls, system: Landau, energy: float, pitch_angle: float, com_mass: float,
                 constants: PhysicalConstants = CODATA) -> "BeamSpec":
        """Gun beam of kinetic energy ``energy`` injected at ``pitch_angle``.

        The Landau level is set by the perpendicular energy E sin^2(delta).
        """
        if not isinstance(system, Landau):
            raise DomainError("pitch-angle injection applies to Landau systems only")
        nu = landau_quantum_number(energy * math.sin(pitch_angle) ** 2,
                                   system.gyro_frequency, constants)
        return cls(energy, com_mass, nu, pitch_angle)


# -- operations ---------------------------------------------------------------

def gyrofrequency(b_gauss: float, constants: PhysicalConstants = CODATA) -> float:
    """Cyclotron angular frequency eB/mc for a field given in gauss."""
    if not b_gauss > 0:
        raise DomainError(f"magnetic field must be positive, got {b_gauss!r} G")
    return constants.electron_charge * gauss_to_tesla(b_gauss) / constants.electron_mass


def _check_n(system, n, *, minimum):
    if n < minimum:
        raise DomainError(f"{type(system).__name__} quantum number must be >= {minimum}, got {n!r}")


def internal_energy(system: InternalSystem, n: float,
                    constants: PhysicalConstants = CODATA) -> float:
    """Energy of internal level ``n`` in joules (negative for Rydberg states)."""
    hbar = constants.planck_reduced
    if isinstance(system, Landau):
        _check_n(system, n, minimum=0)
        return (n + 0.5) * hbar * system.gyro_frequency
    if isinstance(system, Vibrational):
        _check_n(system, n, minimum=0)
        return (n + 0.5) * hbar * system.omega
    if isinstance(system, Rotational):
        _check_n(system, n, minimum=0)
        return system.rotational_constant * hbar ** 2 * n * (n + 1)
    if isinstance(system, Rydberg):
        _check_n(system, n, minimum=1)
        return -constants.rydberg_energy / n ** 2
    raise TypeError(f"unknown internal system {system!r}")


def approximate_energy(system: InternalSystem, n: float,
                       constants: PhysicalConstants = CODATA) -> float:
    """Large-n form of the level energy used on the semiclassical path.

    Identical to :func:`internal_energy` except for the rotor, where
    j(j+1) is replaced by j^2.
    """
    if isinstance(system, Rotational):
        _check_n(system, n, minimum=0)
        return system.rotational_constant * constants.planck_reduced ** 2 * n ** 2
    return internal_energy(system, n, constants)


def effective_frequency(system: InternalSystem, n: float,
                        constants: PhysicalConstants = CODATA) -> float:
    """Angular frequency dE/dA conjugate to the classical action A = n hbar."""
    hbar = constants.planck_reduced
    if isinstance(system, Landau):
        return system.gyro_frequency
    if isinstance(system, Vibrational):
        return system.omega
    if isinstance(system, Rotational):
        _check_n(system, n, minimum=1)
        return hbar * n / (system.reduced_mass * system.internuclear_distance ** 2)
    if isinstance(system, Rydberg):
        _check_n(system, n, minimum=1)
        return 2.0 * abs(internal_energy(system, n, constants)) / (n * hbar)
    raise TypeError(f"unknown internal system {system!r}")


def landau_quantum_number(e_perp: float, omega: float,
                          constants: PhysicalConstants = CODATA) -> float:
    """Landau level nu = E_perp / (hbar Omega), unrounded."""
    if e_perp < 0:
        raise DomainError("perpendicular energy must be >= 0")
    _require_positive("gyro_frequency", omega)
    return e_perp / (constants.planck_reduced * omega)


_ACTION_KINDS = {
    Landau: ActionKind.GYROACTION,
    Vibrational: ActionKind.VIBRATIONAL,
    Rotational: ActionKind.ANGULAR,
    Rydberg: ActionKind.PRINCIPAL,
}


def classical_action(system: InternalSystem, n: float,
                     constants: PhysicalConstants = CODATA) -> ClassicalAction:
    """The action n hbar (mu, I, J or n hbar) associated with level ``n``."""
    if not n > 0:
        raise DomainError("classical action requires n > 0")
    return ClassicalAction(n * constants.planck_reduced, _ACTION_KINDS[type(system)])


def transition_gap(system: InternalSystem, n: float, l: float,
                   constants: PhysicalConstants = CODATA) -> float:
    """E(n) - E(n - l), written without cancellation."""
    hbar = constants.planck_reduced
    if isinstance(system, (Landau, Vibrational)):
        _check_n(system, n - l, minimum=0)
        return l * hbar * effective_frequency(system, n, constants)
    if isinstance(system, Rotational):
        _check_n(system, n - l, minimum=0)
        return system.rotational_constant * hbar ** 2 * l * (2 * n - l + 1)
    if isinstance(system, Rydberg):
        _check_n(system, n - l, minimum=1)
        return constants.rydberg_energy * l * (2 * n - l) / (n ** 2 * (n - l) ** 2)
    raise TypeError(f"unknown internal system {system!r}")


def gap_excess(system: InternalSystem, n: float, l: float) -> float:
    """transition_gap / (l hbar omega_eff) - 1, in closed form.

    Zero for equally spaced spectra; for the rotor and Rydberg atom it is
    the leading correction to the linearised level spacing.
    """
    if isinstance(system, (Landau, Vibrational)):
        return 0.0
    if isinstance(system, Rotational):
        return (1 - l) / (2 * n)
    if isinstance(system, Rydberg):
        return (3 * n * l - 2 * l ** 2) / (2 * (n - l) ** 2)
    raise TypeError(f"unknown internal system {system!r}")
