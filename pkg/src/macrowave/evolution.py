"""Split-step spectral integration of the amplitude equations

    (i mu / l) dPsi/dt = -(mu / l)^2 d^2Psi/dx^2 + mu Omega Psi,   l = 1, 2, ...

on a periodic 1-D grid. Dividing by mu/l gives i dPsi/dt = -(mu/l) Psi'' + l Omega Psi,
so a plane wave exp(i(kx - w t)) obeys w = (mu/l) k^2 + l Omega. The kinetic
term is applied exactly in Fourier space and the potential term pointwise;
Strang splitting makes the scheme second order in the time step when Omega
varies in space and exact when it does not.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .exceptions import ConfigurationError, DomainError

__all__ = [
    "WaveField",
    "EvolutionParams",
    "evolve",
    "evolve_modes",
    "dispersion_check",
    "plane_wave",
    "gaussian_packet",
    "norm",
    "centroid",
    "plane_wave_frequency",
    "evolve_tracking_phase",
]


def _is_power_of_two(n):
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class WaveField:
    """Amplitude Psi(l) sampled on a uniform periodic grid.

    ``omega`` is a scalar or an array with one value per cell; the
    per-cell form is an extension hook for modelling obstacles.
    """

    samples: np.ndarray
    domain_length: float
    mode: int
    gyroaction: float
    omega: object

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        if samples.ndim != 1:
            raise ConfigurationError("samples must be one-dimensional")
        if not _is_power_of_two(samples.size):
            raise ConfigurationError(f"sample count must be a power of two, got {samples.size}")
        if not np.all(np.isfinite(samples)):
            raise ConfigurationError("samples must be finite")
        if not self.domain_length > 0:
            raise DomainError("domain_length must be positive")
        if int(self.mode) != self.mode or self.mode < 1:
            raise DomainError("mode l must be a positive integer")
        if not self.gyroaction > 0:
            raise DomainError("gyroaction must be positive")
        omega = np.asarray(self.omega, dtype=float)
        if omega.ndim not in (0, 1) or (omega.ndim == 1 and omega.size != samples.size):
            raise ConfigurationError("omega must be a scalar or have one value per cell")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "omega", float(omega) if omega.ndim == 0 else omega)

    @property
    def size(self) -> int:
        return self.samples.size

    @property
    def dx(self) -> float:
        return self.domain_length / self.size

    @property
    def x(self) -> np.ndarray:
        """Cell positions, centred on zero."""
        return (np.arange(self.size) - self.size // 2) * self.dx

    @property
    def k(self) -> np.ndarray:
        return 2.0 * math.pi * np.fft.fftfreq(self.size, d=self.dx)

    def with_samples(self, samples) -> "WaveField":
        return dataclasses.replace(self, samples=samples)


@dataclass(frozen=True)
class EvolutionParams:
    time_step: float
    step_count: int
    safety: float = 1.0

    def __post_init__(self):
        if not self.time_step > 0:
            raise DomainError("time_step must be positive")
        if int(self.step_count) != self.step_count or self.step_count < 1:
            raise DomainError("step_count must be a positive integer")

    def stability_ratio(self, field: WaveField) -> float:
        """time_step / (safety dx^2 l / mu); reported only, the scheme is unitary."""
        return self.time_step * field.gyroaction / (self.safety * field.dx ** 2 * field.mode)


def evolve(field: WaveField, params: EvolutionParams, *, kinetic: bool = True,
           observer: Optional[Callable[[int, np.ndarray], None]] = None) -> WaveField:
    """Advance ``field`` by ``params.step_count`` Strang steps.

    ``observer(step, samples)`` is called after every step with a read-only
    view. The input field is not modified.
    """
    l = field.mode
    dt = params.time_step
    half_potential = np.exp(-0.5j * l * np.asarray(field.omega) * dt)
    kinetic_phase = np.exp(-1j * (field.gyroaction / l) * field.k ** 2 * dt) if kinetic else None
    psi = field.samples.copy()
    for step in range(1, params.step_count + 1):
        psi *= half_potential
        if kinetic_phase is not None:
            psi = np.fft.ifft(kinetic_phase * np.fft.fft(psi))
        psi *= half_potential
        if observer is not None:
            view = psi.view()
            view.flags.writeable = False
            observer(step, view)
    return field.with_samples(psi)


def evolve_modes(fields: Sequence[WaveField], params: EvolutionParams, **kwargs):
    """Evolve several independent mode amplitudes with the same parameters."""
    return [evolve(f, params, **kwargs) for f in fields]


def dispersion_check(mu: float, omega: float, l: int, k) -> float:
    """Plane-wave frequency (mu/l) k^2 + l Omega, rad/s."""
    if l < 1:
        raise DomainError("mode l must be >= 1")
    return (mu / l) * np.asarray(k) ** 2 + l * omega


def norm(field: WaveField) -> float:
    """Discrete L2 norm sqrt(sum |Psi|^2 dx)."""
    return math.sqrt(float(np.sum(np.abs(field.samples) ** 2)) * field.dx)


def centroid(field: WaveField) -> float:
    p = np.abs(field.samples) ** 2
    return float(np.sum(field.x * p) / np.sum(p))


def plane_wave(points: int, domain_length: float, harmonic_index: int, *, mode: int = 1,
               gyroaction: float = 1.0, omega=1.0, amplitude: complex = 1.0) -> WaveField:
    """exp(i k x) with k = 2 pi harmonic_index / domain_length (periodic on the grid)."""
    x = (np.arange(points) - points // 2) * (domain_length / points)
    k = 2.0 * math.pi * harmonic_index / domain_length
    return WaveField(amplitude * np.exp(1j * k * x), domain_length, mode, gyroaction, omega)


def gaussian_packet(points: int, domain_length: float, center: float, width: float,
                    wavenumber: float, *, mode: int = 1, gyroaction: float = 1.0,
                    omega=1.0) -> WaveField:
    """Unit-norm packet exp(-(x - x0)^2 / (4 width^2) + i k0 x); ``width`` is the rms of |Psi|^2."""
    x = (np.arange(points) - points // 2) * (domain_length / points)
    psi = np.exp(-((x - center) ** 2) / (4.0 * width ** 2) + 1j * wavenumber * x)
    field = WaveField(psi, domain_length, mode, gyroaction, omega)
    return field.with_samples(psi / norm(field))


def evolve_tracking_phase(field: WaveField, params: EvolutionParams):
    """Evolve and return ``(final_field, frequency)`` from the unwrapped overlap phase.

    Each step must advance the phase by less than pi for the unwrapping
    to be unambiguous.
    """
    ref = field.samples
    ref_norm = float(np.vdot(ref, ref).real)
    if ref_norm == 0:
        raise DomainError("cannot track the phase of a zero field")
    phases = np.zeros(params.step_count + 1)

    def record(step, psi):
        phases[step] = np.angle(np.vdot(ref, psi) / ref_norm)

    final = evolve(field, params, observer=record)
    accumulated = np.unwrap(phases)
    return final, -accumulated[-1] / (params.time_step * params.step_count)


def plane_wave_frequency(field: WaveField, params: EvolutionParams) -> float:
    """Angular frequency of a plane-wave ``field`` measured from its evolved phase."""
    return evolve_tracking_phase(field, params)[1]
