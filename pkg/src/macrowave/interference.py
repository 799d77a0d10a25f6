"""One-dimensional two-grid interference of internal-transition amplitudes.

A grid at X_g with coupling c (the product of normalisation constants)
emits the l-th harmonic amplitude

    alpha(X) = c * beta * exp(i l k (X - X_g)),

and two grids superpose coherently. Distinct harmonics end in orthogonal
internal states and therefore add in intensity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .exceptions import ConfigurationError, DomainError

__all__ = [
    "ScattererGrid",
    "HarmonicMixture",
    "ModeAmplitude",
    "RovibChannel",
    "grid_amplitude",
    "superpose",
    "two_grid_intensity",
    "mixture_intensity",
    "rovib_intensity",
    "rovib_mixture_intensity",
    "fringe_maxima",
]


@dataclass(frozen=True)
class ScattererGrid:
    position: float
    coupling: complex = 1.0
    label: str = ""

    def __post_init__(self):
        if not cmath.isfinite(complex(self.coupling)):
            raise DomainError("grid coupling must be finite")

    def moved_to(self, position) -> "ScattererGrid":
        return ScattererGrid(position, self.coupling, self.label)


@dataclass(frozen=True)
class HarmonicMixture:
    """Harmonics present in the scattered beam as ``(l, weight)`` pairs."""

    entries: tuple = ((1, 1.0),)

    def __post_init__(self):
        entries = tuple((int(l), complex(w)) for l, w in self.entries)
        if not entries:
            raise ConfigurationError("a harmonic mixture needs at least one entry")
        ls = [l for l, _ in entries]
        if len(set(ls)) != len(ls):
            raise ConfigurationError(f"duplicate harmonics in mixture: {ls}")
        for l, w in entries:
            if l < 1:
                raise ConfigurationError(f"harmonic numbers must be >= 1, got {l}")
            if not cmath.isfinite(w):
                raise ConfigurationError(f"weight for l={l} is not finite")
        object.__setattr__(self, "entries", entries)

    @property
    def harmonics(self):
        return [l for l, _ in self.entries]


@dataclass(frozen=True)
class ModeAmplitude:
    value: complex
    wave_number: float
    harmonic: int
    source: str = ""


@dataclass(frozen=True)
class RovibChannel:
    """A combined vibrational/rotational transition (l_vib, l_rot) with weight."""

    l_vib: int
    l_rot: int
    weight: complex = 1.0
    gamma: complex = 1.0


def grid_amplitude(grid: ScattererGrid, k: float, l: int, beta: complex, X) -> ModeAmplitude:
    """Amplitude of harmonic ``l`` scattered at ``grid``, observed at ``X``."""
    if not k > 0:
        raise DomainError("wave number must be positive")
    phase = l * k * (X - grid.position)
    return ModeAmplitude(complex(grid.coupling) * beta * cmath.exp(1j * phase),
                         l * k, int(l), grid.label)


def superpose(amplitudes: Sequence[ModeAmplitude]) -> complex:
    if not amplitudes:
        raise DomainError("cannot superpose an empty set of amplitudes")
    return sum((a.value for a in amplitudes), 0j)


def _intensity(c1, c2, phase, beta):
    # |beta|^2 |c1 e^{-i l k X1} + c2 e^{-i l k X2}|^2 with phase = l k (X1 - X2)
    a1, a2 = abs(c1), abs(c2)
    rel = phase - (cmath.phase(c1) - cmath.phase(c2))
    return abs(beta) ** 2 * (a1 * a1 + a2 * a2 + 2.0 * a1 * a2 * np.cos(rel))


def two_grid_intensity(g1: ScattererGrid, g2: ScattererGrid, k: float, l: int,
                       beta: complex = 1.0, separation=None):
    """Scattered intensity |alpha_1 + alpha_2|^2 in closed cosine form.

    ``separation`` overrides X1 - X2 (may be an array for pattern sweeps).
    For real couplings this is |beta|^2 {c1^2 + c2^2 + 2 c1 c2 cos(l k (X1 - X2))}.
    """
    if not k > 0:
        raise DomainError("wave number must be positive")
    if l < 1:
        raise DomainError("harmonic l must be >= 1")
    d = g1.position - g2.position if separation is None else np.asarray(separation, float)
    out = _intensity(complex(g1.coupling), complex(g2.coupling), l * k * d, beta)
    return float(out) if np.ndim(out) == 0 else out


def mixture_intensity(g1: ScattererGrid, g2: ScattererGrid, base_k: float,
                      mixture: HarmonicMixture, betas: Mapping[int, complex],
                      separation=None):
    """Incoherent sum over harmonics of |weight_l|^2 * two_grid_intensity."""
    missing = [l for l in mixture.harmonics if l not in betas]
    if missing:
        raise ConfigurationError(f"no transition amplitude supplied for harmonics {missing}")
    total = 0.0
    for l, w in mixture.entries:
        total = total + abs(w) ** 2 * two_grid_intensity(g1, g2, base_k, l, betas[l], separation)
    return total


def rovib_intensity(g1: ScattererGrid, g2: ScattererGrid, k_vib: float, k_rot: float,
                    l_vib: int, l_rot: int, gamma: complex = 1.0, separation=None):
    """Two-grid intensity for a combined wave number l_vib k_vib + l_rot k_rot."""
    if not (k_vib > 0 and k_rot > 0):
        raise DomainError("wave numbers must be positive")
    k_total = l_vib * k_vib + l_rot * k_rot
    d = g1.position - g2.position if separation is None else np.asarray(separation, float)
    out = _intensity(complex(g1.coupling), complex(g2.coupling), k_total * d, gamma)
    return float(out) if np.ndim(out) == 0 else out


def rovib_mixture_intensity(g1, g2, k_vib, k_rot, channels: Sequence[RovibChannel],
                            separation=None):
    """Incoherent sum of :func:`rovib_intensity` over transition channels."""
    if not channels:
        raise ConfigurationError("at least one ro-vibrational channel is required")
    total = 0.0
    for ch in channels:
        total = total + abs(ch.weight) ** 2 * rovib_intensity(
            g1, g2, k_vib, k_rot, ch.l_vib, ch.l_rot, ch.gamma, separation)
    return total


def fringe_maxima(g1: ScattererGrid, g2: ScattererGrid, k: float, l: int,
                  lo: float, hi: float) -> np.ndarray:
    """Separations X1 - X2 in [lo, hi] where :func:`two_grid_intensity` peaks."""
    if not k > 0:
        raise DomainError("wave number must be positive")
    offset = cmath.phase(complex(g1.coupling)) - cmath.phase(complex(g2.coupling))
    period = 2.0 * math.pi / (l * k)
    first = math.ceil((lo - offset / (l * k)) / period)
    last = math.floor((hi - offset / (l * k)) / period)
    m = np.arange(first, last + 1)
    return (2.0 * math.pi * m + offset) / (l * k)
