"""Energy-sweep transmission spectra and fringe/beat analysis.

The detector model is the minimal one that shows every phase signature:
for each flight length L and harmonic l the transmitted signal carries a
term [1 + cos(l k(E) L)] with k(E) = omega_eff / v(E). Two lengths add
their terms, which is the additive two-length reading of a gun/grid/plate
geometry. Spacings are measured between adjacent peaks because k(E) is
chirped.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.ndimage import uniform_filter1d
from scipy.signal import find_peaks

from .dispersion import velocity_array
from .exceptions import ConfigurationError, DomainError
from .interference import HarmonicMixture
from .physcore import (
    CODATA,
    BeamSpec,
    InternalSystem,
    PhysicalConstants,
    effective_frequency,
    internal_energy,
)

__all__ = [
    "SIGNAL_MODEL",
    "PathLength",
    "SweepConfig",
    "Spectrum",
    "PeakReport",
    "LengthScan",
    "transmission_sweep",
    "transmission_signal",
    "sweep_phase",
    "local_fringe_spacing",
    "detect_peaks",
    "beat_envelope",
    "inverse_length_check",
    "separate_scales",
]

SIGNAL_MODEL = "additive-cosine: sum over lengths and harmonics of w_L |w_l|^2 [1 + cos(l k(E) L)]"

# peak-height modulation below this fraction counts as "no envelope"
MIN_MODULATION_DEPTH = 0.05


@dataclass(frozen=True)
class PathLength:
    label: str
    length: float
    weight: float = 1.0

    def __post_init__(self):
        if not self.length > 0:
            raise ConfigurationError(f"path length {self.label!r} must be positive")


@dataclass(frozen=True)
class SweepConfig:
    energy_min: float
    energy_max: float
    sample_count: int
    lengths: tuple
    system: InternalSystem
    beam: BeamSpec
    mixture: HarmonicMixture = HarmonicMixture()
    velocity_model: Optional[Callable[[np.ndarray], np.ndarray]] = None
    constants: PhysicalConstants = CODATA

    def __post_init__(self):
        lengths = tuple(p if isinstance(p, PathLength) else PathLength(*p) for p in self.lengths)
        if not lengths:
            raise ConfigurationError("at least one path length is required")
        object.__setattr__(self, "lengths", lengths)
        if not self.energy_min < self.energy_max:
            raise ConfigurationError("energy_min must be below energy_max")
        if int(self.sample_count) != self.sample_count or self.sample_count < 16:
            raise ConfigurationError("sample_count must be an integer >= 16")

    def energies(self) -> np.ndarray:
        return np.linspace(self.energy_min, self.energy_max, int(self.sample_count))

    def with_lengths(self, lengths) -> "SweepConfig":
        return dataclasses.replace(self, lengths=tuple(lengths))


@dataclass(frozen=True)
class Spectrum:
    abscissa: np.ndarray
    signal: np.ndarray
    metadata: Optional[SweepConfig] = None
    notes: tuple = ()

    def __post_init__(self):
        x = np.asarray(self.abscissa, dtype=float)
        y = np.asarray(self.signal, dtype=float)
        if x.shape != y.shape or x.ndim != 1:
            raise ConfigurationError("abscissa and signal must be 1-D arrays of equal length")
        if x.size > 1 and not np.all(np.diff(x) > 0):
            raise ConfigurationError("abscissa must be strictly increasing")
        object.__setattr__(self, "abscissa", x)
        object.__setattr__(self, "signal", y)


@dataclass(frozen=True)
class PeakReport:
    """Carrier maxima of a spectrum and, when modulated, its beat envelope.

    ``envelope_period`` is the full period of the signed modulation factor,
    i.e. twice the distance between successive envelope nodes (the carrier
    flips phase by pi at every node). ``carrier_period`` is the mean peak
    spacing between those nodes, or ``mean_spacing`` if there are none.
    """

    peak_positions: np.ndarray
    peak_heights: np.ndarray
    spacings: np.ndarray
    mean_spacing: float
    envelope_period: Optional[float] = None
    carrier_period: Optional[float] = None
    node_positions: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def envelope_ratio(self) -> Optional[float]:
        if self.envelope_period is None or not self.carrier_period:
            return None
        return self.envelope_period / self.carrier_period


@dataclass(frozen=True)
class LengthScan:
    lengths: np.ndarray
    mean_spacings: np.ndarray
    exponent: float

    def pairs(self):
        return list(zip(self.lengths.tolist(), self.mean_spacings.tolist()))


def _velocities(config: SweepConfig, energies):
    if config.velocity_model is not None:
        return np.asarray(config.velocity_model(energies), dtype=float)
    n = config.beam.central_quantum_number
    e_int = internal_energy(config.system, n, config.constants)
    return velocity_array(energies, e_int, config.beam.com_mass)


def sweep_phase(config: SweepConfig, energies, length: float, l: int = 1) -> np.ndarray:
    """Phase l k(E) L accumulated over ``length``."""
    n = config.beam.central_quantum_number
    omega = effective_frequency(config.system, n, config.constants)
    return l * omega * length / _velocities(config, np.asarray(energies, dtype=float))


def transmission_sweep(config: SweepConfig) -> Spectrum:
    energies = config.energies()
    return Spectrum(energies, transmission_signal(config, energies), config, (SIGNAL_MODEL,))


def transmission_signal(config: SweepConfig, energies) -> np.ndarray:
    """Detector signal at arbitrary total ``energies`` (J), ignoring the sweep grid."""
    energies = np.asarray(energies, dtype=float)
    n = config.beam.central_quantum_number
    omega = effective_frequency(config.system, n, config.constants)
    k = omega / _velocities(config, energies)
    signal = np.zeros_like(energies)
    for path in config.lengths:
        for l, w in config.mixture.entries:
            signal += path.weight * abs(w) ** 2 * (1.0 + np.cos(l * k * path.length))
    return signal


def local_fringe_spacing(config: SweepConfig, energy: float, length: float, l: int = 1) -> float:
    """Analytic energy spacing 2 pi / |d phase / dE| at total energy ``energy``.

    For v = sqrt(2 K / M) this is 4 pi K v / (l omega L), K the kinetic energy.
    """
    n = config.beam.central_quantum_number
    e_int = internal_energy(config.system, n, config.constants)
    kinetic = energy - e_int
    if not kinetic > 0:
        raise DomainError("energy lies in the evanescent region")
    v = math.sqrt(2.0 * kinetic / config.beam.com_mass)
    omega = effective_frequency(config.system, n, config.constants)
    return 4.0 * math.pi * kinetic * v / (l * omega * length)


def _refine(x, y, idx):
    """Three-point parabolic vertex through each sampled maximum."""
    pos = x[idx].astype(float)
    height = y[idx].astype(float)
    inner = (idx > 0) & (idx < len(y) - 1)
    i = idx[inner]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    denom = y0 - 2.0 * y1 + y2
    safe = denom < 0
    delta = np.where(safe, 0.5 * (y0 - y2) / np.where(safe, denom, -1.0), 0.0)
    step = 0.5 * (x[i + 1] - x[i - 1])
    pos[inner] = x[i] + delta * step
    height[inner] = y1 - 0.25 * (y0 - y2) * delta
    return pos, height


def _envelope(positions, heights, offset):
    """Nodes of the peak-height envelope, located by signed linear interpolation."""
    if positions.size < 5:
        return np.empty(0)
    top, bottom = heights.max(), heights.min()
    if top - offset <= 0 or (top - bottom) / (top - offset) < MIN_MODULATION_DEPTH:
        return np.empty(0)
    minima, _ = find_peaks(-heights, prominence=0.25 * (top - bottom))
    nodes = []
    for m in minima:
        near = m - 1 if heights[m - 1] < heights[m + 1] else m + 1
        ym = max(heights[m] - offset, 0.0)
        yn = max(heights[near] - offset, 0.0)
        frac = ym / (ym + yn) if ym + yn > 0 else 0.0
        nodes.append(positions[m] + (positions[near] - positions[m]) * frac)
    return np.asarray(nodes)


def detect_peaks(spectrum: Spectrum, min_prominence: float = 1e-3) -> PeakReport:
    """Prominence-filtered maxima with spacings and beat envelope (if any)."""
    if not min_prominence > 0:
        raise DomainError("min_prominence must be positive")
    x, y = spectrum.abscissa, spectrum.signal
    idx, _ = find_peaks(y, prominence=min_prominence)
    positions, heights = _refine(x, y, idx)
    spacings = np.diff(positions)
    mean_spacing = float(spacings.mean()) if spacings.size else math.nan

    nodes = _envelope(positions, heights, float(y.mean()))
    envelope_period = None
    carrier_period = mean_spacing if spacings.size else None
    if nodes.size >= 2:
        envelope_period = float(2.0 * np.mean(np.diff(nodes)))
        carriers = []
        for a, b in zip(nodes[:-1], nodes[1:]):
            inside = positions[(positions > a) & (positions < b)]
            if inside.size >= 2:
                carriers.append((inside[-1] - inside[0]) / (inside.size - 1))
        if carriers:
            carrier_period = float(np.mean(carriers))
    return PeakReport(positions, heights, spacings, mean_spacing,
                      envelope_period, carrier_period, nodes)


def beat_envelope(spectrum: Spectrum, min_prominence: float = 1e-3) -> PeakReport:
    """Beat analysis of a two-length sweep; ``envelope_period`` is None when unmodulated."""
    config = spectrum.metadata
    if config is None or len(config.lengths) != 2:
        raise ConfigurationError("beat analysis needs a spectrum swept with exactly two lengths")
    return detect_peaks(spectrum, min_prominence)


def inverse_length_check(config: SweepConfig, lengths: Sequence[float],
                         min_prominence: float = 1e-3) -> LengthScan:
    """Mean fringe spacing per flight length and the fitted exponent p in spacing ~ L^p."""
    lengths = [float(L) for L in lengths]
    if len(lengths) < 2:
        raise ConfigurationError("need at least two lengths")
    spacings = []
    for L in lengths:
        spectrum = transmission_sweep(config.with_lengths([PathLength("L", L)]))
        report = detect_peaks(spectrum, min_prominence)
        if not report.spacings.size:
            raise DomainError(f"fewer than two fringes in the sweep window for L = {L:g} m")
        spacings.append(report.mean_spacing)
    lengths_arr = np.asarray(lengths)
    spacings_arr = np.asarray(spacings)
    if np.ptp(lengths_arr) == 0:
        exponent = math.nan
    else:
        exponent = float(np.polyfit(np.log(lengths_arr), np.log(spacings_arr), 1)[0])
    return LengthScan(lengths_arr, spacings_arr, exponent)


def separate_scales(x, y, min_prominence: float = 1e-3):
    """Fine and coarse fringe periods of a pattern with two well separated scales.

    The fine period is the mean spacing of all maxima; the coarse one is
    measured after a boxcar average over one fine period.
    """
    spectrum = Spectrum(x, y)
    fine = detect_peaks(spectrum, min_prominence).mean_spacing
    if not math.isfinite(fine):
        raise DomainError("no fine fringes found")
    step = float(np.mean(np.diff(spectrum.abscissa)))
    window = max(1, int(round(fine / step)))
    smooth = uniform_filter1d(spectrum.signal, window, mode="nearest")
    # the window is a whole number of samples, so some fine ripple survives;
    # judge coarse maxima relative to the smoothed swing
    prominence = max(min_prominence, 0.25 * float(np.ptp(smooth)))
    coarse = detect_peaks(Spectrum(spectrum.abscissa, smooth), prominence).mean_spacing
    return fine, coarse
