"""scikit-learn style wrappers around the sweep, peak and evolution routines.

These let the numerical kernels be dropped into sklearn pipelines and
parameter searches; all physics lives in the functional modules.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .analysis import PathLength, Spectrum, SweepConfig, detect_peaks, transmission_signal
from .evolution import EvolutionParams, WaveField, evolve
from .exceptions import ConfigurationError
from .interference import HarmonicMixture
from .physcore import CODATA

__all__ = ["TransmissionSweep", "FringeDetector", "SplitStepPropagator"]


class TransmissionSweep(TransformerMixin, BaseEstimator):
    """Map total energies (J) to the additive-cosine transmission signal.

    Parameters
    ----------
    system : InternalSystem
        Internal degree of freedom supplying the effective frequency.
    beam : BeamSpec
        Supplies the mass and the central quantum number.
    lengths : sequence of float
        Flight lengths in metres, each with unit weight.
    mixture : HarmonicMixture, optional
        Harmonic content; defaults to the fundamental only.

    Examples
    --------
    >>> sweep = TransmissionSweep(system, beam, lengths=(2.0,)).fit()
    >>> signal = sweep.transform(energies.reshape(-1, 1)).ravel()
    """

    def __init__(self, system=None, beam=None, lengths=(1.0,), mixture=None):
        self.system = system
        self.beam = beam
        self.lengths = lengths
        self.mixture = mixture

    def fit(self, X=None, y=None):
        if self.system is None or self.beam is None:
            raise ConfigurationError("TransmissionSweep needs a system and a beam")
        if len(self.lengths) == 0:
            raise ConfigurationError("at least one flight length is required")
        self.path_lengths_ = [PathLength(f"L{i + 1}", float(L)) for i, L in enumerate(self.lengths)]
        self.mixture_ = self.mixture if self.mixture is not None else HarmonicMixture()
        return self

    def transform(self, X):
        check_is_fitted(self, "path_lengths_")
        X = check_array(X, ensure_2d=True)
        if X.shape[1] != 1:
            raise ConfigurationError("X must have a single column of energies")
        energies = X[:, 0]
        config = SweepConfig(1.0, 2.0, 16, self.path_lengths_, self.system, self.beam,
                             self.mixture_, constants=CODATA)
        return transmission_signal(config, energies).reshape(-1, 1)


class FringeDetector(BaseEstimator):
    """Locate maxima of a sampled signal and summarise spacings and beats.

    ``fit(X, y)`` takes the abscissa as a single-column ``X`` and the
    signal as ``y``.

    Attributes
    ----------
    peak_positions_ : ndarray
    mean_spacing_ : float
    envelope_period_ : float or None
    carrier_period_ : float or None
    report_ : PeakReport
    """

    def __init__(self, min_prominence=1e-3):
        self.min_prominence = min_prominence

    def fit(self, X, y):
        X = check_array(X, ensure_2d=True)
        y = np.asarray(y, dtype=float).ravel()
        if X.shape[1] != 1 or X.shape[0] != y.size:
            raise ConfigurationError("X must be one column with as many rows as y")
        report = detect_peaks(Spectrum(X[:, 0], y), self.min_prominence)
        self.report_ = report
        self.peak_positions_ = report.peak_positions
        self.mean_spacing_ = report.mean_spacing
        self.envelope_period_ = report.envelope_period
        self.carrier_period_ = report.carrier_period
        return self

    def predict(self, X=None):
        """Return the detected peak positions."""
        check_is_fitted(self, "report_")
        return self.peak_positions_


class SplitStepPropagator(TransformerMixin, BaseEstimator):
    """Evolve each row of a complex array as an independent periodic mode amplitude.

    Parameters
    ----------
    domain_length, mode, gyroaction, omega
        Grid and equation parameters (SI units).
    time_step, step_count : float, int
        Strang step and number of steps.
    """

    def __init__(self, domain_length=1.0, mode=1, gyroaction=1.0, omega=0.0,
                 time_step=1e-3, step_count=100):
        self.domain_length = domain_length
        self.mode = mode
        self.gyroaction = gyroaction
        self.omega = omega
        self.time_step = time_step
        self.step_count = step_count

    def fit(self, X=None, y=None):
        self.params_ = EvolutionParams(self.time_step, self.step_count)
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        X = np.atleast_2d(np.asarray(X, dtype=complex))
        out = np.empty_like(X)
        for i, row in enumerate(X):
            field = WaveField(row, self.domain_length, self.mode, self.gyroaction, self.omega)
            out[i] = evolve(field, self.params_).samples
        return out
