"""Harmonic-oscillator transition matrix elements <nu - l | H~ | nu>.

Closed forms (ladder-operator algebra) cover the linear and quadratic
perturbations; a Gaussian bump is integrated with Gauss-Hermite
quadrature. Hermite functions are generated by the normalised three-term
recurrence

    psi_{n+1}(s) = sqrt(2/(n+1)) s psi_n(s) - sqrt(n/(n+1)) psi_{n-1}(s)

carrying a separate log-scale per sample so that neither the Gaussian
factor nor the polynomial growth under- or overflows at large n.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import roots_hermite

from .exceptions import CapabilityError, DomainError
from .physcore import CODATA

__all__ = [
    "NU_MAX",
    "Linear",
    "Quadratic",
    "Gaussian",
    "Perturbation",
    "OscillatorBasis",
    "oscillator_wavefunction",
    "hermite_functions",
    "beta",
    "beta_closed_form",
    "matrix_element",
    "perturbation_matrix",
    "QuadratureResult",
]

log = logging.getLogger(__name__)

NU_MAX = 10_000
QUAD_RTOL = 1e-10
QUAD_MAX_NODES = 2 ** 14
_RESCALE_AT = 1e150


@dataclass(frozen=True)
class Linear:
    """H~ = strength * xi  (strength in J/m)."""

    strength: float

    def __call__(self, xi):
        return self.strength * xi


@dataclass(frozen=True)
class Quadratic:
    """H~ = strength * xi^2  (strength in J/m^2)."""

    strength: float

    def __call__(self, xi):
        return self.strength * xi ** 2


@dataclass(frozen=True)
class Gaussian:
    """H~ = strength * exp(-xi^2 / (2 width^2))."""

    strength: float
    width: float

    def __post_init__(self):
        if not self.width > 0:
            raise DomainError("Gaussian width must be positive")

    def __call__(self, xi):
        return self.strength * np.exp(-0.5 * (xi / self.width) ** 2)


Perturbation = Union[Linear, Quadratic, Gaussian]


@dataclass(frozen=True)
class OscillatorBasis:
    mass: float
    omega: float
    hbar: float = CODATA.planck_reduced

    def __post_init__(self):
        for name in ("mass", "omega", "hbar"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")

    @property
    def length_scale(self) -> float:
        """sqrt(hbar / (m omega)), m."""
        return math.sqrt(self.hbar / (self.mass * self.omega))


def hermite_functions(s, orders, *, with_gaussian=True):
    """Normalised Hermite functions at scaled coordinate ``s``.

    Returns ``{n: (mantissa, log_scale)}`` for each requested order with
    value = mantissa * exp(log_scale). ``with_gaussian=False`` drops the
    exp(-s^2/2) factor, giving the orthonormal polynomials for the weight
    exp(-s^2).
    """
    s = np.asarray(s, dtype=float)
    wanted = sorted(set(int(n) for n in orders))
    if not wanted:
        return {}
    if wanted[0] < 0:
        raise DomainError("oscillator quantum numbers must be >= 0")
    top = wanted[-1]
    out = {}
    logscale = -0.5 * s ** 2 if with_gaussian else np.zeros_like(s)
    prev = np.zeros_like(s)
    cur = np.full_like(s, math.pi ** -0.25)
    want = set(wanted)
    if 0 in want:
        out[0] = (cur.copy(), logscale.copy())
    for n in range(top):
        nxt = math.sqrt(2.0 / (n + 1)) * s * cur - math.sqrt(n / (n + 1.0)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE_AT
        if big.any():
            factor = np.where(big, np.abs(cur), 1.0)
            cur = cur / factor
            prev = prev / factor
            logscale = logscale + np.log(factor)
        if n + 1 in want:
            out[n + 1] = (cur.copy(), logscale.copy())
    return out


def _check_nu(nu):
    if nu < 0:
        raise DomainError("oscillator quantum number must be >= 0")
    if nu > NU_MAX:
        raise CapabilityError(
            f"explicit oscillator states are limited to nu <= {NU_MAX}; use the closed-form "
            "matrix elements or supply beta as a constant")


def oscillator_wavefunction(basis: OscillatorBasis, nu: int, xi):
    """Normalised eigenfunction chi_nu(xi), 1/sqrt(m)."""
    _check_nu(nu)
    x0 = basis.length_scale
    s = np.asarray(xi, dtype=float) / x0
    mant, logscale = hermite_functions(np.atleast_1d(s), [nu])[int(nu)]
    with np.errstate(under="ignore"):
        value = mant * np.exp(logscale) / math.sqrt(x0)
    return value.reshape(np.shape(s)) if np.ndim(s) else float(value[0])


def beta_closed_form(basis: OscillatorBasis, pert: Perturbation, nu: int, l: int) -> float:
    """Ladder-operator value of <nu - l | H~ | nu> for polynomial perturbations."""
    x0 = basis.length_scale
    if isinstance(pert, Linear):
        if l == 1:
            return pert.strength * x0 * math.sqrt(nu / 2.0)
        return 0.0
    if isinstance(pert, Quadratic):
        if l == 0:
            return pert.strength * x0 ** 2 * (nu + 0.5)
        if l == 2:
            return pert.strength * x0 ** 2 / 2.0 * math.sqrt(nu * (nu - 1.0))
        return 0.0
    raise CapabilityError(f"no closed form for {type(pert).__name__} perturbations")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    nodes: int
    converged: bool


def _gauss_hermite_nodes(count):
    nodes, _ = roots_hermite(count)
    return nodes


def _quadrature_once(basis, pert, bra, ket, count):
    s = _gauss_hermite_nodes(count)
    funcs = hermite_functions(s, [bra, ket, count - 1], with_gaussian=False)
    pa, la = funcs[bra]
    pb, lb = funcs[ket]
    pn, ln = funcs[count - 1]
    # weight w_i = 1 / (N p_{N-1}(s_i)^2)
    with np.errstate(under="ignore", over="ignore"):
        terms = (pa * pb / (count * pn * pn)) * np.exp(la + lb - 2.0 * ln)
    terms = terms * pert(basis.length_scale * s)
    return float(np.sum(terms)), float(np.sum(np.abs(terms)))


def matrix_element(basis: OscillatorBasis, pert: Perturbation, bra: int, ket: int,
                   *, rtol: float = QUAD_RTOL, max_nodes: int = QUAD_MAX_NODES) -> QuadratureResult:
    """<bra | H~ | ket> by adaptive Gauss-Hermite quadrature.

    The node count starts at the smallest power of two that integrates a
    polynomial perturbation exactly and doubles until two successive
    estimates agree to ``rtol`` (relative to the integral of |integrand|).
    """
    _check_nu(bra)
    _check_nu(ket)
    count = 16
    while 2 * count - 1 < bra + ket + 3:
        count *= 2
    count = min(count, max_nodes)
    previous, _ = _quadrature_once(basis, pert, bra, ket, count)
    while count < max_nodes:
        count *= 2
        value, scale = _quadrature_once(basis, pert, bra, ket, count)
        if abs(value - previous) <= rtol * max(scale, abs(value)):
            return QuadratureResult(value, count, True)
        previous = value
    log.warning("Gauss-Hermite quadrature for <%d|H|%d> stopped at %d nodes without "
                "reaching rtol=%g", bra, ket, count, rtol)
    return QuadratureResult(previous, count, False)


def beta(basis: OscillatorBasis, pert: Perturbation, nu: int, l: int,
         method: str = "auto") -> float:
    """Transition amplitude <nu - l | H~ | nu>.

    ``method`` is ``"closed"``, ``"quadrature"`` or ``"auto"`` (closed form
    when one exists, quadrature otherwise).
    """
    if l < 0 or nu < l:
        raise DomainError(f"require nu >= l >= 0, got nu={nu!r}, l={l!r}")
    if method not in ("auto", "closed", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    if method == "closed" or (method == "auto" and not isinstance(pert, Gaussian)):
        return beta_closed_form(basis, pert, nu, l)
    return matrix_element(basis, pert, nu - l, nu).value


def perturbation_matrix(basis: OscillatorBasis, pert, size: int, nodes: int | None = None):
    """Matrix <m | H~ | n> for 0 <= m, n < size from one quadrature pass.

    ``pert=None`` gives the overlap matrix, which should be the identity.
    """
    if size < 1:
        raise DomainError("size must be >= 1")
    _check_nu(size - 1)
    count = nodes or max(16, size + 8)
    s = _gauss_hermite_nodes(count)
    orders = list(range(size)) + [count - 1]
    funcs = hermite_functions(s, orders, with_gaussian=False)
    pn, ln = funcs[count - 1]
    rows = np.empty((size, s.size))
    with np.errstate(under="ignore", over="ignore"):
        for n in range(size):
            pa, la = funcs[n]
            # sqrt(w_i) * p_n(s_i)
            rows[n] = pa / (math.sqrt(count) * np.abs(pn)) * np.exp(la - ln)
    h = np.ones_like(s) if pert is None else pert(basis.length_scale * s)
    return (rows * h) @ rows.T
