"""Observable consequences of the boosted oscillator states.

* excitation probabilities and their entropy when the time separation is not
  measured,
* longitudinal and time-separation widths of the boosted ground state,
* the Breit-frame overlap (coherent form factor) against the static
  Gaussian falloff,
* the mass-squared ladder with its three-dimensional oscillator degeneracies.

Entropies are in nats.  Momentum transfer uses a unit hadron mass,
q**2 = 4 sinh(eta)**2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .covariant_oscillator import (
    WaveGrid,
    default_extent,
    expansion_coefficients,
    psi_boosted,
    truncation_order,
)
from .errors import DomainError
from .special_functions import integrate_1d, trapezoid_quadrature

__all__ = [
    "ProbabilityDistribution",
    "MassSpectrumEntry",
    "excitation_probabilities",
    "entropy",
    "ground_state_entropy",
    "effective_terms",
    "boosted_widths",
    "measured_widths",
    "lightcone_spreads",
    "momentum_transfer_squared",
    "coherent_form_factor",
    "static_form_factor",
    "mass_spectrum",
]


@dataclass(frozen=True)
class ProbabilityDistribution:
    p: np.ndarray
    tail: float

    def total(self) -> float:
        return math.fsum(self.p) + self.tail


@dataclass(frozen=True)
class MassSpectrumEntry:
    lam: int
    mass_squared: float
    degeneracy: int


def excitation_probabilities(n: int, eta: float, tol: float = 1e-12) -> ProbabilityDistribution:
    """p_k = C_k**2, truncated once the remaining weight is at most ``tol``."""
    K = truncation_order(n, eta, tol)
    spec = expansion_coefficients(n, eta, K)
    return ProbabilityDistribution(p=spec.probabilities, tail=spec.tail_bound)


def entropy(n: int, eta: float, tol: float = 1e-15) -> float:
    """-sum p_k ln p_k over the truncated excitation distribution."""
    p = excitation_probabilities(n, eta, tol).p
    p = p[p > 0.0]
    # adding 0.0 turns the -0.0 of a pure state into 0.0
    return -math.fsum(p * np.log(p)) + 0.0


def ground_state_entropy(eta: float) -> float:
    """Closed form for n = 0: cosh**2 ln cosh**2 - sinh**2 ln sinh**2."""
    c2 = math.cosh(eta) ** 2
    s2 = math.sinh(eta) ** 2
    return c2 * math.log(c2) - (s2 * math.log(s2) if s2 > 0.0 else 0.0)


def effective_terms(n: int, eta: float) -> float:
    """exp(entropy): how many rest-frame states are effectively occupied."""
    return math.exp(entropy(n, eta))


def boosted_widths(eta: float) -> tuple[float, float]:
    """Variances of z and t in the boosted ground state, both cosh(2 eta)/2."""
    v = 0.5 * math.cosh(2.0 * eta)
    return v, v


def measured_widths(eta: float, n: int = 0, count: int | None = None) -> tuple[float, float]:
    """Variances of z and t from the sampled |psi|**2 by 2D trapezoid quadrature."""
    grid = _state_grid(n, eta, count)
    norm2 = grid.integrate(grid.samples**2)
    return grid.moment(lambda z, t: z * z) / norm2, grid.moment(lambda z, t: t * t) / norm2


def lightcone_spreads(eta: float) -> tuple[float, float]:
    """Standard deviations of u and v in the boosted ground state; product 1/2."""
    return math.exp(eta) / math.sqrt(2.0), math.exp(-eta) / math.sqrt(2.0)


def _state_grid(n: int, eta: float, count: int | None) -> WaveGrid:
    extent = default_extent(eta)
    if count is None:
        # resolve the squeezed direction: about 12 points per exp(-|eta|)
        count = 2 * int(math.ceil(extent * 6.0 * math.exp(abs(eta)))) + 1
    return WaveGrid.from_function(lambda z, t: psi_boosted(n, eta, z, t), extent, count, n=n, eta=eta)


def momentum_transfer_squared(eta: float) -> float:
    return 4.0 * math.sinh(eta) ** 2


def coherent_form_factor(eta: float) -> tuple[float, float]:
    """Overlap of ground states boosted by -eta and +eta, by 2D quadrature.

    Returns ``(q**2, F)``.  The integrand is an isotropic Gaussian of width
    about 1/sqrt(cosh 2 eta); the grid is scaled to that width.
    """
    width = 1.0 / math.sqrt(math.cosh(2.0 * eta))
    extent = 8.0 * width
    count = 2 * 40 + 1

    def overlap(z, t):
        return psi_boosted(0, -eta, z, t) * psi_boosted(0, eta, z, t)

    grid = WaveGrid.from_function(overlap, extent, count)
    return momentum_transfer_squared(eta), grid.integrate(grid.samples)


def static_form_factor(q: float) -> float:
    """|integral of exp(-z**2) exp(i q z) / sqrt(pi) dz| by trapezoid on the cosine part.

    On a uniform grid the error of this integrand is set by aliasing,
    about exp(-(2 pi / h - q)**2 / 4); the spacing keeps that near exp(-100).
    """
    q = abs(float(q))
    step = min(0.05, 2.0 * math.pi / (q + 20.0))
    quad = trapezoid_quadrature(10.0, step)
    return abs(integrate_1d(lambda x: np.exp(-x * x) * np.cos(q * x) / math.sqrt(math.pi), quad))


def _triple_counts(lambda_max: int) -> np.ndarray:
    # number of (a, b, n) >= 0 with a + b + n = lam, by convolving the
    # single-index counting sequence with itself twice
    ones = np.ones(lambda_max + 1, dtype=np.int64)
    pairs = np.convolve(ones, ones)[: lambda_max + 1]
    return np.convolve(pairs, ones)[: lambda_max + 1]


def mass_spectrum(lambda_max: int, m0_squared: float = 0.0) -> list[MassSpectrumEntry]:
    """M**2 = m0**2 + lambda + 1 with the count of Cartesian states at each lambda."""
    if lambda_max < 0 or lambda_max > 10**4:
        raise DomainError(f"lambda_max must lie in 0..10000, got {lambda_max}")
    counts = _triple_counts(lambda_max)
    return [
        MassSpectrumEntry(lam=lam, mass_squared=m0_squared + lam + 1.0, degeneracy=int(counts[lam]))
        for lam in range(lambda_max + 1)
    ]
