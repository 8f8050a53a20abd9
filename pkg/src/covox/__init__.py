"""Covariant harmonic oscillator toolkit.

Submodules:

``special_functions``     Hermite polynomials, oscillator eigenfunctions, quadrature
``little_group``          SL(2, R) little-group matrices and their classification
``covariant_oscillator``  boosted oscillator wave functions and their expansion
``observables``           entropy, widths, form factors, mass spectrum
``cli``                   command-line interface
"""
from .errors import CovoxError, DomainError, InvalidVelocity, OrderOutOfRange, ToleranceError

__version__ = "0.1.0"

__all__ = ["CovoxError", "DomainError", "InvalidVelocity", "OrderOutOfRange", "ToleranceError"]
