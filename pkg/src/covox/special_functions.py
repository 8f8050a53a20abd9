"""Hermite polynomials, oscillator eigenfunctions and the quadratures used to check them.

Conventions
-----------
Physicists' Hermite polynomials throughout: weight ``exp(-x**2)``, leading
coefficient ``2**n``, so that

    chi_n(x) = [1 / (sqrt(pi) 2**n n!)]**(1/2) H_n(x) exp(-x**2 / 2)

is orthonormal on the real line.

Two independent quadratures are provided.  ``hermite_quadrature`` integrates
``exp(-x**2) g(x)`` (the caller divides the Gaussian out of the integrand);
``trapezoid_quadrature`` integrates a plain function on a truncated interval.
They share no code path with the eigenfunction evaluation, which is what makes
them usable as oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .errors import DomainError, OrderOutOfRange

__all__ = [
    "HERMITE_MAX_ORDER",
    "CHI_MAX_ORDER",
    "Quadrature",
    "hermite",
    "log_norm",
    "chi",
    "chi_table",
    "hermite_quadrature",
    "trapezoid_quadrature",
    "integrate_1d",
]

# Raw polynomial values grow like (2x)**n; beyond this the recurrence is not verified.
HERMITE_MAX_ORDER = 32
# The normalized recurrence stays O(1); orthonormality is tested up to this order.
CHI_MAX_ORDER = 256


def _check_order(n: int, limit: int) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise OrderOutOfRange(f"excitation index must be an integer, got {n!r}")
    n = int(n)
    if n < 0 or n > limit:
        raise OrderOutOfRange(f"excitation index {n} outside tested range 0..{limit}")
    return n


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) by upward recurrence.

    Accepts scalars or arrays.  ``n`` above ``HERMITE_MAX_ORDER`` raises
    :class:`OrderOutOfRange`.
    """
    n = _check_order(n, HERMITE_MAX_ORDER)
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def log_norm(n: int) -> float:
    """Natural log of the prefactor [1 / (sqrt(pi) 2**n n!)]**(1/2)."""
    n = _check_order(n, CHI_MAX_ORDER)
    return -0.5 * (0.5 * math.log(math.pi) + n * math.log(2.0) + math.lgamma(n + 1))


def chi_table(n_max: int, x) -> np.ndarray:
    """All eigenfunctions chi_0..chi_{n_max} sampled at ``x``.

    Returns an array of shape ``(n_max + 1,) + x.shape``.  Uses the
    normalized three-term recurrence

        chi_{k+1} = sqrt(2/(k+1)) x chi_k - sqrt(k/(k+1)) chi_{k-1},

    which never forms 2**n n! or H_n explicitly.  Written so that
    chi_k(-x) == (-1)**k chi_k(x) holds bit for bit.
    """
    n_max = _check_order(n_max, CHI_MAX_ORDER)
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(1, n_max):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * x * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


def chi(n: int, x):
    """Normalized oscillator eigenfunction chi_n(x); scalar in, scalar out."""
    values = chi_table(n, x)[-1]
    return values if values.ndim else float(values)


@dataclass(frozen=True)
class Quadrature:
    """Nodes and positive weights for a one-dimensional rule.

    ``kind == "hermite"`` means the rule integrates ``exp(-x**2) g(x)``;
    ``kind == "trapezoid"`` integrates ``g(x)`` on ``[nodes[0], nodes[-1]]``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: Literal["hermite", "trapezoid"]

    def __post_init__(self):
        if self.kind not in ("hermite", "trapezoid"):
            raise DomainError(f"unknown quadrature kind {self.kind!r}")
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise DomainError("nodes and weights must be 1D arrays of equal length")
        if np.any(np.diff(self.nodes) <= 0):
            raise DomainError("quadrature nodes must be strictly increasing")
        if np.any(self.weights <= 0):
            raise DomainError("quadrature weights must be strictly positive")

    def __len__(self) -> int:
        return len(self.nodes)


def hermite_quadrature(n_nodes: int = 128) -> Quadrature:
    """Gauss-Hermite rule, exact for exp(-x**2) times polynomials of degree < 2*n_nodes."""
    if n_nodes < 1:
        raise DomainError("need at least one node")
    x, w = hermgauss(n_nodes)
    return Quadrature(nodes=x, weights=w, kind="hermite")


def trapezoid_quadrature(extent: float = 8.0, step: float | None = 1e-3, count: int | None = None) -> Quadrature:
    """Composite trapezoid rule on [-extent, extent].

    Give either ``step`` (rounded so the grid lands on both endpoints) or the
    total ``count`` of nodes, which takes precedence.
    """
    if extent <= 0:
        raise DomainError("extent must be positive")
    if count is None:
        if step is None or step <= 0:
            raise DomainError("step must be positive")
        count = int(round(2.0 * extent / step)) + 1
    if count < 2:
        raise DomainError("trapezoid rule needs at least two nodes")
    x = np.linspace(-extent, extent, count)
    h = 2.0 * extent / (count - 1)
    w = np.full(count, h)
    w[0] = w[-1] = 0.5 * h
    return Quadrature(nodes=x, weights=w, kind="trapezoid")


def integrate_1d(f: Callable[[np.ndarray], np.ndarray], q: Quadrature) -> float:
    """Sum of w_i f(x_i).

    For the hermite kind the Gaussian weight is already in ``w_i``: pass the
    integrand divided by exp(-x**2).  ``f`` is called once on the node array.
    """
    values = np.broadcast_to(np.asarray(f(q.nodes), dtype=float), q.nodes.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise DomainError(f"integrand not finite at node {i} (x = {q.nodes[i]!r}): {values[i]!r}")
    return math.fsum(q.weights * values)
