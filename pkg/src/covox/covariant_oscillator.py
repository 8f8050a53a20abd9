"""Lorentz-boosted oscillator wave functions of the quark separation coordinates.

Coordinates are in natural oscillator units.  ``z`` is the longitudinal
separation and ``t`` the time separation between the two constituents.  The
light-cone pair is

    u = (z + t) / sqrt(2),    v = (z - t) / sqrt(2).

:func:`boost_point` is the coordinate map z' = cosh(eta) z - sinh(eta) t,
t' = cosh(eta) t - sinh(eta) z.  It sends (u, v) to (exp(-eta) u, exp(eta) v).
The boosted state is the rest state evaluated at the primed point, so its
probability cloud is stretched by exp(eta) along u and shrunk by exp(-eta)
along v.  That is the squeeze picture of a Lorentz boost.

The time oscillator stays in its ground state in the rest frame.  Expanded in
rest-frame eigenstates, the boosted state reads

    psi_eta^n(z, t) = sum_k C_k chi_{n+k}(z) chi_k(t),
    C_k = cosh(eta)**-(n+1) sqrt((n+k)! / (n! k!)) tanh(eta)**k.

The time excitation grows in step with the extra space excitation, so the
difference of the two oscillator energies stays equal to n.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple

import numpy as np
from scipy.special import betainc, gammaln

from .errors import DomainError, InvalidVelocity, OrderOutOfRange, ToleranceError
from .special_functions import CHI_MAX_ORDER, chi

__all__ = [
    "MAX_RAPIDITY",
    "DEFAULT_COUNT",
    "SpacetimePoint",
    "QuarkPairCoords",
    "ExpansionSpectrum",
    "WaveGrid",
    "rapidity_from_beta",
    "boost_point",
    "lightcone",
    "split_coordinates",
    "cartesian_lambda",
    "psi_rest",
    "psi_boosted",
    "psi_cartesian_4d",
    "expansion_coefficients",
    "truncation_order",
    "series_reconstruct",
    "default_extent",
    "apply_H_minus",
    "apply_H_plus",
    "normal_coordinates",
]

SQRT2 = math.sqrt(2.0)
# Truncation bounds and grid defaults are only exercised up to this rapidity.
MAX_RAPIDITY = 10.0
DEFAULT_COUNT = 801
MAX_TRUNCATION = 10**6


class SpacetimePoint(NamedTuple):
    z: float
    t: float


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not math.isfinite(eta) or abs(eta) > MAX_RAPIDITY:
        raise DomainError(f"rapidity must satisfy |eta| <= {MAX_RAPIDITY}, got {eta!r}")
    return eta


def rapidity_from_beta(beta: float) -> float:
    """eta with exp(eta) = sqrt((1 + beta) / (1 - beta))."""
    if not abs(beta) < 1.0:
        raise InvalidVelocity(f"velocity ratio must satisfy |beta| < 1, got {beta!r}")
    return math.atanh(beta)


def boost_point(p: SpacetimePoint, eta: float) -> SpacetimePoint:
    ch, sh = math.cosh(eta), math.sinh(eta)
    z, t = p
    return SpacetimePoint(ch * z - sh * t, ch * t - sh * z)


def lightcone(p: SpacetimePoint):
    z, t = p
    return (z + t) / SQRT2, (z - t) / SQRT2


@dataclass(frozen=True)
class QuarkPairCoords:
    xa: tuple[float, float, float, float]
    xb: tuple[float, float, float, float]


def split_coordinates(q: QuarkPairCoords) -> tuple[np.ndarray, np.ndarray]:
    """Hadron coordinate X = (xa + xb)/2 and quark separation x = (xa - xb)/(2 sqrt 2)."""
    xa = np.asarray(q.xa, dtype=float)
    xb = np.asarray(q.xb, dtype=float)
    if xa.shape != (4,) or xb.shape != (4,):
        raise DomainError("each constituent needs exactly four space-time coordinates")
    return 0.5 * (xa + xb), (xa - xb) / (2.0 * SQRT2)


def cartesian_lambda(a: int, b: int, n: int) -> int:
    """Oscillator quantum number lambda = a + b + n of a time-ground-state solution."""
    for k in (a, b, n):
        if k < 0:
            raise OrderOutOfRange(f"negative excitation index {k}")
    return a + b + n


def psi_rest(n: int, z, t):
    """Rest-frame state chi_n(z) chi_0(t)."""
    return chi(n, z) * chi(0, t)


def psi_boosted(n: int, eta: float, z, t):
    """Boosted state evaluated directly from its light-cone closed form."""
    eta = _check_eta(eta)
    z = np.asarray(z, dtype=float)
    t = np.asarray(t, dtype=float)
    u = (z + t) / SQRT2
    v = (z - t) / SQRT2
    su = math.exp(-eta) * u
    sv = math.exp(eta) * v
    # chi_n(a) chi_0(b) with a**2 + b**2 = exp(-2 eta) u**2 + exp(2 eta) v**2
    out = chi(n, (su + sv) / SQRT2) * chi(0, (su - sv) / SQRT2)
    return out if np.ndim(out) else float(out)


def psi_cartesian_4d(a: int, b: int, n: int, x, y, z, t):
    return chi(a, x) * chi(b, y) * chi(n, z) * chi(0, t)


@dataclass(frozen=True)
class ExpansionSpectrum:
    """Coefficients C_0..C_K of a boosted state over rest-frame eigenstates.

    ``tail_bound`` is the exact probability weight beyond K, a regularized
    incomplete beta function, so it does not suffer from 1 - sum cancellation.
    """

    n: int
    eta: float
    coefficients: np.ndarray
    tail_bound: float

    @property
    def K(self) -> int:
        return len(self.coefficients) - 1

    @property
    def probabilities(self) -> np.ndarray:
        return self.coefficients**2


def _log_binom_sqrt(n: int, k: np.ndarray) -> np.ndarray:
    return 0.5 * (gammaln(n + k + 1.0) - gammaln(n + 1.0) - gammaln(k + 1.0))


def _tail(n: int, T: float, K):
    # P(X > K) for the negative binomial with weights C(n+k, k) (1-T)**(n+1) T**k
    if T == 0.0:
        return np.zeros_like(np.asarray(K, dtype=float))
    return betainc(np.asarray(K, dtype=float) + 1.0, n + 1.0, T)


def expansion_coefficients(n: int, eta: float, K: int) -> ExpansionSpectrum:
    if n < 0:
        raise OrderOutOfRange(f"negative excitation index {n}")
    if K < 0:
        raise DomainError("truncation order K must be non-negative")
    eta = float(eta)
    k = np.arange(K + 1, dtype=float)
    th = math.tanh(eta)
    log_c = -(n + 1) * math.log(math.cosh(eta)) + _log_binom_sqrt(n, k)
    if th == 0.0:
        coeffs = np.zeros(K + 1)
        coeffs[0] = math.exp(log_c[0])
    else:
        sign = np.where((k % 2 == 1) & (th < 0), -1.0, 1.0)
        coeffs = sign * np.exp(log_c + k * math.log(abs(th)))
    tail = float(_tail(n, th * th, K))
    return ExpansionSpectrum(n=n, eta=eta, coefficients=coeffs, tail_bound=tail)


def truncation_order(n: int, eta: float, tol: float) -> int:
    """Smallest K whose tail weight is at most ``tol``."""
    if not 0.0 < tol < 1.0:
        raise DomainError(f"tolerance must lie in (0, 1), got {tol!r}")
    T = math.tanh(eta) ** 2
    if T == 0.0:
        return 0
    hi = 1
    while _tail(n, T, hi) > tol:
        hi *= 2
        if hi > MAX_TRUNCATION:
            raise ToleranceError(f"tail {tol:g} needs more than {MAX_TRUNCATION} terms at eta={eta}")
    lo = 0
    if _tail(n, T, lo) <= tol:
        return 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _tail(n, T, mid) > tol:
            lo = mid
        else:
            hi = mid
    return hi


def _chi_orders(x: np.ndarray) -> Iterator[np.ndarray]:
    """chi_0(x), chi_1(x), ... generated lazily, same recurrence as chi_table."""
    prev = None
    cur = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    k = 0
    while True:
        yield cur
        if k == 0:
            prev, cur = cur, SQRT2 * x * cur
        else:
            prev, cur = cur, math.sqrt(2.0 / (k + 1)) * x * cur - math.sqrt(k / (k + 1)) * prev
        k += 1


def series_reconstruct(n: int, eta: float, K: int, z, t):
    """Partial sum sum_{k<=K} C_k chi_{n+k}(z) chi_k(t).

    Works pointwise on broadcastable arrays with memory independent of K.
    """
    if n + K > CHI_MAX_ORDER:
        raise OrderOutOfRange(f"n + K = {n + K} exceeds tested order {CHI_MAX_ORDER}")
    spec = expansion_coefficients(n, eta, K)
    z, t = np.broadcast_arrays(np.asarray(z, dtype=float), np.asarray(t, dtype=float))
    zs = _chi_orders(z)
    for _ in range(n):
        next(zs)
    total = np.zeros(z.shape)
    for c, cz, ct in zip(spec.coefficients, zs, _chi_orders(t)):
        total += c * cz * ct
    return total if total.ndim else float(total)


def normal_coordinates(x1, x2):
    """y1 = (x1 + x2)/sqrt 2, y2 = (x1 - x2)/sqrt 2; an orthogonal involution."""
    return (x1 + x2) / SQRT2, (x1 - x2) / SQRT2


def default_extent(eta: float) -> float:
    return max(8.0, 6.0 * math.exp(abs(eta)))


@dataclass
class WaveGrid:
    """Real samples on the square [-L, L]**2 with ``count`` points per axis.

    ``samples[i, j]`` is the value at (z_i, t_j): the first axis is z (or x1),
    the second is t (or x2).  ``meta`` carries the state label (n, eta) for
    the JSON descriptor.  When ``ring_invalid`` is set the outermost ring was
    not computed (finite-difference output) and is excluded from norms.
    """

    extent: float
    count: int
    samples: np.ndarray
    meta: dict = field(default_factory=dict)
    ring_invalid: bool = False

    def __post_init__(self):
        if not self.extent > 0:
            raise DomainError("grid extent must be positive")
        if self.count < 3:
            raise DomainError("grid needs at least 3 points per axis")
        if self.samples.shape != (self.count, self.count):
            raise DomainError(f"samples shape {self.samples.shape} does not match count {self.count}")
        if not np.all(np.isfinite(self.samples)):
            raise DomainError("grid samples must be finite")

    @classmethod
    def from_function(cls, f: Callable, extent: float, count: int = DEFAULT_COUNT, **meta) -> WaveGrid:
        ax = np.linspace(-extent, extent, count)
        z, t = np.meshgrid(ax, ax, indexing="ij")
        return cls(extent=float(extent), count=int(count), samples=np.asarray(f(z, t), dtype=float), meta=meta)

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent / (self.count - 1)

    @property
    def axis(self) -> np.ndarray:
        return np.linspace(-self.extent, self.extent, self.count)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return tuple(np.meshgrid(self.axis, self.axis, indexing="ij"))

    def _weights(self) -> np.ndarray:
        w = np.full(self.count, self.spacing)
        w[0] = w[-1] = 0.5 * self.spacing
        return np.outer(w, w)

    def integrate(self, values: np.ndarray) -> float:
        """Trapezoid integral of an array on this grid, summed in fixed order."""
        if self.ring_invalid:
            values = values[1:-1, 1:-1]
            w = np.full((self.count - 2, self.count - 2), self.spacing**2)
        else:
            w = self._weights()
        return math.fsum((w * values).ravel())

    def inner(self, other: WaveGrid) -> float:
        self._check_compatible(other)
        return self.integrate(self.samples * other.samples)

    def norm(self) -> float:
        return math.sqrt(self.integrate(self.samples**2))

    def moment(self, weight: Callable) -> float:
        """Integral of weight(z, t) |psi|**2, e.g. ``moment(lambda z, t: z**2)``."""
        z, t = self.mesh()
        return self.integrate(weight(z, t) * self.samples**2)

    def interior(self) -> np.ndarray:
        return self.samples[1:-1, 1:-1]

    def _check_compatible(self, other: WaveGrid) -> None:
        if other.count != self.count or other.extent != self.extent:
            raise DomainError("grids differ in extent or count")

    def __sub__(self, other: WaveGrid) -> WaveGrid:
        self._check_compatible(other)
        return WaveGrid(self.extent, self.count, self.samples - other.samples,
                        ring_invalid=self.ring_invalid or other.ring_invalid)

    def scaled(self, factor: float) -> WaveGrid:
        return WaveGrid(self.extent, self.count, factor * self.samples, dict(self.meta), self.ring_invalid)

    # serialization

    def descriptor(self) -> dict:
        out = {"extent": self.extent, "count": self.count}
        out.update(self.meta)
        return out

    def to_json(self) -> str:
        return json.dumps(self.descriptor(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        """Header ``z,t,value``, one row per sample, z outermost, shortest round-trip floats."""
        ax = [repr(float(a)) for a in self.axis]
        buf = io.StringIO()
        buf.write("z,t,value\n")
        for i, zs in enumerate(ax):
            row = self.samples[i]
            buf.write("".join(f"{zs},{ax[j]},{float(row[j])!r}\n" for j in range(self.count)))
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, meta: dict | None = None) -> WaveGrid:
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header != ["z", "t", "value"]:
            raise DomainError(f"unexpected CSV header {header}")
        rows = np.array([[float(x) for x in r] for r in reader if r])
        count = math.isqrt(len(rows))
        if count * count != len(rows):
            raise DomainError("CSV does not hold a square grid")
        extent = float(rows[-1, 0])
        return cls(extent=extent, count=count, samples=rows[:, 2].reshape(count, count), meta=dict(meta or {}))


def _second_differences(f: np.ndarray, h: float, step: int = 1):
    """Central second differences along each axis with stencil width ``step``.

    Returned arrays cover the interior [step:-step, step:-step].
    """
    s = step
    c = f[s:-s, s:-s]
    d2z = (f[2 * s:, s:-s] - 2.0 * c + f[:-2 * s, s:-s]) / (s * h) ** 2
    d2t = (f[s:-s, 2 * s:] - 2.0 * c + f[s:-s, :-2 * s]) / (s * h) ** 2
    return d2z, d2t


def _apply_oscillator(grid: WaveGrid, sign: float, tol: float | None) -> WaveGrid:
    f = grid.samples
    h = grid.spacing
    d2z, d2t = _second_differences(f, h)
    z, t = grid.mesh()
    zi, ti = z[1:-1, 1:-1], t[1:-1, 1:-1]
    c = f[1:-1, 1:-1]
    out = np.zeros_like(f)
    out[1:-1, 1:-1] = 0.5 * ((-d2z + zi**2 * c) + sign * (-d2t + ti**2 * c))
    if tol is not None:
        # Richardson estimate of the O(h**2) truncation error from the 2h stencil
        w2z, w2t = _second_differences(f, h, step=2)
        err_z = np.abs(d2z[1:-1, 1:-1] - w2z) / 3.0
        err_t = np.abs(d2t[1:-1, 1:-1] - w2t) / 3.0
        estimate = 0.5 * float(np.max(err_z + err_t)) if err_z.size else math.inf
        if estimate > tol:
            raise ToleranceError(
                f"grid spacing {h:.3g} gives estimated truncation error {estimate:.3g} > {tol:.3g}"
            )
    return WaveGrid(grid.extent, grid.count, out, dict(grid.meta), ring_invalid=True)


def apply_H_minus(grid: WaveGrid, tol: float | None = None) -> WaveGrid:
    """Difference of z and t oscillator Hamiltonians by second-order central differences.

    If ``tol`` is given, raises :class:`ToleranceError` when the estimated
    discretization error exceeds it.
    """
    return _apply_oscillator(grid, -1.0, tol)


def apply_H_plus(grid: WaveGrid, tol: float | None = None) -> WaveGrid:
    """Two-dimensional isotropic oscillator Hamiltonian on an (x1, x2) grid."""
    return _apply_oscillator(grid, 1.0, tol)
