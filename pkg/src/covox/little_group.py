"""Real 2x2 unimodular matrices and the three equi-diagonal little-group families.

Every element of SL(2, R) can be conjugated by a rotation into a matrix with
equal diagonal entries.  Depending on whether |trace| is below, at, or above 2
that matrix is a boosted rotation, a shear, or a boosted hyperbolic element;
these correspond to the little groups of massive, massless and imaginary-mass
particles.

Conventions: ``rotation(theta) = [[cos, -sin], [sin, cos]]`` and
``boost(eta) = diag(exp(-eta/2), exp(eta/2))``.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "Unimodular2",
    "LittleGroupKind",
    "EquiDiagonalForm",
    "MAX_RAPIDITY",
    "rotation",
    "boost",
    "boosted_rotation",
    "boosted_hyperbolic",
    "triangular",
    "classify",
    "equi_diagonalize",
    "contraction_sequence",
]

MAX_RAPIDITY = 50.0
DET_TOL = 1e-12


@dataclass(frozen=True)
class Unimodular2:
    """Real matrix [[a, b], [c, d]] with a*d - b*c == 1.

    The determinant check is scaled by |a*d| + |b*c| so that products of
    strongly boosted matrices are not rejected for ordinary rounding.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        entries = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(e) for e in entries):
            raise DomainError(f"matrix entries must be finite: {entries}")
        ad, bc = self.a * self.d, self.b * self.c
        if abs(ad - bc - 1.0) > DET_TOL * max(1.0, abs(ad) + abs(bc)):
            raise DomainError(f"determinant {ad - bc!r} is not 1")

    def __matmul__(self, other: Unimodular2) -> Unimodular2:
        return Unimodular2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> Unimodular2:
        return Unimodular2(self.d, -self.b, -self.c, self.a)

    def max_distance(self, other: Unimodular2) -> float:
        """Largest entrywise absolute difference."""
        return max(abs(p - q) for p, q in zip(self.as_tuple(), other.as_tuple()))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def to_dict(self) -> dict[str, float]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> Unimodular2:
        missing = {"a", "b", "c", "d"} - set(data)
        if missing:
            raise DomainError(f"matrix is missing entries {sorted(missing)}")
        return cls(*(float(data[k]) for k in "abcd"))

    @classmethod
    def from_json(cls, text: str) -> Unimodular2:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"matrix is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise DomainError("matrix JSON must be an object with keys a, b, c, d")
        return cls.from_dict(data)


IDENTITY = Unimodular2(1.0, 0.0, 0.0, 1.0)


class LittleGroupKind(str, enum.Enum):
    MASSIVE = "MassiveLike"
    MASSLESS = "MasslessLike"
    IMAGINARY_MASS = "ImaginaryMassLike"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EquiDiagonalForm:
    """Result of conjugating by ``rotation(angle)``: ``matrix`` has a == d."""

    angle: float
    matrix: Unimodular2


def _check_rapidity(eta: float) -> None:
    if not math.isfinite(eta) or abs(eta) > MAX_RAPIDITY:
        raise DomainError(f"|eta| must be at most {MAX_RAPIDITY}, got {eta!r}")


def rotation(theta: float) -> Unimodular2:
    c, s = math.cos(theta), math.sin(theta)
    return Unimodular2(c, -s, s, c)


def boost(eta: float) -> Unimodular2:
    """Diagonal squeeze diag(exp(-eta/2), exp(eta/2))."""
    _check_rapidity(eta)
    return Unimodular2(math.exp(-0.5 * eta), 0.0, 0.0, math.exp(0.5 * eta))


def boosted_rotation(theta: float, eta: float) -> Unimodular2:
    """boost(eta) @ rotation(theta) @ boost(-eta).

    Equals [[cos, -exp(-eta) sin], [exp(eta) sin, cos]]; the product is formed
    explicitly so that the closed form can serve as an independent check.
    """
    return boost(eta) @ rotation(theta) @ boost(-eta)


def boosted_hyperbolic(lam: float, eta: float) -> Unimodular2:
    """[[cosh, exp(-eta) sinh], [exp(eta) sinh, cosh]] of the hyperbolic angle ``lam``."""
    _check_rapidity(eta)
    ch, sh = math.cosh(lam), math.sinh(lam)
    return Unimodular2(ch, math.exp(-eta) * sh, math.exp(eta) * sh, ch)


def triangular(gamma: float) -> Unimodular2:
    return Unimodular2(1.0, 0.0, float(gamma), 1.0)


def classify(m: Unimodular2, tol: float = 1e-9) -> LittleGroupKind:
    """Little-group type from |trace| relative to 2, with a band of half-width ``tol``."""
    tr = abs(m.trace)
    if tr < 2.0 - tol:
        return LittleGroupKind.MASSIVE
    if tr > 2.0 + tol:
        return LittleGroupKind.IMAGINARY_MASS
    return LittleGroupKind.MASSLESS


def equi_diagonalize(m: Unimodular2) -> EquiDiagonalForm:
    """Rotate ``m`` to equal diagonal entries.

    Under ``rotation(alpha) @ m @ rotation(-alpha)`` the diagonal difference
    becomes (a - d) cos 2alpha - (b + c) sin 2alpha, so
    tan 2alpha = (a - d) / (b + c).  alpha is taken in (-pi/4, pi/4].
    """
    diff = m.a - m.d
    off = m.b + m.c
    scale = max(1.0, abs(m.a), abs(m.b), abs(m.c), abs(m.d))
    if abs(diff) <= 1e-14 * scale:
        # already equi-diagonal to rounding; keeps the operation idempotent
        alpha = 0.0
    elif off == 0.0:
        alpha = math.pi / 4
    else:
        alpha = 0.5 * math.atan(diff / off)
    return EquiDiagonalForm(angle=alpha, matrix=rotation(alpha) @ m @ rotation(-alpha))


def contraction_sequence(gamma: float, eta: float) -> Unimodular2:
    """Boosted rotation whose lower-left entry is held at ``gamma``.

    The angle is theta = arcsin(gamma * exp(-eta)); as eta grows the matrix
    tends to ``triangular(gamma)`` with corrections of order exp(-2 eta).
    """
    ratio = gamma * math.exp(-eta)
    if not abs(ratio) <= 1.0:
        raise DomainError(f"gamma * exp(-eta) = {ratio!r} exceeds 1; boost further")
    return boosted_rotation(math.asin(ratio), eta)
