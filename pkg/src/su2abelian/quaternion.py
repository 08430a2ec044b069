"""Unit quaternions as elements of SU(2), and representations of presented groups.

SU(2) is identified with the unit quaternions ``w + xi + yj + zk``.  Every
element can be written ``cos(theta) + sin(theta) v`` with ``theta`` in
``[0, pi]`` and ``v`` a purely imaginary unit quaternion; :func:`qexp` and
:func:`qaxis` convert between the two descriptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import UnknownGenerator

AXIS_EPS = 1e-10


@dataclass(frozen=True)
class UnitQuaternion:
    w: float
    x: float
    y: float
    z: float

    @classmethod
    def normalized(cls, w, x=0.0, y=0.0, z=0.0) -> "UnitQuaternion":
        w, x, y, z = float(w), float(x), float(y), float(z)
        n = math.sqrt(w * w + x * x + y * y + z * z)
        if n == 0.0:
            raise ValueError("cannot normalize the zero quaternion")
        return cls(w / n, x / n, y / n, z / n)

    @classmethod
    def from_array(cls, a) -> "UnitQuaternion":
        return cls.normalized(*(float(t) for t in a))

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def as_list(self) -> list:
        return [self.w, self.x, self.y, self.z]

    def norm(self) -> float:
        return math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)

    def inverse(self) -> "UnitQuaternion":
        return UnitQuaternion(self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other: "UnitQuaternion") -> "UnitQuaternion":
        return qmul(self, other)

    def __neg__(self) -> "UnitQuaternion":
        return UnitQuaternion(-self.w, -self.x, -self.y, -self.z)

    def __pow__(self, k: int) -> "UnitQuaternion":
        base = self if k >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(k)):
            out = qmul(out, base)
        return out

    def distance(self, other: "UnitQuaternion") -> float:
        """Euclidean distance in R^4."""
        return math.sqrt(
            (self.w - other.w) ** 2
            + (self.x - other.x) ** 2
            + (self.y - other.y) ** 2
            + (self.z - other.z) ** 2
        )

    def imag(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __str__(self):
        return f"({self.w:.6g} + {self.x:.6g}i + {self.y:.6g}j + {self.z:.6g}k)"


ONE = UnitQuaternion(1.0, 0.0, 0.0, 0.0)
MINUS_ONE = UnitQuaternion(-1.0, 0.0, 0.0, 0.0)
I = UnitQuaternion(0.0, 1.0, 0.0, 0.0)
J = UnitQuaternion(0.0, 0.0, 1.0, 0.0)
K = UnitQuaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class ImaginaryUnitVector:
    x: float
    y: float
    z: float

    @classmethod
    def normalized(cls, x, y, z) -> "ImaginaryUnitVector":
        x, y, z = float(x), float(y), float(z)
        n = math.sqrt(x * x + y * y + z * z)
        if n == 0.0:
            raise ValueError("zero vector has no direction")
        return cls(x / n, y / n, z / n)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def as_quaternion(self) -> UnitQuaternion:
        return UnitQuaternion(0.0, self.x, self.y, self.z)

    def dot(self, other: "ImaginaryUnitVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def __neg__(self):
        return ImaginaryUnitVector(-self.x, -self.y, -self.z)


VI = ImaginaryUnitVector(1.0, 0.0, 0.0)
VJ = ImaginaryUnitVector(0.0, 1.0, 0.0)
VK = ImaginaryUnitVector(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class AxisAngle:
    theta: float
    axis: Optional[ImaginaryUnitVector]


def qmul(q1: UnitQuaternion, q2: UnitQuaternion) -> UnitQuaternion:
    """Hamilton product, renormalized to the unit sphere."""
    a1, b1, c1, d1 = q1.w, q1.x, q1.y, q1.z
    a2, b2, c2, d2 = q2.w, q2.x, q2.y, q2.z
    return UnitQuaternion.normalized(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def qexp(v: ImaginaryUnitVector, theta: float) -> UnitQuaternion:
    """cos(theta) + sin(theta) v."""
    s = math.sin(theta)
    return UnitQuaternion(math.cos(theta), s * v.x, s * v.y, s * v.z)


def qaxis(q: UnitQuaternion) -> AxisAngle:
    n = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    # acos(w) loses half the digits near w = +-1
    theta = math.atan2(n, q.w)
    if n < AXIS_EPS:
        return AxisAngle(theta, None)
    return AxisAngle(theta, ImaginaryUnitVector(q.x / n, q.y / n, q.z / n))


def commutator(a: UnitQuaternion, b: UnitQuaternion) -> UnitQuaternion:
    return a * b * a.inverse() * b.inverse()


def rotation_taking(a: ImaginaryUnitVector, b: ImaginaryUnitVector) -> UnitQuaternion:
    """A unit quaternion r with r a r^-1 = b."""
    c = a.dot(b)
    if c < 0.0:
        # near-antipodal is ill-conditioned: half turn a -> -a, then -a -> b
        p = np.cross(a.as_array(), [1.0, 0.0, 0.0])
        if np.linalg.norm(p) < 0.5:
            p = np.cross(a.as_array(), [0.0, 1.0, 0.0])
        flip = UnitQuaternion.normalized(0.0, *p)
        return rotation_taking(-a, b) * flip
    cr = np.cross(a.as_array(), b.as_array())
    return UnitQuaternion.normalized(1.0 + c, *cr)


def conjugate(r: UnitQuaternion, q: UnitQuaternion) -> UnitQuaternion:
    return r * q * r.inverse()


def commutator_solve(z: UnitQuaternion) -> tuple[UnitQuaternion, UnitQuaternion]:
    """Return (A, B) with A B A^-1 B^-1 = z.

    Uses e^{i theta} = [e^{i theta/2}, j], conjugated so that i lands on the
    axis of z.
    """
    aa = qaxis(z)
    if aa.axis is None:
        if z.w > 0:
            return ONE, ONE
        return I, J
    half = qexp(VI, aa.theta / 2)
    r = rotation_taking(VI, aa.axis)
    return conjugate(r, half), conjugate(r, J)


def rational_angle(q: UnitQuaternion, max_denominator: int = 10**4, tol: float = 1e-9):
    """Best-effort p/q with angle(q) = (p/q) pi, or None.

    Only an annotation: commensurability cannot be decided in floating point.
    """
    theta = qaxis(q).theta / math.pi
    f = Fraction(theta).limit_denominator(max_denominator)
    return f if abs(float(f) - theta) < tol else None


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Representation:
    """Images of the generators of a presentation, in generator order."""

    images: tuple
    generators: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if self.generators is not None:
            gens = tuple(self.generators)
            object.__setattr__(self, "generators", gens)
            if len(gens) != len(self.images):
                raise ValueError("one image per generator required")

    @classmethod
    def from_mapping(cls, generators: Sequence[str], mapping: Mapping[str, UnitQuaternion]):
        missing = [g for g in generators if g not in mapping]
        if missing:
            raise UnknownGenerator(f"no image for generator(s) {', '.join(missing)}")
        return cls(tuple(mapping[g] for g in generators), tuple(generators))

    def __len__(self):
        return len(self.images)

    def __getitem__(self, key):
        if isinstance(key, str):
            if self.generators is None:
                raise KeyError(key)
            return self.images[self.generators.index(key)]
        return self.images[key]

    def as_dict(self) -> dict:
        names = self.generators or tuple(f"g{k}" for k in range(len(self.images)))
        return {n: q.as_list() for n, q in zip(names, self.images)}

    def as_array(self) -> np.ndarray:
        return np.array([q.as_list() for q in self.images])

    def conjugated(self, r: UnitQuaternion) -> "Representation":
        return Representation(tuple(conjugate(r, q) for q in self.images), self.generators)


def eval_word(rep: Representation, word) -> UnitQuaternion:
    """Product of generator images along the word, left to right."""
    out = ONE
    n = len(rep.images)
    for g, e in word:
        if not 0 <= g < n or rep.images[g] is None:
            raise UnknownGenerator(f"generator index {g} has no image")
        q = rep.images[g] if e > 0 else rep.images[g].inverse()
        for _ in range(abs(e)):
            out = qmul(out, q)
    return out


def relator_residual(pres, rep: Representation) -> float:
    """max over relators r of |rep(r) - 1|, and 0 for a free group."""
    return max((eval_word(rep, r).distance(ONE) for r in pres.relators), default=0.0)


def is_abelian_rep(rep: Representation, tol: float = 1e-6) -> bool:
    ims = rep.images
    for a in range(len(ims)):
        for b in range(a + 1, len(ims)):
            if commutator(ims[a], ims[b]).distance(ONE) > tol:
                return False
    return True
