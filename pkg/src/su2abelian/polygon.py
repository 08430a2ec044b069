"""Polygon orbifold groups and the triangle inequalities for SU(2).

Three elements of SU(2) with rotation angles theta1, theta2, theta3 and
product 1 exist exactly when the angles satisfy the spherical triangle
inequalities; whether they can be chosen non-commuting depends on strictness.
This module decides that, builds the elements, and assembles explicit
non-abelian representations of

    Delta(a1, ..., an) = <c1, ..., cn | ci^ai, c1 c2 ... cn>.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import Inadmissible, NoWitness
from .presentation import GroupPresentation
from .quaternion import (
    MINUS_ONE,
    ONE,
    VI,
    VJ,
    ImaginaryUnitVector,
    Representation,
    UnitQuaternion,
    qaxis,
    qexp,
    qmul,
)

STRICT_MARGIN = 1e-12


class TripleStatus(enum.Enum):
    NoRep = "NoRep"
    AbelianOnly = "AbelianOnly"
    NonabelianExists = "NonabelianExists"


@dataclass(frozen=True)
class AngleTriple:
    theta1: float
    theta2: float
    theta3: float

    def __post_init__(self):
        for t in (self.theta1, self.theta2, self.theta3):
            if not -1e-12 <= t <= math.pi + 1e-12:
                raise ValueError(f"angle {t} outside [0, pi]")

    def __iter__(self):
        return iter((self.theta1, self.theta2, self.theta3))


@dataclass(frozen=True)
class PolygonSignature:
    alphas: tuple

    def __post_init__(self):
        a = tuple(sorted(int(x) for x in self.alphas))
        if len(a) < 3 or a[0] < 2:
            raise ValueError("polygon signature needs n >= 3 orders, each >= 2")
        object.__setattr__(self, "alphas", a)

    def __len__(self):
        return len(self.alphas)


def _slacks(t1, t2, t3, full):
    # the four quantities that must be >= 0
    return (t1 + t2 - t3, t2 + t3 - t1, t3 + t1 - t2, full - (t1 + t2 + t3))


def angle_triple_status(t: AngleTriple) -> TripleStatus:
    s = _slacks(t.theta1, t.theta2, t.theta3, 2 * math.pi)
    # a violation below the margin is rounding, not a genuine failure
    if min(s) < -STRICT_MARGIN:
        return TripleStatus.NoRep
    if min(s) > STRICT_MARGIN:
        return TripleStatus.NonabelianExists
    return TripleStatus.AbelianOnly


def angle_triple_status_rational(t1, t2, t3) -> TripleStatus:
    """Exact version for angles given as rational multiples of pi.

    ``angle_triple_status_rational(Fraction(1, 2), Fraction(1, 4), Fraction(3, 4))``
    is the triple (pi/2, pi/4, 3pi/4).
    """
    t1, t2, t3 = Fraction(t1), Fraction(t2), Fraction(t3)
    if not all(0 <= t <= 1 for t in (t1, t2, t3)):
        raise ValueError("angles must lie in [0, pi]")
    s = _slacks(t1, t2, t3, 2)
    if min(s) < 0:
        return TripleStatus.NoRep
    if min(s) > 0:
        return TripleStatus.NonabelianExists
    return TripleStatus.AbelianOnly


def construct_triple(t: AngleTriple) -> tuple:
    """Unit vectors v1, v2, v3 with exp(v1 t1) exp(v2 t2) exp(v3 t3) = 1.

    Gauge: v1 = i and v2 in the i-j plane with nonnegative j-component.
    """
    if angle_triple_status(t) is TripleStatus.NoRep:
        raise Inadmissible(f"angles {tuple(t)} violate the triangle inequalities")
    t1, t2, t3 = t
    v1 = VI
    denom = math.sin(t1) * math.sin(t2)
    if abs(denom) < 1e-15:
        v2 = VJ
    else:
        c = (math.cos(t1) * math.cos(t2) - math.cos(t3)) / denom
        c = min(1.0, max(-1.0, c))
        v2 = ImaginaryUnitVector(c, math.sqrt(max(0.0, 1.0 - c * c)), 0.0)
    z = qmul(qexp(v1, t1), qexp(v2, t2))
    v3 = qaxis(z.inverse()).axis
    if v3 is None:
        v3 = VI
    return v1, v2, v3


def triple_elements(t: AngleTriple) -> tuple:
    """The three quaternions exp(vi ti) from :func:`construct_triple`."""
    vs = construct_triple(t)
    return tuple(qexp(v, th) for v, th in zip(vs, t))


def polygon_presentation(alphas: Sequence[int]) -> GroupPresentation:
    """<c1..cn | ci^ai, c1...cn> in the order given."""
    n = len(alphas)
    gens = tuple(f"c{k + 1}" for k in range(n))
    rels = [((k, a),) for k, a in enumerate(alphas)]
    rels.append(tuple((k, 1) for k in range(n)))
    return GroupPresentation(gens, tuple(rels))


def _is_2pq(alphas) -> bool:
    return all(a == 2 for a in alphas[:-2])


def delta_has_nonabelian(sig: PolygonSignature) -> bool:
    a = sig.alphas
    return not (_is_2pq(a) or a == (3, 3, 3))


def _delta_3333():
    w = 2 * math.pi / 3
    return (qexp(VI, w), qexp(VJ, w), qexp(VJ, -w), qexp(VI, -w))


def _delta_2333():
    w = 2 * math.pi / 3
    s = math.sqrt(3.0)
    v2 = VI
    v3 = ImaginaryUnitVector(-1 / 3, 2 / 3, 2 / 3)
    v4 = ImaginaryUnitVector(-1 / 3, (-1 - s) / 3, (-1 + s) / 3)
    return (MINUS_ONE, qexp(v2, w), qexp(v3, w), qexp(v4, w))


def _triangle_witness(a1, a2, a3) -> tuple:
    # sorted a1 <= a2 <= a3, not of the form (2,p,q) or (3,3,3)
    m = math.floor((Fraction(1, a1) - Fraction(1, a2)) * a3) + 1
    t = AngleTriple(2 * math.pi / a1, 2 * math.pi / a2, 2 * math.pi * m / a3)
    return triple_elements(t)


def delta_witness(sig: PolygonSignature) -> Representation:
    """A non-abelian representation of Delta(sig), generators in sorted order."""
    if not delta_has_nonabelian(sig):
        raise NoWitness(f"Delta{sig.alphas} has only abelian representations")
    a = sig.alphas
    n = len(a)
    gens = tuple(f"c{k + 1}" for k in range(n))
    if n == 3:
        return Representation(_triangle_witness(*a), gens)
    tail3 = a[-3:]
    if delta_has_nonabelian(PolygonSignature(tail3)):
        ims = (ONE,) * (n - 3) + _triangle_witness(*tail3)
    elif a[-4:] == (3, 3, 3, 3):
        ims = (ONE,) * (n - 4) + _delta_3333()
    elif a[-4:] == (2, 3, 3, 3):
        ims = (ONE,) * (n - 4) + _delta_2333()
    else:  # unreachable for valid signatures
        raise NoWitness(f"no construction for Delta{a}")
    return Representation(ims, gens)


def explicit_2244() -> tuple:
    """The (2,2,4,4) images (c1, c2, c3, c4) used with h -> -1."""
    c3 = qexp(VJ, math.pi / 4)
    return (
        UnitQuaternion(0.0, 1.0, 0.0, 0.0),
        UnitQuaternion(0.0, -1.0, 0.0, 0.0),
        c3,
        c3.inverse(),
    )
