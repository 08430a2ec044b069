"""Sol manifolds: hyperbolic torus bundles and unions of twisted I-bundles.

The torus bundle with monodromy phi = [[a, b], [c, d]] has

    pi1 = <x, y, t | [x, y], t x t^-1 = x^a y^c, t y t^-1 = x^b y^d>.

Its SU(2) representations with t -> j and x, y on the circle through i are
governed by two angle pairs; the bundle is SU(2)-abelian exactly when both
pairs are integer multiples of pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidGluing, NotHyperbolic, TraceMinusTwo
from .presentation import GroupPresentation, reduce_word
from .quaternion import (
    I,
    J,
    MINUS_ONE,
    ONE,
    VI,
    Representation,
    UnitQuaternion,
    eval_word,
    is_abelian_rep,
    qexp,
    relator_residual,
)

RELATION_TOL = 1e-10


@dataclass(frozen=True)
class Monodromy:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("monodromy must have determinant 1")

    @classmethod
    def from_matrix(cls, A) -> "Monodromy":
        (a, b), (c, d) = A
        return cls(int(a), int(b), int(c), int(d))

    @property
    def trace(self) -> int:
        return self.a + self.d

    def as_matrix(self) -> tuple:
        return ((self.a, self.b), (self.c, self.d))


@dataclass(frozen=True)
class GluingMatrix:
    m: int
    n: int
    p: int
    q: int

    @property
    def det(self) -> int:
        return self.m * self.q - self.n * self.p


@dataclass(frozen=True)
class ThetaPair:
    theta1: float
    theta2: float


@dataclass(frozen=True)
class TorusBundleRep:
    thetas: ThetaPair
    rep: Representation
    nonabelian: bool
    residual: float


def sol_is_su2_abelian(phi: Monodromy) -> bool:
    """Every entry of 2(phi + I) divisible by tau + 2."""
    tau = phi.trace
    if abs(tau) <= 2:
        raise NotHyperbolic(f"trace {tau}: not a Sol monodromy")
    m = tau + 2
    return all((2 * e) % m == 0 for e in (phi.a + 1, phi.b, phi.c, phi.d + 1))


def trace_criterion(phi: Monodromy) -> bool:
    """The equivalent closed form: tau in {-3, -4}, or tau = -6 and phi = I mod 2."""
    tau = phi.trace
    if tau in (-3, -4):
        return True
    return tau == -6 and phi.b % 2 == 0 and phi.c % 2 == 0 and phi.a % 2 == 1


def torus_bundle_presentation(phi: Monodromy) -> GroupPresentation:
    x, y, t = 0, 1, 2

    def conj_rel(g, e, f):
        # t g t^-1 (x^e y^f)^-1
        return reduce_word([(t, 1), (g, 1), (t, -1), (y, -f), (x, -e)])

    rels = (
        ((x, 1), (y, 1), (x, -1), (y, -1)),
        conj_rel(x, phi.a, phi.c),
        conj_rel(y, phi.b, phi.d),
    )
    return GroupPresentation(("x", "y", "t"), rels)


def _near_pi_multiple(theta: float, tol: float = 1e-9) -> bool:
    r = math.fmod(abs(theta), math.pi)
    return min(r, math.pi - r) <= tol


def theta_pairs(phi: Monodromy) -> tuple:
    if phi.trace == -2:
        raise TraceMinusTwo("the angle formulas divide by tau + 2")
    k = 2 * math.pi / (phi.trace + 2)
    return (
        ThetaPair(k * (phi.d + 1), k * -phi.b),
        ThetaPair(k * -phi.c, k * (phi.a + 1)),
    )


def torus_bundle_reps(phi: Monodromy) -> tuple:
    """The two representations x -> e^{i theta1}, y -> e^{i theta2}, t -> j."""
    pres = torus_bundle_presentation(phi)
    out = []
    for tp in theta_pairs(phi):
        rep = Representation(
            (qexp(VI, tp.theta1), qexp(VI, tp.theta2), J), pres.generators
        )
        res = relator_residual(pres, rep)
        if res >= RELATION_TOL:
            raise AssertionError(f"torus bundle relation fails: residual {res:.3g}")
        nonab = not (_near_pi_multiple(tp.theta1) and _near_pi_multiple(tp.theta2))
        out.append(TorusBundleRep(tp, rep, nonab, res))
    return tuple(out)


def nun_presentation(glue: GluingMatrix) -> GroupPresentation:
    m, n, p, q = glue.m, glue.n, glue.p, glue.q
    a1, b1, a2, b2 = 0, 1, 2, 3
    rels = (
        ((b1, 1), (a1, 1), (b1, -1), (a1, 1)),
        ((b2, 1), (a2, 1), (b2, -1), (a2, 1)),
        reduce_word([(a2, -1), (a1, m), (b1, 2 * n)]),
        reduce_word([(b2, -2), (a1, p), (b1, 2 * q)]),
        ((a1, 1), (b1, 2), (a1, -1), (b1, -2)),
    )
    return GroupPresentation(("a1", "b1", "a2", "b2"), tuple(r for r in rels if r))


def image_closure(gens, limit: int = 10000, digits: int = 9) -> list:
    """Elements of the subgroup generated by finitely many quaternions.

    Elements are identified after rounding; gives up past ``limit`` elements.
    """
    def key(q):
        return tuple(round(v, digits) + 0.0 for v in q.as_list())

    seen = {key(ONE): ONE}
    frontier = [ONE]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                for h in (g * s, g * s.inverse()):
                    k = key(h)
                    if k not in seen:
                        seen[k] = h
                        nxt.append(h)
                        if len(seen) > limit:
                            raise ValueError("image is not a small finite group")
        frontier = nxt
    return list(seen.values())


def nun_q8_rep(glue: GluingMatrix) -> Representation:
    """Surjection of the twisted I-bundle union onto the quaternion group."""
    if abs(glue.det) != 1:
        raise InvalidGluing(f"gluing determinant {glue.det} is not +-1")
    fa1 = ONE if (glue.q - 1) % 2 == 0 else MINUS_ONE
    fa2 = fa1**glue.m
    if glue.n % 2:
        fa2 = -fa2
    pres = nun_presentation(glue)
    rep = Representation((fa1, I, fa2, J), pres.generators)
    res = relator_residual(pres, rep)
    if res >= RELATION_TOL:
        raise AssertionError(f"Q8 relation fails: residual {res:.3g}")
    if len(image_closure(rep.images)) != 8 or is_abelian_rep(rep):
        raise AssertionError("image is not the quaternion group")
    return rep


def check_relation(rep: Representation, word, target: UnitQuaternion) -> float:
    return eval_word(rep, word).distance(target)
