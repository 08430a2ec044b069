"""Continued fractions, lens spaces, splices and the M_g filling table.

Continued fractions use the convention [a1, a2, ..., ak] = a1 + 1/(a2 + 1/(... + 1/ak)),
with coefficients of either sign allowed on input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DivisionByZero, InvalidSplice, InvalidTorusKnot, PreconditionError


def cfrac_eval(coeffs: Sequence[int]) -> Fraction:
    """Evaluate right to left.

    >>> cfrac_eval([3, 2])
    Fraction(7, 2)
    """
    if not coeffs:
        raise ValueError("empty continued fraction")
    x = Fraction(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        if x == 0:
            raise DivisionByZero("continued fraction tail evaluates to 0")
        x = a + 1 / x
    return x


def cfrac_of(x) -> list:
    """Euclidean expansion; every coefficient after the first is positive."""
    x = Fraction(x)
    out = []
    while True:
        a = x.numerator // x.denominator
        out.append(a)
        r = x - a
        if r == 0:
            return out
        x = 1 / r


@dataclass(frozen=True)
class LensSpace:
    """L(p, q) with q reduced mod p; L(1, 0) is S^3 and L(0, 1) is S^1 x S^2."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p < 0:
            raise ValueError("lens space order must be >= 0")
        if p == 0:
            if abs(q) != 1:
                raise ValueError("L(0, q) requires q = +-1")
            q = 1
        elif gcd(p, q) != 1:
            raise ValueError(f"L({p},{q}): p and q must be coprime")
        else:
            q %= p
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_fraction(cls, x) -> "LensSpace":
        x = Fraction(x)
        return cls(abs(x.numerator), x.denominator if x.numerator >= 0 else -x.denominator)

    def __str__(self):
        return f"L({self.p},{self.q})"


def lens_homeo(L1: LensSpace, L2: LensSpace) -> bool:
    """p1 = p2 and q2 = +-q1^{+-1} mod p."""
    if L1.p != L2.p:
        return False
    p = L1.p
    if p <= 2:
        return True
    q1 = L1.q
    inv = pow(q1, -1, p)
    return L2.q % p in {q1 % p, -q1 % p, inv, -inv % p}


@dataclass(frozen=True)
class SpliceDescriptor:
    """The graph manifold Y(T_{a,b}, T_{c,d})."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if min(abs(self.a), abs(self.b), abs(self.c), abs(self.d)) < 2:
            raise InvalidSplice("torus knot parameters must have absolute value >= 2")
        if gcd(self.a, self.b) != 1 or gcd(self.c, self.d) != 1:
            raise InvalidSplice("torus knot parameters must be coprime")

    def __str__(self):
        return f"Y(T{self.a},{self.b}, T{self.c},{self.d})"


def splice_h1(s: SpliceDescriptor) -> int:
    return abs(s.a * s.b * s.c * s.d - 1)


@dataclass(frozen=True)
class FillingEntry:
    slope: str
    manifold: object
    cfrac: tuple = ()
    h1_order: int = 0


@dataclass(frozen=True)
class FillingTable:
    g: int
    entries: tuple
    conjectural: bool = False

    def entry(self, slope: str) -> FillingEntry:
        return next(e for e in self.entries if e.slope == slope)


def _lens_entry(slope, coeffs, expected: Fraction) -> FillingEntry:
    x = cfrac_eval(coeffs)
    if x != expected:
        raise AssertionError(f"continued fraction {coeffs} gives {x}, expected {expected}")
    L = LensSpace.from_fraction(x)
    return FillingEntry(slope, L, tuple(coeffs), L.p)


def mg_fillings(g: int) -> FillingTable:
    """The four fillings of M_g: three lens spaces and a splice."""
    if g < 1:
        raise PreconditionError("the filling table needs g >= 1")
    r_t = SpliceDescriptor(2, 3, 2, 2 * g + 1)
    entries = (
        FillingEntry("r_T", r_t, (), splice_h1(r_t)),
        _lens_entry("r_2", [g + 2, 2], Fraction(2 * g + 5, 2)),
        _lens_entry("r_11", [g + 1, -2, 1, 2, -2, -1], Fraction(11 * g + 3, 11)),
        _lens_entry("r_13", [g, 1, 1, 1, 1, 2], Fraction(13 * g + 8, 13)),
    )
    return FillingTable(g, entries)


def mg_fillings_conjectural(g: int) -> FillingTable:
    """Lens fillings believed, but not proven, to belong to M_{-g-1}.

    Orders are taken in absolute value so small g still yields lens spaces.
    """
    if g < 1:
        raise PreconditionError("the filling table needs g >= 1")
    rows = (("r_2", 2 * g - 3, 2), ("r_11", 11 * g + 8, 11), ("r_13", 13 * g + 5, 13))
    entries = tuple(
        FillingEntry(slope, LensSpace(abs(p), q if p >= 0 else -q), (), abs(p))
        for slope, p, q in rows
    )
    return FillingTable(-g - 1, entries, conjectural=True)


def torus_knot_lens_orders(a: int, b: int, nmax: int) -> set:
    """{|n a b + 1| : 0 < |n| <= nmax}."""
    if min(abs(a), abs(b)) < 2 or gcd(a, b) != 1:
        raise InvalidTorusKnot(f"T({a},{b}) is not a nontrivial torus knot")
    if nmax < 1:
        raise PreconditionError("nmax must be >= 1")
    return {abs(n * a * b + 1) for n in range(-nmax, nmax + 1) if n}


def lemma_11_13_check(g: int, bound: int) -> set:
    """Coprime 2 <= a < b <= bound with ab dividing 11g+3+-1 and 13g+8+-1."""
    if g < 1 or bound < 2:
        raise PreconditionError("need g >= 1 and bound >= 2")
    n11 = (11 * g + 2, 11 * g + 4)
    n13 = (13 * g + 7, 13 * g + 9)
    out = set()
    for a in range(2, bound + 1):
        for b in range(a + 1, bound + 1):
            if gcd(a, b) != 1:
                continue
            ab = a * b
            if any(x % ab == 0 for x in n11) and any(x % ab == 0 for x in n13):
                out.add((a, b))
    return out
