"""Seifert fibered spaces: invariants, homology, geometry and SU(2) classification.

A Seifert fibered space is recorded by its base surface and a list of
coprime pairs ``(alpha, beta)``.  The fundamental group used throughout is

* orientable base of genus g: generators a1, b1, ..., ag, bg, c1..cn, h with
  h central, ci^ai h^bi = 1 and c1...cn [a1,b1]...[ag,bg] = 1;
* nonorientable base of genus g: generators a1..ag, c1..cn, h with
  ai^-1 h ai = h^-1, [h, cj] = 1, cj^aj h^bj = 1 and c1...cn a1^2...ag^2 = 1.

:func:`is_su2_abelian` decides whether every SU(2) representation has abelian
image.  When it does not, the verdict carries an explicit representation that
has been checked against the relators.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import IsAbelian, ParseError
from .polygon import (
    AngleTriple,
    PolygonSignature,
    delta_has_nonabelian,
    delta_witness,
    explicit_2244,
    triple_elements,
)
from .presentation import GroupPresentation, abelianization
from .quaternion import (
    I,
    J,
    K,
    MINUS_ONE,
    ONE,
    VI,
    VJ,
    Representation,
    UnitQuaternion,
    commutator_solve,
    conjugate,
    is_abelian_rep,
    qaxis,
    qexp,
    relator_residual,
    rotation_taking,
)
from .smith import AbelianGroup

WITNESS_TOL = 1e-10
COMMUTATOR_TOL = 1e-6


@dataclass(frozen=True)
class BaseSurface:
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < (0 if self.orientable else 1):
            raise ValueError("invalid base genus")

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus

    @property
    def tag(self) -> str:
        if self.orientable:
            return {0: "S2", 1: "T2"}.get(self.genus, f"O{self.genus}")
        return "RP2" if self.genus == 1 else f"N{self.genus}"

    def __str__(self):
        return self.tag


S2 = BaseSurface(True, 0)
T2 = BaseSurface(True, 1)
RP2 = BaseSurface(False, 1)


@dataclass(frozen=True)
class SeifertInvariants:
    base: BaseSurface
    pairs: tuple = ()

    def __post_init__(self):
        ps = tuple((int(a), int(b)) for a, b in self.pairs)
        for a, b in ps:
            if a < 1:
                raise ValueError(f"fiber order {a} must be >= 1")
            if math.gcd(a, b) != 1:
                raise ValueError(f"pair ({a},{b}) is not coprime")
        object.__setattr__(self, "pairs", ps)

    @property
    def alphas(self) -> tuple:
        return tuple(a for a, _ in self.pairs)

    def __str__(self):
        if not self.pairs:
            return f"sfs({self.base.tag})"
        body = ", ".join(f"{a}/{b}" for a, b in self.pairs)
        return f"sfs({self.base.tag}; {body})"


class Certificate(enum.Enum):
    CyclicPi1 = "CyclicPi1"
    RP3ConnectSumRP3 = "RP3ConnectSumRP3"
    Base244 = "Base244"
    Base333EvenH1 = "Base333EvenH1"
    CircleBundleT2Even = "CircleBundleT2Even"


class GeometryTag(enum.Enum):
    Spherical = "Spherical"
    S2xR = "S2xR"
    Euclidean = "Euclidean"
    Nil = "Nil"
    H2xR = "H2xR"
    SL2R = "SL2R-tilde"


@dataclass(frozen=True)
class ClassificationVerdict:
    abelian: bool
    certificate: Optional[Certificate] = None
    witness: Optional[Representation] = None
    residual: Optional[float] = None
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.abelian == (self.witness is not None):
            raise ValueError("witness must be present exactly when not abelian")


# ---------------------------------------------------------------------------
# parsing

_SFS = re.compile(r"\s*sfs\s*\(\s*(S2|RP2|T2|O\d+|N\d+)\s*(?:;(.*))?\)\s*$")
_PAIR = re.compile(r"\s*(-?\d+)\s*/\s*(-?\d+)\s*$")


def parse_base(tag: str) -> BaseSurface:
    if tag == "S2":
        return S2
    if tag == "T2":
        return T2
    if tag == "RP2":
        return RP2
    g = int(tag[1:])
    if tag[0] == "O":
        return BaseSurface(True, g)
    if g < 1:
        raise ValueError("nonorientable genus must be >= 1")
    return BaseSurface(False, g)


def parse_sfs(text: str) -> SeifertInvariants:
    """Parse ``sfs(BASE; a/b, ...)``, e.g. ``sfs(S2; 2/1, 4/1, 4/-3)``."""
    m = _SFS.match(text)
    if not m:
        raise ParseError("expected sfs(BASE; a/b, ...)", text, 0)
    try:
        base = parse_base(m.group(1))
    except ValueError as exc:
        raise ParseError(str(exc), text, m.start(1)) from None
    pairs = []
    body = m.group(2)
    if body is not None and body.strip():
        offset = m.start(2)
        for chunk in body.split(","):
            pm = _PAIR.match(chunk)
            if not pm:
                raise ParseError("expected pair a/b", text, offset)
            a, b = int(pm.group(1)), int(pm.group(2))
            if a < 1 or math.gcd(a, b) != 1:
                raise ParseError(f"invalid fiber {a}/{b}", text, offset)
            pairs.append((a, b))
            offset += len(chunk) + 1
    elif body is not None:
        raise ParseError("empty fiber list after ';'", text, m.start(2))
    return SeifertInvariants(base, tuple(pairs))


# ---------------------------------------------------------------------------
# invariants


def _merge_target(pairs) -> Optional[int]:
    """Index of the alpha >= 2 pair that absorbs the alpha = 1 pairs."""
    idx = [k for k, (a, _) in enumerate(pairs) if a >= 2]
    if not idx:
        return None
    return min(idx, key=lambda k: (pairs[k], k))


def normalize(s: SeifertInvariants) -> SeifertInvariants:
    """Fold all alpha = 1 pairs into one other pair and sort."""
    ps = s.pairs
    k_total = sum(b for a, b in ps if a == 1)
    t = _merge_target(ps)
    if t is None:
        out = [(1, k_total)] if k_total else []
    else:
        out = [p for p in ps if p[0] >= 2]
        a, b = ps[t]
        out[[k for k, p in enumerate(ps) if p[0] >= 2].index(t)] = (a, b + k_total * a)
    return SeifertInvariants(s.base, tuple(sorted(out)))


def pi1_presentation(s: SeifertInvariants) -> GroupPresentation:
    g = s.base.genus
    n = len(s.pairs)
    if s.base.orientable:
        handles = []
        for k in range(1, g + 1):
            handles += [f"a{k}", f"b{k}"]
    else:
        handles = [f"a{k}" for k in range(1, g + 1)]
    gens = tuple(handles) + tuple(f"c{k}" for k in range(1, n + 1)) + ("h",)
    nh = len(handles)
    h = len(gens) - 1
    cs = list(range(nh, nh + n))
    rels = []
    if s.base.orientable:
        for x in list(range(nh)) + cs:
            rels.append(((h, 1), (x, 1), (h, -1), (x, -1)))
    else:
        for x in range(nh):
            rels.append(((x, -1), (h, 1), (x, 1), (h, 1)))
        for x in cs:
            rels.append(((h, 1), (x, 1), (h, -1), (x, -1)))
    for x, (a, b) in zip(cs, s.pairs):
        rels.append(((x, a), (h, b)) if b else ((x, a),))
    prod = [(x, 1) for x in cs]
    if s.base.orientable:
        for k in range(g):
            a, b = 2 * k, 2 * k + 1
            prod += [(a, 1), (b, 1), (a, -1), (b, -1)]
    else:
        prod += [(x, 2) for x in range(nh)]
    if prod:
        rels.append(tuple(prod))
    return GroupPresentation(gens, tuple(rels))


def h1(s: SeifertInvariants) -> AbelianGroup:
    return abelianization(pi1_presentation(s))


def euler_number(s: SeifertInvariants) -> Fraction:
    return -sum((Fraction(b, a) for a, b in s.pairs), Fraction(0))


def orbifold_euler_char(s: SeifertInvariants) -> Fraction:
    return s.base.euler_char - sum((1 - Fraction(1, a) for a, _ in s.pairs), Fraction(0))


def geometry(s: SeifertInvariants) -> GeometryTag:
    chi = orbifold_euler_char(s)
    e = euler_number(s)
    if chi > 0:
        return GeometryTag.Spherical if e else GeometryTag.S2xR
    if chi == 0:
        return GeometryTag.Nil if e else GeometryTag.Euclidean
    return GeometryTag.SL2R if e else GeometryTag.H2xR


# ---------------------------------------------------------------------------
# classification


def _abelian_certificate(n: SeifertInvariants) -> Optional[Certificate]:
    """Certificate for normalized invariants, or None when non-abelian."""
    base, ps = n.base, n.pairs
    if base == S2:
        if len(ps) <= 2:
            return Certificate.CyclicPi1
        alphas = n.alphas
        if alphas == (2, 4, 4):
            return Certificate.Base244
        if alphas == (3, 3, 3) and sum(b for _, b in ps) % 2 == 0:
            return Certificate.Base333EvenH1
        return None
    if base == T2:
        if not ps or (len(ps) == 1 and ps[0][0] == 1 and ps[0][1] % 2 == 0):
            return Certificate.CircleBundleT2Even
        return None
    if base == RP2:
        if not ps:
            return Certificate.RP3ConnectSumRP3
        if len(ps) == 1 and abs(ps[0][1]) == 1:
            return Certificate.CyclicPi1
        return None
    return None


def _fiber_element(v, a, b) -> UnitQuaternion:
    # exp(v b pi / a): its a-th power is (-1)^b, matching h -> -1
    return qexp(v, b * math.pi / a)


def _half_angle(z: UnitQuaternion) -> UnitQuaternion:
    """A square root of z."""
    aa = qaxis(z)
    if aa.axis is None:
        return ONE if z.w > 0 else I
    return qexp(aa.axis, aa.theta / 2)


def _s2_images(ps) -> tuple:
    """(c images, h image) for sorted S2 pairs with all alpha >= 2, n >= 3."""
    alphas = tuple(a for a, _ in ps)
    sig = PolygonSignature(alphas)
    if delta_has_nonabelian(sig):
        return delta_witness(sig).images, ONE
    if len(ps) == 3 and alphas[0] == 2:
        if alphas == (2, 4, 4):
            raise IsAbelian("S2(2,4,4) is SU(2)-abelian")
        thetas = [math.pi / 2]
        for a, b in ps[1:]:
            m = -(-a // 2) - 1
            if (m - b) % 2:
                m += 1
            thetas.append(m * math.pi / a)
        return triple_elements(AngleTriple(*thetas)), MINUS_ONE
    if alphas == (3, 3, 3):
        if sum(b for _, b in ps) % 2 == 0:
            raise IsAbelian("S2(3,3,3) with even beta sum is SU(2)-abelian")
        thetas = [math.pi / 3 if b % 2 else 2 * math.pi / 3 for _, b in ps]
        return triple_elements(AngleTriple(*thetas)), MINUS_ONE
    if alphas == (2, 2, 4, 4):
        return explicit_2244(), MINUS_ONE
    # shape (2, ..., 2, p, q) with n >= 4
    sub, _ = _s2_images(ps[1:])
    r = rotation_taking(qaxis(sub[0]).axis, VI)
    sub = tuple(conjugate(r, q) for q in sub)
    return (J, K) + sub[1:], MINUS_ONE


def _normalized_images(n: SeifertInvariants):
    """(handle images, c images in normalized order, h image)."""
    base, ps = n.base, n.pairs
    g = base.genus
    if base.orientable and g >= 2:
        handles = [I, J, I, J] + [ONE] * (2 * g - 4)
        return handles, [ONE] * len(ps), ONE
    if not base.orientable and g >= 2:
        return [I, J] + [ONE] * (g - 2), [ONE] * len(ps), ONE
    if base == S2:
        cs, h = _s2_images(ps)
        return [], list(cs), h
    cs = [_fiber_element(VI if k == 0 else VJ, a, b) for k, (a, b) in enumerate(ps)]
    prod = ONE
    for c in cs:
        prod = prod * c
    if base == T2:
        return list(commutator_solve(prod.inverse())), cs, MINUS_ONE
    # RP2
    if len(ps) >= 2:
        return [_half_angle(prod.inverse())], cs, MINUS_ONE
    a, b = ps[0]
    return [J], [MINUS_ONE], qexp(VI, a * math.pi / b)


def _power(q: UnitQuaternion, k: int) -> UnitQuaternion:
    return q**k


def _lift(s: SeifertInvariants, cs_norm, h: UnitQuaternion) -> list:
    """Images of c1..cn for the original (unnormalized, unsorted) pairs."""
    ps = s.pairs
    out: list = [None] * len(ps)
    k_total = sum(b for a, b in ps if a == 1)
    for j, (a, b) in enumerate(ps):
        if a == 1:
            out[j] = _power(h, -b)
    t = _merge_target(ps)
    if t is None:
        return out
    q_idx = [k for k, (a, _) in enumerate(ps) if a >= 2]
    mod = [ps[k] for k in q_idx]
    pos = q_idx.index(t)
    mod[pos] = (mod[pos][0], mod[pos][1] + k_total * mod[pos][0])
    # normalized order is the stable sort of the modified pairs
    labels = sorted(range(len(mod)), key=lambda k: (mod[k], k))
    xs = list(cs_norm)
    # bubble sort by Hurwitz moves; the product c1...cn is preserved
    changed = True
    while changed:
        changed = False
        for i in range(len(labels) - 1):
            if labels[i] > labels[i + 1]:
                x, y = xs[i], xs[i + 1]
                xs[i], xs[i + 1] = conjugate(x, y), x
                labels[i], labels[i + 1] = labels[i + 1], labels[i]
                changed = True
    for lab, x in zip(labels, xs):
        out[q_idx[lab]] = x
    out[t] = out[t] * _power(h, k_total)
    return out


def nonabelian_witness(s: SeifertInvariants) -> Representation:
    """Explicit non-abelian representation of pi1_presentation(s).

    Raises IsAbelian when every representation is abelian.
    """
    n = normalize(s)
    cert = _abelian_certificate(n)
    if cert is not None:
        raise IsAbelian(f"{s} is SU(2)-abelian ({cert.value})")
    handles, cs_norm, h = _normalized_images(n)
    cs = _lift(s, cs_norm, h)
    pres = pi1_presentation(s)
    rep = Representation(tuple(handles) + tuple(cs) + (h,), pres.generators)
    res = relator_residual(pres, rep)
    if res >= WITNESS_TOL or is_abelian_rep(rep, COMMUTATOR_TOL):
        raise AssertionError(f"witness construction failed for {s}: residual {res:.3g}")
    return rep


def is_su2_abelian(s: SeifertInvariants) -> ClassificationVerdict:
    n = normalize(s)
    cert = _abelian_certificate(n)
    if cert is not None:
        return ClassificationVerdict(True, cert)
    rep = nonabelian_witness(s)
    return ClassificationVerdict(False, None, rep, relator_residual(pi1_presentation(s), rep))
