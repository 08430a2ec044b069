from fractions import Fraction

import pytest

from su2abelian.dehn import (
    LensSpace,
    SpliceDescriptor,
    cfrac_eval,
    cfrac_of,
    lemma_11_13_check,
    lens_homeo,
    mg_fillings,
    mg_fillings_conjectural,
    splice_h1,
    torus_knot_lens_orders,
)
from su2abelian.errors import DivisionByZero, InvalidSplice, InvalidTorusKnot, PreconditionError


def test_cfrac_examples():
    assert cfrac_eval([3, 2]) == Fraction(7, 2)
    assert cfrac_eval([2, -2, 1, 2, -2, -1]) == Fraction(14, 11)
    assert cfrac_eval([5]) == 5
    assert cfrac_of(Fraction(7, 2)) == [3, 2]
    assert cfrac_of(Fraction(21, 13)) == [1, 1, 1, 1, 1, 2]
    assert cfrac_of(5) == [5]
    with pytest.raises(DivisionByZero):
        cfrac_eval([1, 0])


def test_cfrac_roundtrip():
    for p in range(-40, 41):
        for q in range(1, 25):
            x = Fraction(p, q)
            assert cfrac_eval(cfrac_of(x)) == x


def brute_lens_homeo(p, q1, q2):
    """Oracle: q2 in {+-q1, +-q1^-1} checked by scanning all residues."""
    inv = [x for x in range(p) if (q1 * x) % p == 1]
    return any((q2 - s * c) % p == 0 for c in [q1] + inv for s in (1, -1))


def test_lens_examples():
    assert lens_homeo(LensSpace(7, 2), LensSpace(7, 4))
    assert not lens_homeo(LensSpace(5, 1), LensSpace(5, 2))
    assert lens_homeo(LensSpace(11, 3), LensSpace(11, 3))
    assert not lens_homeo(LensSpace(7, 2), LensSpace(5, 2))


def test_lens_against_oracle():
    from math import gcd

    for p in range(3, 30):
        for q1 in range(1, p):
            for q2 in range(1, p):
                if gcd(p, q1) == gcd(p, q2) == 1:
                    assert lens_homeo(LensSpace(p, q1), LensSpace(p, q2)) == brute_lens_homeo(p, q1, q2)


def test_lens_conventions():
    assert LensSpace.from_fraction(Fraction(-7, 2)) == LensSpace(7, -2)
    assert str(LensSpace(1, 0)) == "L(1,0)"
    with pytest.raises(ValueError):
        LensSpace(6, 2)


def test_splice():
    assert splice_h1(SpliceDescriptor(2, 3, 2, 3)) == 35
    assert splice_h1(SpliceDescriptor(2, 3, -2, 3)) == 37
    with pytest.raises(InvalidSplice):
        SpliceDescriptor(1, 1, 2, 3)


def test_mg_rows():
    t = mg_fillings(1)
    assert [str(e.manifold) for e in t.entries] == ["Y(T2,3, T2,3)", "L(7,2)", "L(14,11)", "L(21,13)"]
    t = mg_fillings(2)
    assert [str(e.manifold) for e in t.entries] == ["Y(T2,3, T2,5)", "L(9,2)", "L(25,11)", "L(34,13)"]
    with pytest.raises(PreconditionError):
        mg_fillings(0)


def test_mg_splice_order_is_abcd_minus_one():
    # |2 * 3 * 2 * (2g + 1) - 1| = 24g + 11
    for g in range(1, 51):
        assert mg_fillings(g).entry("r_T").h1_order == 24 * g + 11


def test_mg_conjectural():
    t = mg_fillings_conjectural(3)
    assert t.conjectural and t.g == -4
    assert [e.manifold.p for e in t.entries] == [3, 41, 44]


def test_torus_knot_orders():
    assert torus_knot_lens_orders(3, 17, 2) == {50, 52, 101, 103}
    assert torus_knot_lens_orders(2, 3, 1) == {5, 7}
    with pytest.raises(InvalidTorusKnot):
        torus_knot_lens_orders(1, 5, 1)


def test_lemma_11_13_examples():
    assert lemma_11_13_check(1, 20) <= {(3, 17)}
    assert lemma_11_13_check(5, 20) <= {(3, 17)}
    assert lemma_11_13_check(1, 2) == set()
