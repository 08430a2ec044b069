import numpy as np
import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from su2abelian.errors import ParseError
from su2abelian.presentation import (
    abelianization,
    exponent_matrix,
    fibonacci_presentation,
    parse_presentation,
    parse_word,
    reduce_word,
    word_length,
)
from su2abelian.smith import AbelianGroup, abelian_group_from_relations, smith_diagonal

from conftest import M016, M118


def sympy_invariants(rows, ngens):
    """Oracle: invariant factors from sympy's Smith normal form."""
    if not rows:
        return AbelianGroup(ngens)
    d = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(d[k, k])) for k in range(min(d.shape))]
    nz = [x for x in diag if x]
    return AbelianGroup(ngens - len(nz), tuple(sorted(x for x in nz if x > 1)))


def test_parse_examples():
    p = parse_presentation(M016)
    assert p.ngens == 2 and len(p.relators) == 2
    p = parse_presentation("<a | a^5>")
    assert p.relators == (((0, 5),),)
    assert word_length(p.relators[0]) == 5


@pytest.mark.parametrize(
    "text",
    ["<a,b | a b", "<a | a^2", "a | a", "<a | b>", "<a,a | a>", "<a | a^>", "<a | (a b>", "<A | A>"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError) as exc:
        parse_presentation(text)
    assert 0 <= exc.value.position <= len(text)


def test_parse_free_reduction():
    p = parse_presentation("<a,b | a b b^-1 a^-1, a^2 a^-2 b>")
    assert p.relators == (((1, 1),),)


def test_word_parsing():
    assert parse_word("(a b)^-2", ("a", "b")) == ((1, -1), (0, -1), (1, -1), (0, -1))
    assert reduce_word([(0, 2), (0, -2)]) == ()


def test_abelianization_examples():
    assert abelianization(fibonacci_presentation(8)) == AbelianGroup(0, (3, 15))
    assert str(abelianization(parse_presentation("<a | a^5>"))) == "Z/5"
    assert abelianization(parse_presentation(M016)) == AbelianGroup(0, (37,))
    assert abelianization(parse_presentation("<a,b|>")) == AbelianGroup(2)


def test_m118_homology():
    g = abelianization(parse_presentation(M118))
    assert g == sympy_invariants(exponent_matrix(parse_presentation(M118)), 2)


def test_smith_against_sympy():
    rng = np.random.default_rng(2)
    for _ in range(200):
        m, n = rng.integers(1, 6, size=2)
        rows = rng.integers(-6, 7, size=(m, n)).tolist()
        assert abelian_group_from_relations(rows, n) == sympy_invariants(rows, n)


def test_smith_diagonal_divisibility():
    d = smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert d == [2, 6, 12]


def test_group_formatting():
    assert str(AbelianGroup(1, (3,))) == "Z + Z/3"
    assert str(AbelianGroup(0)) == "0"
    assert AbelianGroup(0, (2, 4)).order == 8
    assert AbelianGroup(1).order == 0
