import itertools
import math

import pytest

from su2abelian.seifert import S2, SeifertInvariants

M016 = "<a,b | (a^3 b)^2 b^-3, (a^-1 b^3)^2 a^3>"
M118 = "<a,b | (a^5 b)^2 b^-3, (a^-2 b^3)^2 a^5>"


def s2_corpus():
    """S2 signatures with n in {3, 4}, 2 <= alpha <= 5, coprime beta in [-3, 3]."""
    pairs = [(a, b) for a in range(2, 6) for b in range(-3, 4) if math.gcd(a, b) == 1]
    out = []
    for n in (3, 4):
        for combo in itertools.combinations_with_replacement(pairs, n):
            out.append(SeifertInvariants(S2, combo))
    return out


@pytest.fixture(scope="session")
def corpus():
    return s2_corpus()
