import itertools
import math

import pytest

from su2abelian.errors import (
    BadDiscriminant,
    DiscriminantMismatch,
    InvalidGluing,
    NotHyperbolic,
    TraceMinusTwo,
    TraceMismatch,
)
from su2abelian.forms import (
    BinaryQuadraticForm as Q,
    class_number,
    conjugate_gl2,
    conjugate_sl2,
    find_conjugator,
    form_cycles,
    form_of_matrix,
    forms_equivalent,
    inverse_unimodular,
    is_reduced,
    matmul,
    matrix_of_form,
    reduce_form_cycle,
    reduced_forms,
    sl2_trace_classes,
    transpose,
)
from su2abelian.presentation import abelianization
from su2abelian.quaternion import I, J, ONE, VI, eval_word, is_abelian_rep, qexp
from su2abelian.sol import (
    GluingMatrix,
    Monodromy,
    image_closure,
    nun_presentation,
    nun_q8_rep,
    sol_is_su2_abelian,
    theta_pairs,
    torus_bundle_presentation,
    torus_bundle_reps,
    trace_criterion,
)

A3 = ((-3, -1), (1, 0))
A4 = ((-3, 1), (2, -1))


def test_form_of_matrix_examples():
    assert form_of_matrix(A3) == Q(-1, 3, -1)
    assert form_of_matrix(A3).discriminant == 5
    assert form_of_matrix(A4) == Q(1, 2, -2)
    assert matrix_of_form(Q(1, 2, -2), -4) == A4


def test_cycles():
    c5 = reduce_form_cycle(Q(-1, 3, -1))
    assert form_cycles(5) == [c5]
    c = reduce_form_cycle(Q(1, 2, -2))
    assert Q(-1, 2, 2) not in c
    cyc = reduce_form_cycle(Q(2, 4, -2))
    assert all(f.content == 2 for f in cyc)
    assert all(is_reduced(f) for f in cyc)
    assert cyc[0] == min(cyc)


def test_equivalence_examples():
    q = Q(1, 2, -2)
    assert forms_equivalent(q, q.transform(1, 1, 0, 1))
    assert forms_equivalent(q, q)
    assert not forms_equivalent(Q(1, 2, -2), Q(-1, 2, 2))
    with pytest.raises(DiscriminantMismatch):
        forms_equivalent(Q(1, 1, -1), Q(1, 2, -2))


def test_class_numbers():
    assert [class_number(D) for D in (5, 8, 12)] == [1, 1, 2]
    assert class_number(32) == 3


def test_bad_discriminants():
    for D in (9, 0, -3, 7):
        with pytest.raises(BadDiscriminant):
            class_number(D)


def brute_force_classes(D, box=12):
    """Oracle: group forms with coefficients in a box by explicit SL2 moves."""
    forms = [
        Q(a, b, c)
        for a in range(-box, box + 1)
        for b in range(-box, box + 1)
        for c in range(-box, box + 1)
        if b * b - 4 * a * c == D
    ]
    moves = [(1, 1, 0, 1), (1, -1, 0, 1), (0, -1, 1, 0)]
    fs = set(forms)
    parent = {f: f for f in forms}

    def find(f):
        while parent[f] != f:
            f = parent[f]
        return f

    for f in forms:
        for m in moves:
            g = f.transform(*m)
            if g in fs:
                parent[find(g)] = find(f)
    return len({find(f) for f in forms})


@pytest.mark.parametrize("D", [5, 8, 12, 13, 17, 20, 21, 24])
def test_class_number_brute_force(D):
    assert class_number(D) == brute_force_classes(D)


def test_reduced_forms_are_reduced():
    for D in (5, 8, 12, 13, 60, 145):
        rs = reduced_forms(D)
        assert rs and all(is_reduced(f) for f in rs)
        assert sum(len(c) for c in form_cycles(D)) == len(rs)


def test_trace_classes():
    (r3,) = sl2_trace_classes(-3)
    assert conjugate_sl2(r3, A3)
    r4 = sl2_trace_classes(-4)
    assert len(r4) == 2
    hits = [[conjugate_sl2(r, A) for r in r4] for A in (A4, transpose(A4))]
    assert sorted(map(tuple, hits)) == [(False, True), (True, False)]
    assert len(sl2_trace_classes(3)) == 1
    with pytest.raises(NotHyperbolic):
        sl2_trace_classes(2)


def test_conjugacy_examples():
    assert not conjugate_sl2(A4, transpose(A4))
    S = ((1, 1), (0, 1))
    assert conjugate_sl2(A4, matmul(matmul(S, A4), inverse_unimodular(S)))
    assert conjugate_sl2(A3, ((0, -1), (1, -3)))
    assert find_conjugator(A3, ((0, -1), (1, -3)), bound=5) is not None
    assert conjugate_gl2(A4, transpose(A4))
    M = ((2, -1), (-1, 0))
    assert matmul(matmul(M, A4), inverse_unimodular(M)) == transpose(A4)
    assert conjugate_gl2(A3, A3)
    with pytest.raises(TraceMismatch):
        conjugate_sl2(A3, ((-5, -1), (1, 0)))


def test_sl2_decision_against_brute_force():
    mats = [
        ((a, b), (c, d))
        for a, b, c, d in itertools.product(range(-4, 5), repeat=4)
        if a * d - b * c == 1 and a + d in (-4, 3, 4)
    ]
    pairs = [(A, B) for A, B in itertools.combinations(mats, 2) if A[0][0] + A[1][1] == B[0][0] + B[1][1]]
    assert len(pairs) > 200
    for A, B in pairs:
        assert conjugate_sl2(A, B) == (find_conjugator(A, B, bound=10) is not None)


@pytest.mark.parametrize(
    "m, expected",
    [(A3, True), (((-3, 4), (2, -3)), True), (((2, 1), (1, 1)), False), (((0, 1), (-1, -6)), False)],
)
def test_sol_examples(m, expected):
    assert sol_is_su2_abelian(Monodromy.from_matrix(m)) is expected


def test_sol_not_hyperbolic():
    with pytest.raises(NotHyperbolic):
        sol_is_su2_abelian(Monodromy(1, 1, 0, 1))
    with pytest.raises(TraceMinusTwo):
        theta_pairs(Monodromy(-1, 0, 0, -1))


def test_torus_bundle_reps():
    phi = Monodromy(2, 1, 1, 1)
    first = theta_pairs(phi)[0]
    assert first.theta1 == pytest.approx(4 * math.pi / 5)
    assert first.theta2 == pytest.approx(-2 * math.pi / 5)
    reps = torus_bundle_reps(phi)
    assert any(r.nonabelian for r in reps)
    pres = torus_bundle_presentation(phi)
    rep = reps[0].rep
    x2y = eval_word(rep, ((0, 2), (1, 1)))
    assert (J * qexp(VI, first.theta1) * J.inverse()).distance(qexp(VI, -first.theta1)) < 1e-12
    assert x2y.distance(qexp(VI, -first.theta1)) < 1e-12
    for m in (A3, A4):
        assert not any(r.nonabelian for r in torus_bundle_reps(Monodromy.from_matrix(m)))
    assert abelianization(pres).rank == 1


def test_q8_union():
    rep = nun_q8_rep(GluingMatrix(1, 0, 0, 1))
    assert rep["b1"] == I and rep["b2"] == J and rep["a1"] == ONE and rep["a2"] == ONE
    assert len(image_closure(rep.images)) == 8
    rep = nun_q8_rep(GluingMatrix(0, 1, 1, 0))
    assert len(image_closure(rep.images)) == 8 and not is_abelian_rep(rep)
    with pytest.raises(InvalidGluing):
        nun_q8_rep(GluingMatrix(2, 0, 0, 2))


def test_q8_all_small_gluings():
    for m, n, p, q in itertools.product(range(-3, 4), repeat=4):
        if abs(m * q - n * p) != 1:
            continue
        g = GluingMatrix(m, n, p, q)
        rep = nun_q8_rep(g)
        assert not is_abelian_rep(rep)
        assert len(nun_presentation(g).relators) >= 4


def test_trace_criterion_small():
    for a, b, c, d in itertools.product(range(-6, 7), repeat=4):
        if a * d - b * c == 1 and abs(a + d) > 2:
            phi = Monodromy(a, b, c, d)
            assert sol_is_su2_abelian(phi) == trace_criterion(phi)
