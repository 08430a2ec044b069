import numpy as np
import pytest

from su2abelian.polygon import PolygonSignature, delta_witness, polygon_presentation
from su2abelian.presentation import fibonacci_presentation, parse_presentation
from su2abelian.quaternion import Representation, UnitQuaternion, is_abelian_rep, relator_residual
from su2abelian.search import (
    CompiledPresentation,
    expmap_np,
    gradient,
    nearest_abelian,
    objective,
    qmul_np,
    random_images,
    refine,
    search,
)

from conftest import M016, M118

PRESENTATIONS = [
    M016,
    M118,
    "<c1,c2,c3 | c1^3, c2^3, c3^4, c1 c2 c3>",
    "<a,b | a b a^-1 b^-1>",
    "<a | a^5>",
]


def rep_from(X, pres):
    return Representation(tuple(UnitQuaternion.from_array(q) for q in X), pres.generators)


@pytest.mark.parametrize("text", PRESENTATIONS)
def test_gradient_finite_differences(text):
    pres = parse_presentation(text)
    h = 1e-6
    for k in range(100):
        X = random_images(99, k, pres.ngens)
        g = gradient(pres, rep_from(X, pres))
        fd = np.zeros_like(g)
        for a in range(pres.ngens):
            for c in range(3):
                d = np.zeros(3)
                d[c] = h
                Xp, Xm = X.copy(), X.copy()
                Xp[a] = qmul_np(X[a], expmap_np(d))
                Xm[a] = qmul_np(X[a], expmap_np(-d))
                fd[a, c] = (objective(pres, rep_from(Xp, pres)) - objective(pres, rep_from(Xm, pres))) / (2 * h)
        scale = max(np.abs(fd).max(), 1e-3)
        assert np.abs(g - fd).max() / scale < 1e-5


def test_compiled_matches_scalar_residual():
    pres = parse_presentation(M118)
    comp = CompiledPresentation(pres)
    for k in range(20):
        X = random_images(1, k, 2)
        assert comp.residuals(X[None])[0] == pytest.approx(relator_residual(pres, rep_from(X, pres)), abs=1e-12)


def test_free_group():
    r = search(parse_presentation("<a,b |>"), restarts=5)
    assert r.nonabelian_found and r.verdict == "nonabelian-found"


def test_triangle_334():
    r = search(parse_presentation("<c1,c2,c3 | c1^3, c2^3, c3^4, c1 c2 c3>"), restarts=50)
    assert r.nonabelian_found


def test_soundness_and_classification():
    pres = parse_presentation("<c1,c2,c3 | c1^3, c2^3, c3^4, c1 c2 c3>")
    r = search(pres, restarts=40, seed=3)
    assert r.found
    for f in r.found:
        assert relator_residual(pres, f.rep) <= r.tolerance
        if f.classification == "nonabelian":
            assert not is_abelian_rep(f.rep, 1e-6)


def test_determinism():
    pres = parse_presentation(M016)
    a = search(pres, restarts=30, seed=5)
    b = search(pres, restarts=30, seed=5)
    assert a == b
    c = search(pres, restarts=30, seed=6)
    assert c.seed == 6


def test_negative_report_caveat():
    r = search(parse_presentation("<a | a^5>"), restarts=10)
    assert r.verdict == "none-found-after-10"
    assert "no non-abelian" in r.caveat


def test_fibonacci_small_run():
    r = search(fibonacci_presentation(8), restarts=50, seed=2)
    assert not r.nonabelian_found


def test_refine_perturbed_2333():
    sig = PolygonSignature((2, 3, 3, 3))
    pres = polygon_presentation(sig.alphas)
    exact = delta_witness(sig)
    rng = np.random.default_rng(0)
    X = exact.as_array() + 1e-3 * rng.standard_normal((4, 4))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    out = refine(pres, rep_from(X, pres))
    assert relator_residual(pres, out) < 1e-12


def test_refine_exact_unchanged():
    sig = PolygonSignature((3, 3, 4))
    pres = polygon_presentation(sig.alphas)
    exact = delta_witness(sig)
    out = refine(pres, exact)
    assert np.abs(out.as_array() - exact.as_array()).max() < 1e-14


def test_refine_never_worsens():
    pres = parse_presentation(M016)
    for k in range(10):
        start = rep_from(random_images(4, k, 2), pres)
        out = refine(pres, start)
        assert objective(pres, out) <= objective(pres, start)


def test_nearest_abelian_exact():
    pres = parse_presentation("<a,b | a^3 b^-2>")
    comp = CompiledPresentation(pres)
    t = np.array([2 * np.pi / 3 * 0.1, np.pi * 0.1])
    X = np.stack([np.array([np.cos(x), np.sin(x), 0, 0]) for x in t])
    Z = nearest_abelian(comp, X + 1e-9)
    assert Z is not None and comp.residuals(Z[None])[0] <= 1e-12
