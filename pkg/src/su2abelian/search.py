"""Numeric search for SU(2) representations of finitely presented groups.

Generator images live on a product of unit 3-spheres.  The objective is

    f(rho) = sum over relators r of |rho(r) - 1|^2,

minimized by a damped Gauss-Newton (Levenberg-Marquardt) iteration in the
tangent space: each image g moves to g exp(delta) with delta purely
imaginary, then the point is renormalized.  All restarts of a search are
advanced together as one batch of numpy arrays.

A search that finds nothing non-abelian is evidence, not proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .presentation import GroupPresentation, exponent_matrix, letters
from .quaternion import Representation, UnitQuaternion, is_abelian_rep

COMMUTATOR_TOL = 1e-6
TRACE_RESOLUTION = 1e-4
POLISH_TARGET = 1e-14
DEGENERACY_FLOOR = 1e-13
_EK = np.eye(4)[1:]  # i, j, k


# ---------------------------------------------------------------------------
# vectorized quaternion helpers


def qmul_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj_np(a: np.ndarray) -> np.ndarray:
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def expmap_np(delta: np.ndarray) -> np.ndarray:
    """exp of purely imaginary quaternions given as (..., 3) arrays."""
    n = np.linalg.norm(delta, axis=-1, keepdims=True)
    safe = np.where(n > 1e-300, n, 1.0)
    s = np.where(n > 1e-12, np.sin(n) / safe, 1.0 - n * n / 6)
    return np.concatenate([np.cos(n), s * delta], axis=-1)


def normalize_np(a: np.ndarray) -> np.ndarray:
    return a / np.linalg.norm(a, axis=-1, keepdims=True)


def random_images(seed: int, index: int, ngens: int) -> np.ndarray:
    """Haar-uniform starting images for one restart, from its own stream."""
    rng = np.random.default_rng([seed, index])
    return normalize_np(rng.standard_normal((ngens, 4)))


# ---------------------------------------------------------------------------
# compiled relators


class CompiledPresentation:
    """Relators padded to a common length so products run over the batch at once."""

    def __init__(self, pres: GroupPresentation):
        self.pres = pres
        self.ngens = pres.ngens
        lets = [letters(r) for r in pres.relators]
        self.nrel = len(lets)
        L = max((len(x) for x in lets), default=0)
        self.length = L
        self.gidx = np.zeros((self.nrel, L), dtype=int)
        self.sign = np.zeros((self.nrel, L))
        for r, word in enumerate(lets):
            for l, (g, s) in enumerate(word):
                self.gidx[r, l] = g
                self.sign[r, l] = s
        self.onehot = np.zeros((self.nrel, L, self.ngens))
        for r in range(self.nrel):
            for l in range(L):
                if self.sign[r, l]:
                    self.onehot[r, l, self.gidx[r, l]] = 1.0

    def _elements(self, X: np.ndarray) -> np.ndarray:
        E = X[:, self.gidx]  # (B, R, L, 4)
        E = E * np.concatenate(
            [np.ones(self.sign.shape + (1,)), np.repeat(self.sign[..., None], 3, -1)], -1
        )
        pad = self.sign == 0
        E[:, pad] = np.array([1.0, 0.0, 0.0, 0.0])
        return E

    def relator_values(self, X: np.ndarray) -> np.ndarray:
        """rho(r) for every relator, shape (B, R, 4)."""
        B = X.shape[0]
        out = np.zeros((B, self.nrel, 4))
        out[..., 0] = 1.0
        if self.nrel == 0:
            return out
        E = self._elements(X)
        for l in range(self.length):
            out = qmul_np(out, E[:, :, l])
        return out

    def residuals(self, X: np.ndarray) -> np.ndarray:
        """max over relators of |rho(r) - 1| per batch row."""
        if self.nrel == 0:
            return np.zeros(X.shape[0])
        V = self.relator_values(X)
        V[..., 0] -= 1.0
        return np.linalg.norm(V, axis=-1).max(axis=-1)

    def objective(self, X: np.ndarray) -> np.ndarray:
        V = self.relator_values(X)
        V[..., 0] -= 1.0
        return (V * V).sum(axis=(-1, -2))

    def residual_and_jacobian(self, X: np.ndarray):
        """Residual vector r (B, 4R) and Jacobian (B, 4R, 3G) for right tangent moves."""
        B = X.shape[0]
        R, L, G = self.nrel, self.length, self.ngens
        E = self._elements(X)
        one = np.zeros((B, R, 4))
        one[..., 0] = 1.0
        pre = [one]
        for l in range(L):
            pre.append(qmul_np(pre[-1], E[:, :, l]))
        suf = [one]
        for l in range(L - 1, -1, -1):
            suf.append(qmul_np(E[:, :, l], suf[-1]))
        suf.reverse()
        pre_a = np.stack(pre, axis=2)  # (B, R, L+1, 4)
        suf_a = np.stack(suf, axis=2)
        # positive letter: Pre[l+1] e_k Suf[l+1]; negative: -Pre[l] e_k Suf[l]
        pos = (self.sign > 0)[None, :, :, None]
        A = np.where(pos, pre_a[:, :, 1:], -pre_a[:, :, :-1])
        S = np.where(pos, suf_a[:, :, 1:], suf_a[:, :, :-1])
        D = qmul_np(qmul_np(A[:, :, :, None, :], _EK), S[:, :, :, None, :])
        J = np.einsum("brlkq,rlg->brqgk", D, self.onehot).reshape(B, 4 * R, 3 * G)
        r = pre_a[:, :, -1].copy()
        r[..., 0] -= 1.0
        return r.reshape(B, 4 * R), J


def gradient(pres: GroupPresentation, rep: Representation) -> np.ndarray:
    """Tangent gradient of f, shape (ngens, 3), for moves g -> g exp(delta)."""
    comp = CompiledPresentation(pres)
    X = rep.as_array()[None]
    if comp.nrel == 0:
        return np.zeros((pres.ngens, 3))
    r, J = comp.residual_and_jacobian(X)
    return (2 * np.einsum("bm,bmi->bi", r, J)).reshape(pres.ngens, 3)


def objective(pres: GroupPresentation, rep: Representation) -> float:
    return float(CompiledPresentation(pres).objective(rep.as_array()[None])[0])


# ---------------------------------------------------------------------------
# Levenberg-Marquardt over a batch


def _solve(H: np.ndarray, g: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(H, g[..., None])[..., 0]
    except np.linalg.LinAlgError:
        # rare exact singularity: fall back to pseudo-inverses
        return np.einsum("bij,bj->bi", np.linalg.pinv(H), g)


def minimize_batch(
    comp: CompiledPresentation,
    X: np.ndarray,
    tol: float,
    max_iter: int = 500,
    polish_iter: int = 60,
) -> tuple:
    """Run damped Gauss-Newton on every row of X until converged or stuck.

    Rows whose max residual drops below tol keep iterating (up to
    ``polish_iter`` more accepted steps) toward machine precision, so that
    classification is not done on a sqrt-accurate point near a degenerate
    minimum.  Returns (X, residuals).
    """
    X = normalize_np(np.array(X, dtype=float))
    B = X.shape[0]
    if comp.nrel == 0 or B == 0:
        return X, comp.residuals(X)
    lam = np.full(B, 1e-3)
    polished = np.zeros(B, dtype=int)
    iters = np.zeros(B, dtype=int)
    active = np.arange(B)
    n = 3 * comp.ngens
    eye = np.eye(n)
    while active.size:
        Xa = X[active]
        r, J = comp.residual_and_jacobian(Xa)
        f = (r * r).sum(axis=1)
        res = np.linalg.norm(r.reshape(len(active), -1, 4), axis=-1).max(axis=-1)
        conv = res < tol
        polished[active] += conv
        stop = (
            (res < POLISH_TARGET)
            | (polished[active] > polish_iter)
            | (lam[active] > 1e12)
            | (iters[active] >= max_iter)
        )
        if stop.any():
            keep = ~stop
            active, Xa, r, J, f = active[keep], Xa[keep], r[keep], J[keep], f[keep]
            if not active.size:
                break
        iters[active] += 1
        JtJ = np.einsum("bmi,bmj->bij", J, J)
        g = np.einsum("bmi,bm->bi", J, r)
        H = JtJ + lam[active, None, None] * eye
        delta = -_solve(H, g)
        Xt = normalize_np(qmul_np(Xa, expmap_np(delta.reshape(len(active), -1, 3))))
        ft = comp.objective(Xt)
        ok = ft < f
        X[active[ok]] = Xt[ok]
        lam[active] = np.where(ok, np.maximum(lam[active] * 0.3, 1e-10), lam[active] * 5.0)
    return X, comp.residuals(X)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class FoundRep:
    rep: Representation
    residual: float
    classification: str  # "abelian" or "nonabelian"
    traces: tuple = ()


@dataclass(frozen=True)
class SearchReport:
    found: tuple
    restarts_used: int
    seed: int
    tolerance: float
    commutator_tol: float = COMMUTATOR_TOL
    restarts_requested: Optional[int] = None

    @property
    def nonabelian(self) -> tuple:
        return tuple(f for f in self.found if f.classification == "nonabelian")

    @property
    def nonabelian_found(self) -> bool:
        return bool(self.nonabelian)

    @property
    def verdict(self) -> str:
        if self.nonabelian_found:
            return "nonabelian-found"
        return f"none-found-after-{self.restarts_used}"

    @property
    def caveat(self) -> Optional[str]:
        if self.nonabelian_found:
            return None
        return f"no non-abelian representation found after {self.restarts_used} restarts"


def trace_vector(images: np.ndarray) -> np.ndarray:
    """Traces of generators, pairwise products and pairwise commutators."""
    G = images.shape[0]
    out = [2 * images[:, 0]]
    if G > 1:
        a, b = np.triu_indices(G, 1)
        prod = qmul_np(images[a], images[b])
        comm = qmul_np(prod, qconj_np(qmul_np(images[b], images[a])))
        out += [2 * prod[:, 0], 2 * comm[:, 0]]
    return np.concatenate(out)


def nearest_abelian(comp: CompiledPresentation, images: np.ndarray):
    """An exact abelian representation close to ``images``, or None.

    Projects every image onto the circle through the dominant imaginary
    direction, then corrects the angles so the exponent-sum equations hold
    modulo 2 pi.
    """
    G = images.shape[0]
    V = images[:, 1:]
    if np.abs(V).max() < 1e-12:
        u = np.array([1.0, 0.0, 0.0])
    else:
        u = np.linalg.svd(V)[2][0]
    t = np.arctan2(V @ u, images[:, 0])
    M = np.array(exponent_matrix(comp.pres), dtype=float).reshape(comp.nrel, G)
    if comp.nrel:
        mt = M @ t
        excess = mt - 2 * np.pi * np.round(mt / (2 * np.pi))
        t = t - np.linalg.pinv(M) @ excess
    Z = np.concatenate([np.cos(t)[:, None], np.sin(t)[:, None] * u], axis=1)
    if comp.residuals(Z[None])[0] > 1e-12:
        return None
    return Z


def _is_degenerate_abelian(comp, images: np.ndarray, residual: float) -> bool:
    # Minima at the edge of the abelian locus can be so flat that the residual
    # shrinks like the cube of the distance; such points stall above machine
    # precision with commutators far above tolerance.
    if residual <= DEGENERACY_FLOOR:
        return False
    Z = nearest_abelian(comp, images)
    if Z is None:
        return False
    dist = np.linalg.norm(images - Z, axis=1).max()
    return dist <= min(1e-2, 100 * residual ** (1 / 3))


def _classify(comp, images: np.ndarray, residual: float, commutator_tol: float) -> tuple:
    rep = Representation(tuple(UnitQuaternion.from_array(q) for q in images), comp.pres.generators)
    if is_abelian_rep(rep, commutator_tol) or _is_degenerate_abelian(comp, images, residual):
        return rep, "abelian"
    return rep, "nonabelian"


def _chunks(total: int, first: int):
    start, size = 0, first
    while start < total:
        stop = min(total, start + size)
        yield range(start, stop)
        start, size = stop, size * 2


def search(
    pres: GroupPresentation,
    restarts: int = 300,
    seed: int = 0,
    tol: float = 1e-9,
    *,
    commutator_tol: float = COMMUTATOR_TOL,
    stop_on_nonabelian: bool = False,
    first_chunk: int = 16,
    max_iter: int = 500,
) -> SearchReport:
    """Random-restart search; restart k starts from the stream (seed, k).

    With ``stop_on_nonabelian`` restarts run in doubling chunks and the search
    ends after the first chunk that produces a non-abelian point.
    """
    if restarts < 1 or tol <= 0:
        raise ValueError("need restarts >= 1 and tol > 0")
    comp = CompiledPresentation(pres)
    G = pres.ngens
    found = {}
    used = 0
    chunks = _chunks(restarts, first_chunk) if stop_on_nonabelian else [range(restarts)]
    for idx in chunks:
        X0 = np.stack([random_images(seed, k, G) for k in idx]) if G else np.zeros((len(idx), 0, 4))
        X, res = minimize_batch(comp, X0, tol, max_iter=max_iter)
        used = idx.stop
        any_nonab = False
        for row, rv in zip(X, res):
            if not rv < tol:
                continue
            rep, kind = _classify(comp, row, float(rv), commutator_tol)
            tv = trace_vector(row) if G else np.zeros(0)
            key = (kind, tuple(np.round(tv / TRACE_RESOLUTION).astype(np.int64)))
            if key not in found or rv < found[key].residual:
                found[key] = FoundRep(rep, float(rv), kind, tuple(float(t) for t in tv))
            any_nonab |= kind == "nonabelian"
        if stop_on_nonabelian and any_nonab:
            break
    items = sorted(found.values(), key=lambda f: (f.residual, f.traces))
    return SearchReport(tuple(items), used, seed, tol, commutator_tol, restarts)


def refine(pres: GroupPresentation, rep: Representation, tol: float = 1e-12) -> Representation:
    """Local minimization from rep; the result may still have residual above tol."""
    comp = CompiledPresentation(pres)
    X0 = rep.as_array()[None]
    if comp.residuals(normalize_np(X0))[0] < POLISH_TARGET:
        return rep
    X, _ = minimize_batch(comp, X0, tol)
    return Representation(tuple(UnitQuaternion.from_array(q) for q in X[0]), rep.generators)


# ---------------------------------------------------------------------------
# axis search for prescribed rotation angles


@dataclass(frozen=True)
class AxisSearchResult:
    residual_floor: np.ndarray  # per angle triple
    nonabelian: np.ndarray  # per angle triple: some solution fails commutation


def axis_search(
    thetas: np.ndarray,
    restarts: int = 500,
    seed: int = 0,
    tol: float = 1e-4,
    commutator_tol: float = COMMUTATOR_TOL,
    max_iter: int = 200,
    batch_rows: int = 60000,
) -> AxisSearchResult:
    """For each (t1, t2, t3), search unit axes with exp(v1 t1) exp(v2 t2) exp(v3 t3) = 1.

    Independent of the closed-form triangle inequalities; used to test them.
    Conjugation acts transitively on the first axis and then rotates the
    second about it, so v1 = i and v2 in the ij-plane lose no solutions.
    """
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    T = len(thetas)
    floor = np.full(T, np.inf)
    nonab = np.zeros(T, dtype=bool)
    per = max(1, batch_rows // restarts)
    for start in range(0, T, per):
        th = thetas[start : start + per]
        n = len(th)
        N = n * restarts
        rng = np.random.default_rng([seed, start])
        phi = rng.uniform(0.0, 2 * np.pi, N)
        V = np.zeros((N, 3, 3))
        V[:, 0, 0] = 1.0
        V[:, 1, 0], V[:, 1, 1] = np.cos(phi), np.sin(phi)
        V[:, 2] = normalize_np(rng.standard_normal((N, 3)))
        TH = np.repeat(th, restarts, axis=0)  # (N, 3)
        V, res, Q = _axis_lm(V, TH, max_iter)
        res = res.reshape(n, restarts)
        floor[start : start + n] = res.min(axis=1)
        ok = res <= tol
        comm = np.zeros((N,))
        for a, b in ((0, 1), (0, 2), (1, 2)):
            c = qmul_np(qmul_np(Q[:, a], Q[:, b]), qconj_np(qmul_np(Q[:, b], Q[:, a])))
            c[:, 0] -= 1.0
            comm = np.maximum(comm, np.linalg.norm(c, axis=-1))
        # at the boundary of the admissible region the residual is quadratic in
        # the distance to the abelian locus; scale the commutator bar accordingly
        bar = np.maximum(commutator_tol, 100.0 * np.sqrt(res))
        nonab[start : start + n] = (ok & (comm.reshape(n, restarts) > bar)).any(axis=1)
    return AxisSearchResult(floor, nonab)


def _axis_quats(V, TH):
    c = np.cos(TH)[..., None]
    s = np.sin(TH)[..., None]
    return np.concatenate([c, s * V], axis=-1)  # (N, 3, 4)


def _axis_residual(V, TH):
    Q = _axis_quats(V, TH)
    P = qmul_np(qmul_np(Q[:, 0], Q[:, 1]), Q[:, 2])
    P[:, 0] -= 1.0
    return P, Q


def _axis_lm(V, TH, max_iter):
    """LM over the angle of v2 in the ij-plane and two tangent moves of v3."""
    N = len(V)
    lam = np.full(N, 1e-3)
    active = np.arange(N)
    polished = np.zeros(N, dtype=int)
    stalled = np.zeros(N, dtype=int)
    eye = np.eye(3)
    while active.size:
        Va, Ta = V[active], TH[active]
        r, Q = _axis_residual(Va, Ta)
        f = (r * r).sum(-1)
        res = np.sqrt(f)
        polished[active] += res < 1e-9
        stop = (res < POLISH_TARGET) | (polished[active] > 10) | (lam[active] > 1e12)
        stop |= stalled[active] > 8
        if stop.any():
            keep = ~stop
            active, Va, Ta, r, Q, f = active[keep], Va[keep], Ta[keep], r[keep], Q[keep], f[keep]
            if not active.size:
                break
        n = len(active)
        e_phi = np.stack([-Va[:, 1, 1], Va[:, 1, 0], np.zeros(n)], axis=-1)
        basis3 = _tangent_basis(Va[:, 2])  # (n, 2, 3)
        s = np.sin(Ta)
        dq = np.zeros((n, 4))
        dq[:, 1:] = s[:, 1, None] * e_phi
        cols = [qmul_np(qmul_np(Q[:, 0], dq), Q[:, 2])]
        q01 = qmul_np(Q[:, 0], Q[:, 1])
        for t in range(2):
            dq = np.zeros((n, 4))
            dq[:, 1:] = s[:, 2, None] * basis3[:, t]
            cols.append(qmul_np(q01, dq))
        J = np.stack(cols, axis=-1)  # (n, 4, 3)
        H = np.einsum("bmi,bmj->bij", J, J) + lam[active, None, None] * eye
        g = np.einsum("bmi,bm->bi", J, r)
        step = -_solve(H, g)
        Vt = Va.copy()
        Vt[:, 1] = normalize_np(Va[:, 1] + step[:, :1] * e_phi)
        Vt[:, 2] = normalize_np(Va[:, 2] + np.einsum("bt,btx->bx", step[:, 1:], basis3))
        rt, _ = _axis_residual(Vt, Ta)
        ft = (rt * rt).sum(-1)
        ok = ft < f
        # a positive local minimum: accepted steps no longer change f
        stalled[active] = np.where(ft > f * (1 - 1e-10), stalled[active] + 1, 0)
        V[active[ok]] = Vt[ok]
        lam[active] = np.where(ok, np.maximum(lam[active] * 0.3, 1e-10), lam[active] * 5.0)
        max_iter -= 1
        if max_iter <= 0:
            break
    r, Q = _axis_residual(V, TH)
    return V, np.linalg.norm(r, axis=-1), Q


def _tangent_basis(V):
    """Two orthonormal vectors perpendicular to each unit v, shape (..., 2, 3)."""
    ref = np.where(np.abs(V[..., :1]) < 0.9, np.array([1.0, 0, 0]), np.array([0, 1.0, 0]))
    e1 = normalize_np(np.cross(V, ref))
    e2 = np.cross(V, e1)
    return np.stack([e1, e2], axis=-2)
