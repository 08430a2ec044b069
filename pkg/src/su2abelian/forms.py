"""Indefinite binary quadratic forms and SL(2,Z) conjugacy of hyperbolic matrices.

A form (a, b, c) is a x^2 + b x y + c y^2 with discriminant D = b^2 - 4ac.
For positive nonsquare D every form is properly equivalent to a reduced one,
and the reduced forms of a class make up a single cycle under the rho step.
Two forms are equivalent exactly when their cycles coincide.

A matrix A = [[a, b], [c, d]] of trace t corresponds to the form
(b, d - a, -c) of discriminant t^2 - 4; SL(2,Z) conjugacy of matrices
matches proper equivalence of forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import BadDiscriminant, DiscriminantMismatch, NotHyperbolic, TraceMismatch

Matrix = tuple  # ((a, b), (c, d))


@dataclass(frozen=True, order=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, p: int, q: int, r: int, s: int) -> "BinaryQuadraticForm":
        """The form (x, y) -> Q(p x + q y, r x + s y)."""
        a, b, c = self.a, self.b, self.c
        return BinaryQuadraticForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def _check_disc(D: int) -> None:
    if D <= 0 or isqrt(D) ** 2 == D:
        raise BadDiscriminant(f"discriminant {D} must be positive and not a square")
    if D % 4 not in (0, 1):
        raise BadDiscriminant(f"discriminant {D} is not 0 or 1 mod 4")


def is_reduced(Q: BinaryQuadraticForm) -> bool:
    """0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, decided exactly."""
    D = Q.discriminant
    a2, b = 2 * abs(Q.a), Q.b
    if not (0 < b and b * b < D):
        return False
    if not D < (a2 + b) ** 2:
        return False
    return a2 - b < 0 or (a2 - b) ** 2 < D


def rho(Q: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """One reduction step (a, b, c) -> (c, b', (b'^2 - D) / 4c)."""
    D = Q.discriminant
    c = Q.c
    m = 2 * abs(c)
    if c * c > D:
        bp = (-Q.b) % m
        if bp > abs(c):
            bp -= m
    else:
        s = isqrt(D)
        bp = s - (s + Q.b) % m
    return BinaryQuadraticForm(c, bp, (bp * bp - D) // (4 * c))


def reduce_form(Q: BinaryQuadraticForm, max_steps: int = 100000) -> BinaryQuadraticForm:
    _check_disc(Q.discriminant)
    for _ in range(max_steps):
        if is_reduced(Q):
            return Q
        Q = rho(Q)
    raise RuntimeError("reduction did not terminate")


def reduce_form_cycle(Q: BinaryQuadraticForm) -> list:
    """Cycle of reduced forms equivalent to Q, starting at its least element."""
    start = reduce_form(Q)
    cyc = [start]
    R = rho(start)
    while R != start:
        cyc.append(R)
        R = rho(R)
    k = cyc.index(min(cyc))
    return cyc[k:] + cyc[:k]


def forms_equivalent(Q1: BinaryQuadraticForm, Q2: BinaryQuadraticForm) -> bool:
    if Q1.discriminant != Q2.discriminant:
        raise DiscriminantMismatch(f"discriminants {Q1.discriminant} and {Q2.discriminant} differ")
    return set(reduce_form_cycle(Q1)) == set(reduce_form_cycle(Q2))


def reduced_forms(D: int) -> list:
    """All reduced forms of discriminant D, primitive or not."""
    _check_disc(D)
    s = isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (D - b * b) % 4:
            continue
        N = (D - b * b) // 4  # = -a c > 0
        for a0 in range(1, N + 1):
            if N % a0:
                continue
            for a in (a0, -a0):
                Q = BinaryQuadraticForm(a, b, -N // a)
                if is_reduced(Q):
                    out.append(Q)
    return sorted(out)


def form_cycles(D: int) -> list:
    """One cycle per equivalence class, ordered by canonical element."""
    seen = set()
    cycles = []
    for Q in reduced_forms(D):
        if Q in seen:
            continue
        cyc = reduce_form_cycle(Q)
        seen.update(cyc)
        cycles.append(cyc)
    return sorted(cycles, key=lambda c: c[0])


def class_number(D: int) -> int:
    """Number of SL(2,Z) classes of forms of discriminant D, imprimitive included.

    >>> [class_number(D) for D in (5, 8, 12)]
    [1, 1, 2]
    """
    return len(form_cycles(D))


# ---------------------------------------------------------------------------
# matrices


def as_matrix(A) -> Matrix:
    (a, b), (c, d) = A
    return ((int(a), int(b)), (int(c), int(d)))


def trace(A) -> int:
    return A[0][0] + A[1][1]


def det(A) -> int:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def matmul(A, B) -> Matrix:
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def inverse_unimodular(A) -> Matrix:
    (a, b), (c, d) = A
    e = det(A)
    if abs(e) != 1:
        raise ValueError("matrix is not unimodular")
    return ((d * e, -b * e), (-c * e, a * e))


def transpose(A) -> Matrix:
    return ((A[0][0], A[1][0]), (A[0][1], A[1][1]))


def form_of_matrix(A) -> BinaryQuadraticForm:
    (a, b), (c, d) = as_matrix(A)
    return BinaryQuadraticForm(b, d - a, -c)


def matrix_of_form(Q: BinaryQuadraticForm, tau: int) -> Matrix:
    """Inverse of :func:`form_of_matrix` at trace tau."""
    if Q.discriminant != tau * tau - 4:
        raise DiscriminantMismatch("form discriminant must equal tau^2 - 4")
    return (((tau - Q.b) // 2, Q.a), (-Q.c, (tau + Q.b) // 2))


def _check_hyperbolic(A) -> None:
    if abs(trace(A)) <= 2:
        raise NotHyperbolic(f"trace {trace(A)} has absolute value <= 2")


def sl2_trace_classes(tau: int) -> list:
    """One representative matrix per SL(2,Z) conjugacy class of trace tau."""
    if abs(tau) <= 2:
        raise NotHyperbolic(f"trace {tau} has absolute value <= 2")
    return [matrix_of_form(cyc[0], tau) for cyc in form_cycles(tau * tau - 4)]


def conjugate_sl2(A, B) -> bool:
    A, B = as_matrix(A), as_matrix(B)
    if trace(A) != trace(B):
        raise TraceMismatch(f"traces {trace(A)} and {trace(B)} differ")
    _check_hyperbolic(A)
    return forms_equivalent(form_of_matrix(A), form_of_matrix(B))


J_REFLECT = ((1, 0), (0, -1))


def conjugate_gl2(A, B) -> bool:
    A, B = as_matrix(A), as_matrix(B)
    if conjugate_sl2(A, B):
        return True
    return conjugate_sl2(matmul(matmul(J_REFLECT, A), J_REFLECT), B)


def find_conjugator(A, B, bound: int = 50, det_sign: int = 1):
    """Brute-force S with S A S^-1 = B, entries in [-bound, bound], det S = det_sign.

    Exhaustive over the box, so only practical for small bounds; meant as a
    cross-check of the form-based decision.
    """
    A, B = as_matrix(A), as_matrix(B)
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    rng = range(-bound, bound + 1)
    # S A = B S, linear in the entries of S = [[p, q], [r, s]]
    for p in rng:
        for r in rng:
            # first column: p a + q c = e p + f r and r a + s c = g p + h r
            # so q c = e p + f r - p a and s c = g p + h r - r a
            if c != 0:
                nq, ns = e * p + f * r - p * a, g * p + h * r - r * a
                if nq % c or ns % c:
                    continue
                cands = [(nq // c, ns // c)]
            else:
                cands = [(q, s) for q in rng for s in rng]
            for q, s in cands:
                S = ((p, q), (r, s))
                if det(S) == det_sign and matmul(S, A) == matmul(B, S):
                    return S
    return None
