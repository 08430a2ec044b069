"""Smith normal form over the integers and finitely generated abelian groups."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if self.rank < 0 or any(d < 2 for d in t):
            raise ValueError("invalid abelian group data")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("torsion coefficients must form a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int:
        """Group order, with 0 standing for an infinite group."""
        return prod(self.torsion) if self.rank == 0 else 0

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    @property
    def is_cyclic(self) -> bool:
        return self.rank + len(self.torsion) <= 1

    def even_or_infinite(self) -> bool:
        return self.rank >= 1 or self.torsion_order % 2 == 0

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def smith_diagonal(matrix) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order.

    Works on a copy with exact Python integers.  The returned list has one
    entry per nonzero diagonal position of the Smith form (units included).
    """
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                # divisibility fix: fold a row whose entries p fails to divide
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                continue
            # a remainder is smaller than the pivot; move it into position
            best = None
            for i in range(t, m):
                if A[i][t] and (best is None or abs(A[i][t]) < abs(A[best][t])):
                    best = i
            A[t], A[best] = A[best], A[t]
            bestc = None
            for j in range(t, n):
                if A[t][j] and (bestc is None or abs(A[t][j]) < abs(A[t][bestc])):
                    bestc = j
            for row in A:
                row[t], row[bestc] = row[bestc], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def abelian_group_from_relations(rows, ngens: int) -> AbelianGroup:
    """Cokernel of the relation matrix whose rows are relations on ngens generators."""
    diag = smith_diagonal(rows) if rows and ngens else []
    return AbelianGroup(ngens - len(diag), tuple(d for d in diag if d > 1))
