"""First homology via Smith normal form over exact integers."""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import Presentation


@dataclass(frozen=True)
class AbelianGroup:
    """Canonical form Z^free_rank + Z/d1 + ... with d1 | d2 | ..., each di > 1."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("negative rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion must form a divisibility chain")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonnegative diagonal of the Smith normal form.

    Row/column reduction with exact integer arithmetic; entries can grow,
    so everything stays in Python ints.
    """
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < rows and t < cols:
        # find a nonzero pivot in the submatrix
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j]:
                    if pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            # clear column t
            changed = False
            for i in range(rows):
                if i != t and m[i][t]:
                    q = m[i][t] // m[t][t]
                    if q:
                        for j in range(cols):
                            m[i][j] -= q * m[t][j]
                        changed = True
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        changed = True
            if any(m[i][t] for i in range(rows) if i != t):
                continue
            # clear row t
            for j in range(cols):
                if j != t and m[t][j]:
                    q = m[t][j] // m[t][t]
                    if q:
                        for i in range(rows):
                            m[i][j] -= q * m[i][t]
                        changed = True
                    if m[t][j]:
                        for i in range(rows):
                            m[i][t], m[i][j] = m[i][j], m[i][t]
                        changed = True
            if not any(m[i][t] for i in range(rows) if i != t) and not any(
                m[t][j] for j in range(cols) if j != t
            ):
                break
            if not changed:  # pragma: no cover - reduction always progresses
                break
        diag.append(abs(m[t][t]))
        t += 1
    # enforce the divisibility chain d1 | d2 | ...
    k = len(diag)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = diag[i], diag[j]
            if a and b % a == 0:
                continue
            from math import gcd

            g = gcd(a, b)
            lcm = a * b // g if g else 0
            diag[i], diag[j] = g, lcm
    return diag


def cokernel(matrix: list[list[int]], n_cols: int) -> AbelianGroup:
    """Z^n_cols modulo the row span of matrix, in canonical form."""
    if not matrix:
        return AbelianGroup(n_cols)
    diag = [d for d in smith_diagonal(matrix) if d]
    torsion = tuple(d for d in diag if d > 1)
    return AbelianGroup(n_cols - len(diag), torsion)


def abelianize(pres: Presentation) -> AbelianGroup:
    """Canonical invariant-factor decomposition of the abelianized group."""
    return cokernel(pres.exponent_matrix(), pres.n_generators)
