"""Hole detection: Betti numbers, torsion, closed-vs-exact cochains.

All ranks come from exact integer Smith normal form of the boundary
matrices (arbitrary-precision ints, no floats); primitives come from
exact rational elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cochain import Cochain, coboundary
from .parity import Parity
from .simplicial import SimplicialComplex


def smith_normal_form(matrix: list[list[int]]) -> list[int]:
    """Invariant factors (diagonal of the SNF) of an integer matrix."""
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    factors: list[int] = []
    r = 0
    while r < min(rows, cols):
        # find a nonzero pivot with minimal absolute value
        pivot = None
        best = None
        for i in range(r, rows):
            for j in range(r, cols):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[r], m[i] = m[i], m[r]
        for row in m:
            row[r], row[j] = row[j], row[r]
        while True:
            # clear the pivot row and column by division with remainder
            reduced = False
            for i in range(r + 1, rows):
                if m[i][r]:
                    q = m[i][r] // m[r][r]
                    for c in range(r, cols):
                        m[i][c] -= q * m[r][c]
                    if m[i][r]:
                        m[r], m[i] = m[i], m[r]
                        reduced = True
            for j in range(r + 1, cols):
                if m[r][j]:
                    q = m[r][j] // m[r][r]
                    for i in range(r, rows):
                        m[i][j] -= q * m[i][r]
                    if m[r][j]:
                        for i in range(r, rows):
                            m[i][r], m[i][j] = m[i][j], m[i][r]
                        reduced = True
            if not reduced:
                break
        # enforce divisibility of later entries by the pivot
        p = abs(m[r][r])
        fix = None
        for i in range(r + 1, rows):
            for j in range(r + 1, cols):
                if m[i][j] % p:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            for c in range(r, cols):
                m[r][c] += m[fix][c]
            continue
        factors.append(p)
        r += 1
    return factors


@dataclass(frozen=True)
class CohomologyReport:
    betti: tuple
    torsion: tuple  # invariant factors > 1 of each boundary map, per degree
    orientable: bool
    euler_characteristic: int

    def table(self) -> str:
        lines = ["degree  betti  torsion"]
        for k, b in enumerate(self.betti):
            t = ",".join(str(x) for x in self.torsion[k]) or "-"
            lines.append(f"{k:>6}  {b:>5}  {t}")
        lines.append(f"orientable: {'yes' if self.orientable else 'no'}")
        lines.append(f"euler characteristic: {self.euler_characteristic}")
        return "\n".join(lines)


def betti_numbers(complex: SimplicialComplex) -> CohomologyReport:
    """Betti numbers and torsion of the complex via Smith normal form."""
    n = complex.dim
    ranks = [0] * (n + 2)  # rank of boundary_k for k = 1..n
    torsions: list[tuple] = [()] * (n + 1)
    factor_lists: dict[int, list[int]] = {}
    for k in range(1, n + 1):
        B = complex.boundary_matrix(k).toarray().tolist()
        factors = smith_normal_form([[int(v) for v in row] for row in B])
        ranks[k] = len(factors)
        factor_lists[k] = factors
    betti = []
    for k in range(n + 1):
        betti.append(complex.num_simplices(k) - ranks[k] - ranks[k + 1])
    for k in range(n):
        torsions[k] = tuple(f for f in factor_lists.get(k + 1, []) if f > 1)
    ok, _ = (complex.orientability() if complex.is_pseudo_manifold()
             else (False, None))
    chi = complex.euler_characteristic()
    assert sum((-1) ** k * b for k, b in enumerate(betti)) == chi
    return CohomologyReport(tuple(betti), tuple(torsions), ok, chi)


def is_closed(omega: Cochain, complex: SimplicialComplex) -> bool:
    if omega.degree == complex.dim:
        return True
    return coboundary(omega, complex).is_zero()


def is_exact(omega: Cochain, complex: SimplicialComplex) -> dict:
    """Solve d(eta) = omega by exact rational elimination.

    Returns {'exact': bool, 'primitive': Cochain or None}."""
    p = omega.degree
    if p == 0:
        zero = all(v == 0 for v in omega.values)
        prim = None
        return {"exact": zero, "primitive": prim}
    # coboundary matrix from degree p-1 to p is boundary_matrix(p) transposed
    B = complex.boundary_matrix(p)
    nrows = complex.num_simplices(p)
    ncols = complex.num_simplices(p - 1)
    dense = B.toarray()
    # coboundary matrix D is the transpose of the boundary matrix
    D = [[Fraction(int(dense[j][i])) for j in range(ncols)] for i in range(nrows)]
    rhs = [Fraction(v) for v in omega.values]
    sol = _solve_exact(D, rhs)
    if sol is None:
        return {"exact": False, "primitive": None}
    prim = Cochain(p - 1, tuple(sol), omega.parity, "exact")
    return {"exact": True, "primitive": prim}


def _solve_exact(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """One solution of Ax = b over Q, or None if inconsistent."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [A[i][:] + [b[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = Fraction(1) / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * p for a, p in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def winding_cochain(complex: SimplicialComplex) -> Cochain:
    """Angle-increment 1-cochain on a planar complex around the origin.

    Closed everywhere; exact only when no cycle encircles the origin."""
    import math
    vals = []
    for (a, b) in complex.simplices[1]:
        xa, ya = complex.vertices[a][0], complex.vertices[a][1]
        xb, yb = complex.vertices[b][0], complex.vertices[b][1]
        da = math.atan2(yb, xb) - math.atan2(ya, xa)
        while da > math.pi:
            da -= 2 * math.pi
        while da <= -math.pi:
            da += 2 * math.pi
        frac = Fraction(da / (2 * math.pi)).limit_denominator(10**6)
        vals.append(frac)
    return Cochain(1, tuple(vals), Parity.STRAIGHT, "exact")
