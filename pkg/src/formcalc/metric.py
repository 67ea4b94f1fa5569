"""Constant metrics with signature: norms, causal classes, duals, angles.

Only flat (constant-coefficient) metrics are supported.  The Lorentzian
convention is mostly-plus: one minus sign, on the time direction.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import _as_fraction


def _fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination (exact)."""
    m = [row[:] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f == 0:
                continue
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return det


def _inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [row[n:] for row in m]


class CausalClass(enum.Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"


class TimeOrientation(enum.Enum):
    FUTURE = "future"
    PAST = "past"
    NONE = "n/a"


@dataclass(frozen=True)
class Metric:
    """Symmetric nonsingular constant metric on n-space."""

    matrix: tuple  # tuple of row tuples of Fraction
    signature: tuple = field(init=False)

    def __post_init__(self):
        rows = tuple(tuple(_as_fraction(v) for v in row) for row in self.matrix)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("metric matrix must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("metric matrix must be symmetric")
        object.__setattr__(self, "matrix", rows)
        sig = _inertia_signs(rows)
        if any(s == 0 for s in sig):
            raise ValueError("metric matrix is singular")
        object.__setattr__(self, "signature", tuple(sig))

    # -- constructors -------------------------------------------------
    @staticmethod
    def diag(*entries) -> "Metric":
        n = len(entries)
        return Metric(tuple(
            tuple(_as_fraction(entries[i]) if i == j else Fraction(0) for j in range(n))
            for i in range(n)))

    @staticmethod
    def euclidean(n: int) -> "Metric":
        return Metric.diag(*([1] * n))

    @staticmethod
    def minkowski(n: int) -> "Metric":
        """Signature (-,+,...,+) with coordinate 0 as time."""
        return Metric.diag(-1, *([1] * (n - 1)))

    # -- basics -------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def is_riemannian(self) -> bool:
        return all(s > 0 for s in self.signature)

    @property
    def is_lorentzian(self) -> bool:
        return sorted(self.signature)[0] < 0 and sum(1 for s in self.signature if s < 0) == 1

    def det(self) -> Fraction:
        return _det([list(row) for row in self.matrix])

    def inverse_matrix(self) -> list[list[Fraction]]:
        return _inverse([list(row) for row in self.matrix])

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        u = [_as_fraction(x) for x in u]
        v = [_as_fraction(x) for x in v]
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError("vector arity mismatch")
        return sum(self.matrix[i][j] * u[i] * v[j]
                   for i in range(self.dim) for j in range(self.dim))

    def volume_scale(self) -> Fraction:
        """sqrt|det g|, exact; raises if not a rational square."""
        s = _fraction_sqrt(abs(self.det()))
        if s is None:
            raise ValueError("sqrt|det g| is irrational; use an orthonormal-scaled metric")
        return s

    def __str__(self) -> str:
        if all(self.matrix[i][j] == 0 for i in range(self.dim)
               for j in range(self.dim) if i != j):
            return "diag(" + ",".join(str(self.matrix[i][i]) for i in range(self.dim)) + ")"
        return ";".join(" ".join(str(v) for v in row) for row in self.matrix)


def _inertia_signs(rows) -> list[int]:
    """Signs of eigenvalues via symmetric Gaussian elimination (Sylvester)."""
    n = len(rows)
    m = [list(row) for row in rows]
    signs = []
    idx = list(range(n))
    for k in range(n):
        pivot = next((r for r in range(k, n) if m[r][r] != 0), None)
        if pivot is None:
            off = next(((r, c) for r in range(k, n) for c in range(r + 1, n)
                        if m[r][c] != 0), None)
            if off is None:
                signs.extend([0] * (n - k))
                break
            r, c = off
            # congruence: add row/col c onto r to create a diagonal pivot
            for j in range(n):
                m[r][j] += m[c][j]
            for i in range(n):
                m[i][r] += m[i][c]
            pivot = r
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            for row in m:
                row[k], row[pivot] = row[pivot], row[k]
        p = m[k][k]
        signs.append(1 if p > 0 else -1)
        for r in range(k + 1, n):
            f = m[r][k] / p
            if f == 0:
                continue
            for c in range(k, n):
                m[r][c] -= f * m[k][c]
            # keep symmetry for the congruence transform
        for c in range(k + 1, n):
            f = m[k][c] / p
            if f == 0:
                continue
            for r in range(k, n):
                m[r][c] -= f * m[r][k]
        _ = idx
    return signs


def norm_squared(v: Sequence, g: Metric) -> Fraction:
    return g.inner(v, v)


def classify(v: Sequence, g: Metric) -> tuple[CausalClass, TimeOrientation]:
    """Causal class of a nonzero vector; future/past from the time component.

    Requires a Lorentzian metric with the minus sign on coordinate 0 for
    the time orientation; Riemannian vectors are all spacelike.
    """
    v = [_as_fraction(x) for x in v]
    if all(x == 0 for x in v):
        raise ValueError("cannot classify the zero vector")
    q = g.inner(v, v)
    if g.is_riemannian:
        return CausalClass.SPACELIKE, TimeOrientation.NONE
    if not g.is_lorentzian:
        raise ValueError("classification needs a Riemannian or Lorentzian metric")
    time_axis = next(i for i in range(g.dim) if g.matrix[i][i] < 0)
    if q < 0:
        cls = CausalClass.TIMELIKE
    elif q == 0:
        cls = CausalClass.LIGHTLIKE
    else:
        return CausalClass.SPACELIKE, TimeOrientation.NONE
    t = v[time_axis]
    return cls, (TimeOrientation.FUTURE if t > 0 else TimeOrientation.PAST)


def gamma_factor(u: Sequence, v: Sequence, g: Metric):
    """|g(u, v)| for unit timelike pairs; the cosine of the angle when g
    is Riemannian (then inputs need not be unit)."""
    if g.is_riemannian:
        uu, vv = g.inner(u, u), g.inner(v, v)
        if uu == 0 or vv == 0:
            raise ValueError("zero-length vector")
        return float(g.inner(u, v)) / math.sqrt(float(uu) * float(vv))
    if not g.is_lorentzian:
        raise ValueError("gamma factor needs a Lorentzian metric")
    for w in (u, v):
        q = g.inner(w, w)
        if q != -1:
            cls, _ = classify(w, g)
            if cls is not CausalClass.TIMELIKE:
                raise ValueError("gamma factor needs timelike vectors")
            raise ValueError("gamma factor needs unit timelike vectors (g(V,V) = -1)")
    cu, ou = classify(u, g)
    cv, ov = classify(v, g)
    if ou is not ov:
        raise ValueError("vectors must share a time orientation")
    return abs(g.inner(u, v))


def orthogonal_complement(v: Sequence, g: Metric) -> list[list[Fraction]]:
    """Basis of the g-orthogonal complement of a nonzero vector (n-1 vectors)."""
    v = [_as_fraction(x) for x in v]
    if all(x == 0 for x in v):
        raise ValueError("zero vector has no orthogonal complement")
    n = g.dim
    # one linear condition: sum_j (g v)_j w_j = 0
    gv = [sum(g.matrix[i][j] * v[j] for j in range(n)) for i in range(n)]
    pivot = next(i for i in range(n) if gv[i] != 0)
    basis = []
    for j in range(n):
        if j == pivot:
            continue
        w = [Fraction(0)] * n
        w[j] = Fraction(1)
        w[pivot] = -gv[j] / gv[pivot]
        basis.append(w)
    return basis


def form_inner(a_terms: dict, b_terms: dict, g: Metric) -> Fraction:
    """Induced inner product of two constant p-forms given as
    {index-set: Fraction} coefficient maps."""
    ginv = g.inverse_matrix()
    total = Fraction(0)
    for idx_a, ca in a_terms.items():
        for idx_b, cb in b_terms.items():
            if len(idx_a) != len(idx_b):
                raise ValueError("degree mismatch")
            sub = [[ginv[i][j] for j in idx_b] for i in idx_a]
            total += ca * cb * (_det(sub) if sub else Fraction(1))
    return total


def form_magnitude(form, g: Metric, point=None) -> tuple[float, int]:
    """(sqrt(|<w,w>|), sign of <w,w>) for a form evaluated at a point.

    ``form`` is a PolyForm (its coefficients are evaluated at ``point``,
    default: the origin)."""
    if point is None:
        point = [0] * form.ambient_dim
    terms = {idx: p.eval(point) for idx, p in form.terms.items()}
    q = form_inner(terms, terms, g)
    sign = (q > 0) - (q < 0)
    return math.sqrt(abs(float(q))), sign


def metric_dual_vector(omega_terms: dict, g: Metric) -> list[Fraction]:
    """Sharp: constant 1-form coefficients -> vector components."""
    ginv = g.inverse_matrix()
    n = g.dim
    co = [omega_terms.get((i,), Fraction(0)) for i in range(n)]
    return [sum(ginv[i][j] * co[j] for j in range(n)) for i in range(n)]


def metric_dual_form(v: Sequence, g: Metric) -> dict:
    """Flat: vector components -> constant 1-form coefficient map."""
    v = [_as_fraction(x) for x in v]
    n = g.dim
    coeffs = {(i,): sum(g.matrix[i][j] * v[j] for j in range(n)) for i in range(n)}
    return {k: c for k, c in coeffs.items() if c != 0}


def induced_metric(jacobian: Sequence[Sequence], g: Metric) -> Metric:
    """Pullback of g along an affine map with the given n x m Jacobian
    (columns = images of the domain basis vectors)."""
    J = [[_as_fraction(v) for v in row] for row in jacobian]
    n = len(J)
    if n != g.dim:
        raise ValueError("Jacobian rows must match the metric dimension")
    m = len(J[0]) if J else 0
    rows = []
    for a in range(m):
        row = []
        for b in range(m):
            row.append(sum(g.matrix[i][j] * J[i][a] * J[j][b]
                           for i in range(n) for j in range(n)))
        rows.append(tuple(row))
    try:
        return Metric(tuple(rows))
    except ValueError as exc:
        raise ValueError(f"induced metric is degenerate: {exc}") from exc


def parse_metric(text: str) -> Metric:
    """Parse the CLI metric literal: ``diag(-1,1,1,1)`` or row syntax
    ``a b c; b d e; c e f``."""
    text = text.strip()
    if text.startswith("diag(") and text.endswith(")"):
        entries = [Fraction(t) for t in text[5:-1].split(",")]
        return Metric.diag(*entries)
    rows = [tuple(Fraction(v) for v in row.split()) for row in text.split(";") if row.strip()]
    return Metric(tuple(rows))
