"""Exact linear algebra over the integers and rationals.

Everything downstream that claims a dimension or a determinant routes
through here.  Three tools: fraction-free Bareiss determinants for dense
integer matrices, a sparse integer elimination for ranks of the large
stacked condition systems, and a small rational row-echelon pass when an
explicit nullspace basis is wanted.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def bareiss_det(matrix) -> int:
    """Exact determinant of a square integer matrix, fraction-free.

    Classic two-step Bareiss elimination: every intermediate division is
    exact, so all arithmetic stays in the integers.
    """
    m = [list(map(int, row)) for row in matrix]
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("matrix must be square")
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(size - 1):
        if m[i][i] == 0:
            for r in range(i + 1, size):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, size):
            for c in range(i + 1, size):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[size - 1][size - 1]


def leading_principal_minors(matrix) -> list[int]:
    """Determinants of the upper-left t x t blocks, t = 1..size."""
    size = len(matrix)
    return [
        bareiss_det([row[:t] for row in matrix[:t]]) for t in range(1, size + 1)
    ]


def _reduce_row(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def sparse_int_rank(rows) -> int:
    """Rank of a sparse integer matrix given as dicts {column: value}.

    Incremental elimination keyed by pivot column with integer
    cross-multiplication; rows are gcd-reduced after each combination to
    keep entries small.  Exact.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = {c: v for c, v in raw.items() if v}
        while row:
            c = min(row)
            if c not in pivots:
                pivots[c] = _reduce_row(row)
                break
            p = pivots[c]
            pc, rc = p[c], row[c]
            merged = {}
            for col, v in row.items():
                merged[col] = v * pc
            for col, v in p.items():
                merged[col] = merged.get(col, 0) - v * rc
            row = _reduce_row({col: v for col, v in merged.items() if v})
    return len(pivots)


def int_rank(matrix) -> int:
    """Rank of a dense integer matrix."""
    return sparse_int_rank(
        {c: v for c, v in enumerate(row) if v} for row in matrix
    )


def fraction_rows_to_int(rows):
    """Clear denominators row by row: dicts of Fractions -> dicts of ints."""
    out = []
    for row in rows:
        denom = 1
        for v in row.values():
            denom = lcm(denom, Fraction(v).denominator)
        out.append({c: int(Fraction(v) * denom) for c, v in row.items() if v})
    return out


def nullspace(rows, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of the right nullspace of a rational matrix.

    Rows are dicts {column: Fraction}.  Gauss-Jordan over Fraction; the
    returned basis vectors have a 1 in their free column and are produced
    in increasing free-column order, so the result is deterministic.
    """
    echelon: list[dict[int, Fraction]] = []
    pivot_cols: list[int] = []
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v}
        for pc, erow in zip(pivot_cols, echelon):
            if pc in row:
                factor = row[pc]
                for col, v in erow.items():
                    row[col] = row.get(col, Fraction(0)) - factor * v
                row = {c: v for c, v in row.items() if v}
        if not row:
            continue
        c = min(row)
        inv = 1 / row[c]
        row = {col: v * inv for col, v in row.items()}
        for pc, erow in zip(pivot_cols, echelon):
            if c in erow:
                factor = erow[c]
                for col, v in row.items():
                    erow[col] = erow.get(col, Fraction(0)) - factor * v
        echelon = [{c2: v for c2, v in e.items() if v} for e in echelon]
        pivot_cols.append(c)
        echelon.append(row)
    order = sorted(range(len(pivot_cols)), key=lambda i: pivot_cols[i])
    pivot_cols = [pivot_cols[i] for i in order]
    echelon = [echelon[i] for i in order]
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for pc, erow in zip(pivot_cols, echelon):
            if free in erow:
                vec[pc] = -erow[free]
        basis.append(tuple(vec))
    return basis
