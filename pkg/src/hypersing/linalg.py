"""Exact linear algebra over the rationals.

Matrices are plain lists of rows. Entries may be ints or Fractions; results
are always Fractions (kernel vectors are returned as primitive integer
vectors wrapped in Fraction so callers never see floats).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = tuple[Fraction, ...]


def as_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Copy ``rows`` into a Fraction matrix, checking that it is rectangular."""
    out = [[Fraction(x) for x in row] for row in rows]
    width = ncols if ncols is not None else (len(out[0]) if out else 0)
    for r, row in enumerate(out):
        if len(row) != width:
            raise ValueError(f"row {r} has {len(row)} entries, expected {width}")
    return out


def _integer_rows(rows: Matrix) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _bareiss_echelon(a: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (rows, pivot columns)."""
    a = [row[:] for row in a]
    m = len(a)
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m):
            lead = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c, ncols):
                # Bareiss division is exact.
                row_i[j] = (piv * row_i[j] - lead * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    mat = as_matrix(rows, ncols)
    width = ncols if ncols is not None else (len(mat[0]) if mat else 0)
    _, pivots = _bareiss_echelon(_integer_rows(mat), width)
    return len(pivots)


def primitive(vec: Sequence[Fraction]) -> Vector:
    """Scale to a primitive integer vector whose first nonzero entry is positive."""
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(Fraction(0) for _ in ints)
    first = next(x for x in ints if x != 0)
    if first < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def kernel_basis(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of the right null space {v : M v = 0}.

    One vector per free column, each normalized by :func:`primitive`. The
    basis is deterministic for a given matrix. ``ncols`` is required when
    ``rows`` is empty.
    """
    mat = as_matrix(rows, ncols)
    if ncols is None:
        if not mat:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(mat[0])
    echelon, pivots = _bareiss_echelon(_integer_rows(mat), ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * ncols
        x[fcol] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = echelon[r]
            s = sum((row[j] * x[j] for j in range(pc + 1, ncols) if row[j]), Fraction(0))
            x[pc] = -s / row[pc]
        basis.append(primitive(x))
    return basis


def mat_vec(rows: Sequence[Sequence], vec: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * Fraction(b) for a, b in zip(row, vec)), Fraction(0)) for row in rows]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b)) if b else []
    return [[sum((Fraction(x) * Fraction(y) for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]
