"""Small exact linear algebra over Q and Z (dimensions <= 3 in practice)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Vec = list[Fraction]
Mat = list[list[Fraction]]


def _frac_rows(rows) -> Mat:
    return [[Fraction(x) for x in r] for r in rows]


def rref(rows) -> tuple[Mat, list[int]]:
    m = _frac_rows(rows)
    pivots = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    row = 0
    for col in range(ncols):
        pr = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if pr is None:
            continue
        m[row], m[pr] = m[pr], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int) -> list[Vec]:
    """Basis of ``{x : rows @ x = 0}``."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def det(mat) -> Fraction:
    m = _frac_rows(mat)
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pr = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != col:
            m[col], m[pr] = m[pr], m[col]
            sign = -sign
        pv = m[col][col]
        result *= pv
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return sign * result


def solve(mat, rhs) -> Vec | None:
    """Some solution of ``mat @ x = rhs`` or None when inconsistent."""
    n = len(mat[0]) if mat else 0
    aug = [list(r) + [b] for r, b in zip(mat, rhs)]
    m, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = m[r][n]
    return x


def matvec(mat, v) -> Vec:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in mat]


def transpose(mat) -> Mat:
    return [list(c) for c in zip(*mat)]


def _integer_echelon(rows: list[list[int]]) -> list[list[int]]:
    """Row-echelon basis of the Z-span of integer rows (Euclid on columns)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis = []
    for col in range(ncols):
        if not rows:
            break
        active = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                red = [a - q * b for a, b in zip(r, piv)]
                if red[col] != 0:
                    nxt.append(red)
                elif any(red):
                    rest.append(red)
            active = nxt
        basis.append(active[0])
        rows = rest
    return basis


def lattice_basis(vectors: Sequence[Sequence]) -> list[Vec]:
    """A Z-basis of the lattice generated by rational vectors."""
    vecs = _frac_rows(vectors)
    if not vecs:
        return []
    scale = math.lcm(1, *(x.denominator for v in vecs for x in v))
    ints = [[int(x * scale) for x in v] for v in vecs]
    return [[Fraction(x, scale) for x in row] for row in _integer_echelon(ints)]


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Vec | None:
    """Coefficients of ``v`` in ``basis`` (rows), or None if outside the span."""
    if not basis:
        return [] if all(x == 0 for x in v) else None
    return solve(transpose(_frac_rows(basis)), [Fraction(x) for x in v])
