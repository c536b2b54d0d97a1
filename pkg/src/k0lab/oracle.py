"""Brute-force reference implementations used only by the test suite.

These share no algorithms with the engine they validate: invariant
factors come from determinant-divisor gcds over all minors, determinants
from cofactor expansion, and lattice membership from a self-contained
Hermite reduction.  Everything here is exponential or cubic with no
cleverness; keep the inputs small.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd
from typing import Sequence

from .zmatrix import IntMatrix


def det_via_cofactor(m: IntMatrix) -> int:
    """Exact determinant by cofactor expansion (memoized on column subsets)."""
    if not m.is_square:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    rows = [m.row(i) for i in range(n)]
    cache: dict[tuple[int, int], int] = {}

    def expand(row: int, colmask: int) -> int:
        if row == n:
            return 1
        key = (row, colmask)
        hit = cache.get(key)
        if hit is not None:
            return hit
        total = 0
        sign = 1
        rest = colmask
        while rest:
            low = rest & -rest
            col = low.bit_length() - 1
            coeff = rows[row][col]
            if coeff:
                total += sign * coeff * expand(row + 1, colmask ^ low)
            sign = -sign
            rest ^= low
        cache[key] = total
        return total

    return expand(0, (1 << n) - 1)


def snf_via_determinant_divisors(m: IntMatrix) -> tuple[int, ...]:
    """Invariant factors as quotients of gcds of all i x i minors.

    Valid only when every invariant factor is nonzero, i.e. the matrix is
    nonsingular; raises otherwise.
    """
    if not m.is_square:
        raise ValueError("determinant divisors need a square matrix")
    n = m.rows
    if det_via_cofactor(m) == 0:
        raise ValueError("determinant divisors require nonzero invariant factors")
    rows = [m.row(i) for i in range(n)]
    alphas = [1]
    for size in range(1, n + 1):
        g = 0
        for rsel in combinations(range(n), size):
            for csel in combinations(range(n), size):
                minor = IntMatrix.from_rows([[rows[i][j] for j in csel] for i in rsel])
                g = gcd(g, det_via_cofactor(minor))
                if g == 1:
                    break
            if g == 1:
                break
        alphas.append(g)
    return tuple(alphas[i] // alphas[i - 1] for i in range(1, n + 1))


def _hermite_row_basis(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Canonical row-style Hermite basis of the lattice spanned by the rows.

    Pivots are positive and strictly move right; entries above a pivot are
    reduced into [0, pivot).  Two lattices are equal exactly when their
    canonical bases are equal.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return ()
    ncols = len(rows[0])
    basis: list[list[int]] = []
    col = 0
    while col < ncols and work:
        live = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not live:
            work = rest
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            a, b = live[0], live[1]
            q = b[col] // a[col]
            for j in range(ncols):
                b[j] -= q * a[j]
            if b[col] == 0:
                rest.append(b)
                live.remove(b)
        pivot_row = live[0]
        if pivot_row[col] < 0:
            pivot_row[:] = [-x for x in pivot_row]
        for prev in basis:
            q = prev[col] // pivot_row[col]
            if q:
                for j in range(ncols):
                    prev[j] -= q * pivot_row[j]
        basis.append(pivot_row)
        work = [r for r in rest if any(r)]
        col += 1
    return tuple(tuple(r) for r in basis)


def lattice_membership(m: IntMatrix, vec: Sequence[int], multiple: int) -> bool:
    """Whether multiple * vec lies in the lattice spanned by the columns of m.

    Decided by Hermite reduction: adjoining the vector to the generators
    leaves the canonical basis unchanged exactly when it was already in
    the lattice.
    """
    if len(vec) != m.rows:
        raise ValueError("vector length must equal rows")
    cols = [[m.at(i, j) for i in range(m.rows)] for j in range(m.cols)]
    target = [multiple * x for x in vec]
    base = _hermite_row_basis(cols)
    extended = _hermite_row_basis(cols + [target])
    return base == extended
