"""Exact dense integer matrix arithmetic.

Everything here works with arbitrary-precision Python ints: Smith normal
form with unimodular transforms, fraction-free (Bareiss) determinants,
rank, matrix powers, and cokernels presented as finitely generated
abelian groups in invariant-factor form.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from operator import mul as _int_mul
from typing import Iterable, Sequence


class MatrixFormatError(ValueError):
    """Raised for a malformed matrix file; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, immutable."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must be rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        r = len(rows)
        if r == 0:
            raise ValueError("matrix needs at least one row")
        c = len(rows[0])
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
        return cls(r, c, tuple(int(x) for row in rows for x in row))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("incompatible shapes for multiplication")
        cols = [other.entries[j :: other.cols] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            arow = self.entries[i * self.cols : (i + 1) * self.cols]
            for bcol in cols:
                out.append(sum(map(_int_mul, arow, bcol)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def apply(self, vec: Sequence[int]) -> list[int]:
        """Matrix-vector product (vec as a column)."""
        if len(vec) != self.cols:
            raise ValueError("vector length must equal cols")
        return [sum(self.at(i, j) * vec[j] for j in range(self.cols)) for i in range(self.rows)]

    def _check_same_shape(self, other: "IntMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group in invariant-factor normal form.

    ``torsion`` lists the invariant factors >= 2 in divisibility order
    (each divides the next); ``free_rank`` counts the infinite cyclic
    summands.
    """

    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for t in self.torsion:
            if t < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def from_invariants(cls, factors: Iterable[int], free_rank: int = 0) -> "FinAbGroup":
        """Build from a list of cyclic orders: 0 means an infinite factor, 1 is dropped."""
        torsion = []
        rank = free_rank
        for f in factors:
            f = abs(int(f))
            if f == 0:
                rank += 1
            elif f > 1:
                torsion.append(f)
        torsion.sort()
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise ValueError(f"{sorted(torsion)} is not a divisibility chain")
        return cls(tuple(torsion), rank)

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_cyclic(self) -> bool:
        """Cyclic as an abstract group: at most one invariant factor, no free part."""
        return self.free_rank == 0 and len(self.torsion) <= 1

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def order(self) -> int | None:
        """Group order, or None if infinite."""
        if self.free_rank > 0:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def display(self) -> str:
        """Human string: torsion factors "Z_k" joined by " + ", free part "Z"/"Z^r"."""
        parts = [f"Z_{t}" for t in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.display()


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form ``u * m * v = d`` with unimodular u, v."""

    d: IntMatrix
    u: IntMatrix
    v: IntMatrix
    diag: tuple[int, ...]


def _min_abs_pivot(a: list[list[int]], t: int, rows: int, cols: int):
    """Position of a nonzero entry of minimal |value| in the submatrix a[t:, t:]."""
    best = None
    best_abs = None
    for i in range(t, rows):
        ai = a[i]
        for j in range(t, cols):
            x = ai[j]
            if x != 0:
                ax = -x if x < 0 else x
                if best_abs is None or ax < best_abs:
                    best, best_abs = (i, j), ax
                    if ax == 1:
                        return best
    return best


def _snf_inplace(a: list[list[int]], u: list[list[int]] | None, v: list[list[int]] | None):
    """Reduce a to Smith form in place, accumulating row ops in u and column ops in v.

    Pivots are chosen with minimal absolute value to limit coefficient
    growth.  On return the diagonal of a is non-negative, forms a
    divisibility chain, and all zeros trail.
    """
    rows = len(a)
    cols = len(a[0])
    t = 0
    limit = min(rows, cols)
    while t < limit:
        pos = _min_abs_pivot(a, t, rows, cols)
        if pos is None:
            break
        pi, pj = pos
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            if u is not None:
                u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            if v is not None:
                for row in v:
                    row[t], row[pj] = row[pj], row[t]
        while True:
            pivot = a[t][t]
            dirty = False
            at = a[t]
            for i in range(t + 1, rows):
                ai = a[i]
                x = ai[t]
                if x != 0:
                    q = x // pivot
                    if q:
                        ai[t:] = [p - q * r for p, r in zip(ai[t:], at[t:])]
                        if u is not None:
                            ui, ut = u[i], u[t]
                            ui[:] = [p - q * r for p, r in zip(ui, ut)]
                    if ai[t] != 0:
                        dirty = True
            for j in range(t + 1, cols):
                x = at[j]
                if x != 0:
                    q = x // pivot
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                        if v is not None:
                            for row in v:
                                row[j] -= q * row[t]
                    if at[j] != 0:
                        dirty = True
            if not dirty:
                # Row and column are clear; enforce that the pivot divides
                # every remaining entry so the diagonal chains.
                offender = None
                for i in range(t + 1, rows):
                    ai = a[i]
                    for j in range(t + 1, cols):
                        if ai[j] % pivot != 0:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                ao, at = a[offender], a[t]
                for j in range(t, cols):
                    at[j] += ao[j]
                if u is not None:
                    ut, uo = u[t], u[offender]
                    for j in range(rows):
                        ut[j] += uo[j]
                continue
            # Remainders smaller than |pivot| were created; re-pivot on them.
            pos = _min_abs_pivot(a, t, rows, cols)
            pi, pj = pos
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                if u is not None:
                    u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                if v is not None:
                    for row in v:
                        row[t], row[pj] = row[pj], row[t]
        if a[t][t] < 0:
            for j in range(t, cols):
                a[t][j] = -a[t][j]
            if u is not None:
                for j in range(rows):
                    u[t][j] = -u[t][j]
        t += 1


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form with transforms: u * m * v = d exactly.

    The diagonal is non-negative, each entry divides the next nonzero one,
    and zeros trail.  u and v are unimodular (det +-1).
    """
    a = m.to_lists()
    u = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
    v = [[1 if i == j else 0 for j in range(m.cols)] for i in range(m.cols)]
    _snf_inplace(a, u, v)
    n = min(m.rows, m.cols)
    diag = tuple(a[i][i] for i in range(n))
    return SnfResult(
        d=IntMatrix.from_rows(a),
        u=IntMatrix.from_rows(u),
        v=IntMatrix.from_rows(v),
        diag=diag,
    )


def snf_diagonal(m: IntMatrix) -> tuple[int, ...]:
    """Invariant factors only, skipping transform bookkeeping."""
    a = m.to_lists()
    _snf_inplace(a, None, None)
    return tuple(a[i][i] for i in range(min(m.rows, m.cols)))


def _snf_with_left_transform(m: IntMatrix) -> tuple[tuple[int, ...], list[list[int]]]:
    a = m.to_lists()
    u = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
    _snf_inplace(a, u, None)
    return tuple(a[i][i] for i in range(min(m.rows, m.cols))), u


def cokernel(m: IntMatrix) -> FinAbGroup:
    """Cokernel of the column lattice of m inside Z^rows.

    Torsion comes from the invariant factors > 1; zero invariant factors
    and surplus rows contribute free rank.
    """
    diag = snf_diagonal(m)
    zero_count = sum(1 for s in diag if s == 0)
    surplus = m.rows - min(m.rows, m.cols)
    return FinAbGroup.from_invariants(
        (s for s in diag if s > 1), free_rank=zero_count + surplus
    )


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        ak = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix) -> int:
    """Rank over the rationals: the number of nonzero invariant factors."""
    return sum(1 for s in snf_diagonal(m) if s != 0)


def mat_pow(m: IntMatrix, k: int) -> IntMatrix:
    """m**k by binary exponentiation, exact."""
    if not m.is_square:
        raise ValueError("matrix power requires a square matrix")
    if k < 0:
        raise ValueError("exponent must be non-negative")
    result = IntMatrix.identity(m.rows)
    base = m
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def element_order_in_cokernel(m: IntMatrix, vec: Sequence[int]) -> int | None:
    """Least d >= 1 with d*vec in the column lattice of m, or None if no such d.

    With u*m*v in Smith form, d*vec lies in the lattice exactly when each
    coordinate of u*(d*vec) is divisible by the matching invariant factor,
    so d is the lcm of s_i / gcd(s_i, (u*vec)_i); a zero invariant factor
    against a nonzero coordinate makes the class of vec of infinite order.
    """
    if len(vec) != m.rows:
        raise ValueError("vector length must equal rows")
    diag, u = _snf_with_left_transform(m)
    w = [sum(u[i][j] * vec[j] for j in range(m.rows)) for i in range(m.rows)]
    d = 1
    for i in range(m.rows):
        s = diag[i] if i < len(diag) else 0
        if s == 0:
            if w[i] != 0:
                return None
        elif w[i] % s != 0:
            step = s // gcd(s, w[i] % s)
            d = d * step // gcd(d, step)
    return d


def read_matrix(text: str) -> IntMatrix:
    """Parse the matrix text format: "rows cols" then that many rows of entries."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise MatrixFormatError("missing header 'rows cols'", 1)
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixFormatError("header must be 'rows cols'", 1)
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixFormatError("header must hold two integers", 1) from None
    if rows <= 0 or cols <= 0:
        raise MatrixFormatError("dimensions must be positive", 1)
    out: list[list[int]] = []
    lineno = 1
    for raw in lines[1:]:
        lineno += 1
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != cols:
            raise MatrixFormatError(f"expected {cols} entries, found {len(parts)}", lineno)
        try:
            out.append([int(p) for p in parts])
        except ValueError:
            raise MatrixFormatError("entries must be integers", lineno) from None
        if len(out) == rows:
            break
    if len(out) != rows:
        raise MatrixFormatError(f"expected {rows} rows, found {len(out)}", lineno + 1)
    return IntMatrix.from_rows(out)


def write_matrix(m: IntMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    for i in range(m.rows):
        lines.append(" ".join(str(x) for x in m.row(i)))
    return "\n".join(lines) + "\n"
