"""Exact rational matrices, kernel dimensions, and the two kernel maps.

All arithmetic is exact: entries are Python ints or fractions.Fraction, rank
is computed by integer-preserving elimination, and no floating point is used
anywhere.  Vectors are plain tuples of exact numbers; entry i-1 of a vector
corresponds to label i (white-square labels for square-indexed vectors, toric
boundary labels for boundary-indexed vectors).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .diagrams import Diagram, WhiteLabeling
from .pipedreams import (
    CycleDecomposition,
    Permutation,
    all_black_permutation,
    toric_endpoint_table,
    trace_permutation,
)

Rational = Union[int, Fraction]
ExactVector = tuple[Rational, ...]

# Row operations without the final division keep everything in the integers;
# rows are renormalized by their gcd once entries pass this bound.
_GCD_REDUCE_BOUND = 1 << 62


class ExactMatrix:
    """Immutable dense matrix over exact rationals."""

    __slots__ = ("_rows", "_cols", "_entries")

    def __init__(self, entries: Iterable[Iterable[Rational]], cols: int | None = None):
        rows = tuple(tuple(e for e in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ValueError("matrix rows must all have the same length")
            if cols is not None and cols != width:
                raise ValueError(f"declared {cols} columns but rows have {width}")
            cols = width
        else:
            cols = 0 if cols is None else cols
        self._rows = len(rows)
        self._cols = cols
        self._entries = rows

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def entries(self) -> tuple[tuple[Rational, ...], ...]:
        return self._entries

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def entry(self, i: int, j: int) -> Rational:
        """0-based entry access."""
        return self._entries[i][j]

    def row(self, i: int) -> tuple[Rational, ...]:
        return self._entries[i]

    def with_entry(self, i: int, j: int, value: Rational) -> "ExactMatrix":
        """Copy of this matrix with one entry replaced."""
        rows = [list(row) for row in self._entries]
        rows[i][j] = value
        return ExactMatrix(rows, cols=self._cols)

    def matvec(self, vec: Sequence[Rational]) -> ExactVector:
        if len(vec) != self._cols:
            raise ValueError(f"vector length {len(vec)} does not match {self._cols} columns")
        return tuple(sum(a * x for a, x in zip(row, vec) if a) for row in self._entries)

    def is_skew_symmetric(self) -> bool:
        if self._rows != self._cols:
            return False
        e = self._entries
        return all(e[i][j] == -e[j][i] for i in range(self._rows) for j in range(i, self._cols))

    def to_json_dict(self) -> dict:
        return {
            "rows": self._rows,
            "cols": self._cols,
            "data": [[str(e) for e in row] for row in self._entries],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExactMatrix":
        entries = [[Fraction(s) for s in row] for row in data["data"]]
        mat = cls(entries, cols=data["cols"])
        if mat.rows != data["rows"]:
            raise ValueError("declared row count does not match data")
        return mat

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self._cols == other._cols
            and self._entries == other._entries
        )

    def __hash__(self) -> int:
        return hash((self._cols, self._entries))

    def __repr__(self) -> str:
        return f"ExactMatrix({[list(r) for r in self._entries]!r})"

    def __str__(self) -> str:
        if not self._entries:
            return "(empty 0x%d matrix)" % self._cols
        cells = [[str(e) for e in row] for row in self._entries]
        width = max(len(s) for row in cells for s in row)
        return "\n".join(" ".join(s.rjust(width) for s in row) for row in cells)


def _integer_rows(M: ExactMatrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank is unchanged)."""
    out = []
    for row in M.entries:
        scale = 1
        for e in row:
            den = e.denominator
            if den != 1:
                scale = scale * den // gcd(scale, den)
        if scale == 1:
            out.append([int(e) for e in row])
        else:
            out.append([int(e * scale) for e in row])
    return out


def _eliminate(rows: list[list[int]], cols: int) -> list[int]:
    """In-place integer row echelon; returns the pivot column list.

    Pivot is the first nonzero entry in column order.  Row updates use the
    division-free combination p*row - f*pivot_row, with gcd renormalization
    once entries grow past _GCD_REDUCE_BOUND, so everything stays exact.
    """
    pivot_cols: list[int] = []
    nrows = len(rows)
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            if not f:
                continue
            big = 0
            for j in range(c + 1, cols):
                v = p * row[j] - f * prow[j]
                row[j] = v
                big |= abs(v)
            row[c] = 0
            if big > _GCD_REDUCE_BOUND:
                g = 0
                for v in row:
                    g = gcd(g, v)
                if g > 1:
                    rows[i] = [v // g for v in row]
        pivot_cols.append(c)
        r += 1
    return pivot_cols


def rank(M: ExactMatrix) -> int:
    """Rank over the rationals by exact integer-preserving elimination."""
    rows = _integer_rows(M)
    return len(_eliminate(rows, M.cols))


def kernel_dim(M: ExactMatrix) -> int:
    """Dimension over the rationals of the null space of a square matrix."""
    if M.rows != M.cols:
        raise ValueError(f"kernel_dim requires a square matrix, got {M.rows}x{M.cols}")
    return M.cols - rank(M)


def kernel_basis(M: ExactMatrix) -> tuple[ExactVector, ...]:
    """A basis of the rational null space, one vector per free column.

    Each basis vector has a 1 in its free coordinate and 0 in the others, so
    the basis is deterministic and visibly independent.
    """
    cols = M.cols
    rows = _integer_rows(M)
    pivot_cols = _eliminate(rows, cols)
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        x: list[Rational] = [Fraction(0)] * cols
        x[free] = Fraction(1)
        for i in reversed(range(len(pivot_cols))):
            pc = pivot_cols[i]
            row = rows[i]
            s = sum(row[j] * x[j] for j in range(pc + 1, cols) if row[j] and x[j])
            x[pc] = Fraction(-s, row[pc])
        basis.append(tuple(x))
    return tuple(basis)


def white_adjacency_matrix(d: Diagram, lab: WhiteLabeling | None = None) -> ExactMatrix:
    """The N x N skew-symmetric relation matrix of the white squares.

    Entry (i, j) is +1 when white square i is strictly below or strictly to
    the right of white square j, -1 when strictly above or strictly to the
    left, and 0 otherwise (in particular when the squares share neither row
    nor column).  Skew-symmetry is verified on construction.
    """
    if lab is None:
        lab = d.white_labeling()
    pos = lab.positions
    N = len(pos)
    entries = [[0] * N for _ in range(N)]
    for i in range(N):
        ri, ci = pos[i]
        row = entries[i]
        for j in range(i + 1, N):
            rj, cj = pos[j]
            if ci == cj or ri == rj:
                # j is below or right of i (row-major order), so entry (i, j) is -1
                row[j] = -1
                entries[j][i] = 1
    mat = ExactMatrix(entries, cols=N)
    if not mat.is_skew_symmetric():
        raise AssertionError("white adjacency matrix failed the skew-symmetry check")
    return mat


def perm_matrix_sum(p: Permutation, q: Permutation) -> ExactMatrix:
    """Sum P_p + P_q of two permutation matrices, P[i][j] = [j == p(i)]."""
    if p.size != q.size:
        raise ValueError(f"size mismatch: {p.size} vs {q.size}")
    k = p.size
    entries = [[0] * k for _ in range(k)]
    for i in range(1, k + 1):
        entries[i - 1][p(i) - 1] += 1
        entries[i - 1][q(i) - 1] += 1
    return ExactMatrix(entries, cols=k)


def cycle_kernel_basis(decomp: CycleDecomposition) -> tuple[ExactVector, ...]:
    """Alternating +-1 vectors supported on the even-length cycles.

    For each even-length cycle (a_1 .. a_2k) the vector with +1 at a_i for
    odd i and -1 for even i is in the kernel of P_omega + P_sigma whenever
    the decomposition is that of the corresponding toric permutation; the
    vectors form a basis of that kernel.
    """
    basis = []
    for cycle in decomp.cycles:
        if len(cycle) % 2:
            continue
        v = [0] * decomp.size
        for idx, a in enumerate(cycle):
            v[a - 1] = 1 if idx % 2 == 0 else -1
        basis.append(tuple(v))
    return tuple(basis)


def _boundary_matrix(d: Diagram) -> ExactMatrix:
    return perm_matrix_sum(trace_permutation(d), all_black_permutation(d.m, d.n))


def _is_zero(vec: Sequence[Rational]) -> bool:
    return all(x == 0 for x in vec)


def to_square_kernel(d: Diagram, lab: WhiteLabeling, v: Sequence[Rational]) -> ExactVector:
    """Map a boundary-kernel vector to a white-square-kernel vector.

    Entry i of the result is v[left(i)] - v[top(i)], where left/top are the
    toric endpoints of white square i.  The input must lie in the kernel of
    the permutation-matrix sum (checked); the output is then guaranteed to
    lie in the kernel of the white adjacency matrix.
    """
    if len(v) != d.m + d.n:
        raise ValueError(f"vector length {len(v)} does not match m+n = {d.m + d.n}")
    if not _is_zero(_boundary_matrix(d).matvec(v)):
        raise ValueError("vector is not in the boundary kernel")
    endpoints = toric_endpoint_table(d, lab)
    return tuple(v[e.left - 1] - v[e.top - 1] for e in endpoints)


def to_boundary_kernel(d: Diagram, lab: WhiteLabeling, w: Sequence[Rational]) -> ExactVector:
    """Map a white-square-kernel vector to a boundary-kernel vector.

    For a row label a (toric labels count rows from the bottom) the result
    entry is the negated sum of w over the white squares of that row; for a
    column label m+c it is the sum over column c.  The input must lie in the
    kernel of the white adjacency matrix (checked); the output is then
    guaranteed to lie in the boundary kernel.
    """
    if len(w) != lab.count:
        raise ValueError(f"vector length {len(w)} does not match {lab.count} white squares")
    if not in_white_kernel(d, lab, w):
        raise ValueError("vector is not in the white-square kernel")
    v: list[Rational] = [0] * (d.m + d.n)
    for (r, c), x in zip(lab.positions, w):
        v[d.m - r] -= x  # physical row r carries toric label m+1-r
        v[d.m + c - 1] += x
    return tuple(v)


def in_white_kernel(d: Diagram, lab: WhiteLabeling, w: Sequence[Rational]) -> bool:
    """Whether w satisfies, at every white square, above+left == below+right.

    The sums run over the white squares strictly above, left of, below, and
    right of the given square.  The condition is equivalent to w lying in the
    null space of the white adjacency matrix, but is evaluated directly from
    the geometry rather than through the matrix.
    """
    if len(w) != lab.count:
        raise ValueError(f"vector length {len(w)} does not match {lab.count} white squares")
    pos = lab.positions
    N = len(pos)
    for i in range(N):
        ri, ci = pos[i]
        acc = 0
        for j in range(N):
            if j == i:
                continue
            rj, cj = pos[j]
            if cj == ci:
                acc += w[j] if rj < ri else -w[j]
            elif rj == ri:
                acc += w[j] if cj < ci else -w[j]
        if acc != 0:
            return False
    return True
