"""Shared oracles and strategies for the test suite.

The helpers here are deliberately independent re-implementations (plain
definitions, brute force) used to validate the package's faster or cleverer
code paths.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from hypothesis import strategies as st

from hstrata import Diagram


def all_diagrams(m: int, n: int):
    """Every one of the 2^(m*n) diagrams, black cells free."""
    for bits in product((False, True), repeat=m * n):
        yield Diagram([bits[i * n : (i + 1) * n] for i in range(m)])


def cauchon_by_definition(d: Diagram) -> bool:
    """Direct transcription of the defining condition, no incremental state."""
    for r in range(1, d.m + 1):
        for c in range(1, d.n + 1):
            if d.is_black(r, c):
                col_above = all(d.is_black(k, c) for k in range(1, r))
                row_left = all(d.is_black(r, k) for k in range(1, c))
                if not (col_above or row_left):
                    return False
    return True


def count_set_partitions(n: int, k: int) -> int:
    """Brute-force count of partitions of [n] into k nonempty blocks."""
    if n == 0:
        return 1 if k == 0 else 0

    def partitions(elements):
        if not elements:
            yield []
            return
        first, rest = elements[0], elements[1:]
        for size in range(len(rest) + 1):
            for others in combinations(rest, size):
                block = (first,) + others
                remaining = [e for e in rest if e not in others]
                for tail in partitions(remaining):
                    yield [block] + tail

    return sum(1 for p in partitions(list(range(n))) if len(p) == k)


def det_fraction(rows: list[list[Fraction]]) -> Fraction:
    """Cofactor-expansion determinant; fine for the tiny oracle matrices."""
    size = len(rows)
    if size == 0:
        return Fraction(1)
    if size == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(size):
        if rows[0][j] == 0:
            continue
        minor = [[row[k] for k in range(size) if k != j] for row in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * Fraction(rows[0][j]) * det_fraction(minor)
    return total


def rank_by_minors(entries) -> int:
    """Rank as the largest size of a nonsingular square submatrix."""
    rows = [list(row) for row in entries]
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    for size in range(min(nrows, ncols), 0, -1):
        for ris in combinations(range(nrows), size):
            for cis in combinations(range(ncols), size):
                sub = [[rows[i][j] for j in cis] for i in ris]
                if det_fraction(sub) != 0:
                    return size
    return 0


@st.composite
def diagrams(draw, max_m: int = 5, max_n: int = 5):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    bits = draw(st.lists(st.booleans(), min_size=m * n, max_size=m * n))
    return Diagram([bits[i * n : (i + 1) * n] for i in range(m)])


# One line per acceptance criterion, echoed after the run so the verdicts
# survive pytest's output capture.
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.line(line)
