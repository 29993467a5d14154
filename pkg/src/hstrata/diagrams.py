"""Black/white grid diagrams, the Cauchon condition, and white-square labels.

Grid orientation is fixed for the whole package: position (1, 1) is the
top-left square, row indices grow downward and column indices grow rightward.
"Above", "below", "left" and "right" always refer to this orientation.

A diagram is a Cauchon diagram when every black square has either all squares
strictly above it (same column) black, or all squares strictly to its left
(same row) black.  A black square in row 1 satisfies the first condition
vacuously, and one in column 1 the second.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

WHITE_CHAR = "."
BLACK_CHAR = "#"


class DiagramParseError(ValueError):
    """Raised for ragged, empty, or otherwise malformed diagram text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(location + message)
        self.line = line
        self.column = column


class Diagram:
    """An immutable m x n grid of black and white squares."""

    __slots__ = ("_m", "_n", "_rows")

    def __init__(self, rows: Iterable[Iterable[bool]]):
        cells = tuple(tuple(bool(x) for x in row) for row in rows)
        if not cells or not cells[0]:
            raise ValueError("diagram needs at least one row and one column")
        n = len(cells[0])
        if any(len(row) != n for row in cells):
            raise ValueError("diagram rows must all have the same length")
        self._m = len(cells)
        self._n = n
        self._rows = cells

    @property
    def m(self) -> int:
        """Number of rows."""
        return self._m

    @property
    def n(self) -> int:
        """Number of columns."""
        return self._n

    @property
    def rows(self) -> tuple[tuple[bool, ...], ...]:
        """Cell colors as a tuple of rows; True means black."""
        return self._rows

    def is_black(self, r: int, c: int) -> bool:
        """Whether square (r, c) is black (1-based indices)."""
        if not (1 <= r <= self._m and 1 <= c <= self._n):
            raise ValueError(f"position ({r}, {c}) outside {self._m}x{self._n} grid")
        return self._rows[r - 1][c - 1]

    def is_white(self, r: int, c: int) -> bool:
        return not self.is_black(r, c)

    @classmethod
    def all_black(cls, m: int, n: int) -> "Diagram":
        return cls([[True] * n for _ in range(m)])

    @classmethod
    def all_white(cls, m: int, n: int) -> "Diagram":
        return cls([[False] * n for _ in range(m)])

    @classmethod
    def parse(cls, text: str) -> "Diagram":
        """Parse the '.'/'#' text format (rows separated by newlines).

        A single trailing newline is tolerated.  Raises DiagramParseError with
        1-based line/column positions on bad input.
        """
        if text.endswith("\n"):
            text = text[:-1]
        if not text:
            raise DiagramParseError("empty input")
        lines = text.split("\n")
        width = len(lines[0])
        rows = []
        for i, line in enumerate(lines, start=1):
            if len(line) != width:
                raise DiagramParseError(
                    f"ragged rows: row has length {len(line)}, expected {width}", line=i
                )
            row = []
            for j, ch in enumerate(line, start=1):
                if ch == BLACK_CHAR:
                    row.append(True)
                elif ch == WHITE_CHAR:
                    row.append(False)
                else:
                    raise DiagramParseError(
                        f"illegal character {ch!r} (expected {WHITE_CHAR!r} or {BLACK_CHAR!r})",
                        line=i,
                        column=j,
                    )
            if not row:
                raise DiagramParseError("empty row", line=i)
            rows.append(row)
        return cls(rows)

    def serialize(self) -> str:
        """Render as '.'/'#' rows joined by newlines (no trailing newline)."""
        return "\n".join(
            "".join(BLACK_CHAR if black else WHITE_CHAR for black in row) for row in self._rows
        )

    def to_json_dict(self) -> dict:
        return {
            "m": self._m,
            "n": self._n,
            "rows": ["".join(BLACK_CHAR if b else WHITE_CHAR for b in row) for row in self._rows],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Diagram":
        d = cls.parse("\n".join(data["rows"]))
        if d.m != data["m"] or d.n != data["n"]:
            raise DiagramParseError(
                f"declared size {data['m']}x{data['n']} does not match rows {d.m}x{d.n}"
            )
        return d

    def transpose(self) -> "Diagram":
        """The n x m diagram with rows and columns exchanged."""
        return Diagram(zip(*self._rows))

    def is_cauchon(self) -> bool:
        """Check the Cauchon condition for every black square."""
        col_black_above = [True] * self._n
        for row in self._rows:
            row_black_left = True
            for c, black in enumerate(row):
                if black:
                    if not (col_black_above[c] or row_black_left):
                        return False
                    col_black_above[c] &= True
                else:
                    col_black_above[c] = False
                row_black_left &= black
        return True

    def white_squares(self) -> tuple[tuple[int, int], ...]:
        """Positions of white squares in row-major order (1-based)."""
        return tuple(
            (r, c)
            for r, row in enumerate(self._rows, start=1)
            for c, black in enumerate(row, start=1)
            if not black
        )

    def white_labeling(self) -> "WhiteLabeling":
        """The canonical row-major labeling of this diagram's white squares."""
        return WhiteLabeling(self.white_squares())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Diagram) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Diagram.parse({self.serialize()!r})"


class WhiteLabeling:
    """Bijection between labels 1..N and white-square positions.

    Labels increase left to right within each row, and all labels in a row are
    smaller than all labels in any lower row (row-major order).
    """

    __slots__ = ("_positions", "_by_position")

    def __init__(self, positions: Iterable[tuple[int, int]]):
        self._positions = tuple((int(r), int(c)) for r, c in positions)
        if list(self._positions) != sorted(self._positions):
            raise ValueError("white-square labels must be in row-major order")
        self._by_position = {pos: i + 1 for i, pos in enumerate(self._positions)}
        if len(self._by_position) != len(self._positions):
            raise ValueError("duplicate white-square position")

    @property
    def count(self) -> int:
        """Number of labelled squares, N."""
        return len(self._positions)

    @property
    def positions(self) -> tuple[tuple[int, int], ...]:
        """positions[i - 1] is the (row, column) of label i."""
        return self._positions

    def position_of(self, label: int) -> tuple[int, int]:
        if not 1 <= label <= len(self._positions):
            raise ValueError(f"invalid white-square label {label} (have 1..{len(self._positions)})")
        return self._positions[label - 1]

    def label_at(self, r: int, c: int) -> int | None:
        """Label of the white square at (r, c), or None if that square is not labelled."""
        return self._by_position.get((r, c))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._positions)

    def __len__(self) -> int:
        return len(self._positions)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WhiteLabeling) and self._positions == other._positions

    def __repr__(self) -> str:
        return f"WhiteLabeling({self._positions!r})"


class RegionSets(NamedTuple):
    """Labels of white squares strictly above/right/below/left of a square."""

    above: frozenset[int]
    right: frozenset[int]
    below: frozenset[int]
    left: frozenset[int]


def region_sets(d: Diagram, lab: WhiteLabeling, label: int) -> RegionSets:
    """White-square labels in the four axis-aligned regions around a label.

    Squares in a different row and different column belong to no region.
    """
    r0, c0 = lab.position_of(label)
    above, right, below, left = set(), set(), set(), set()
    for j, (r, c) in enumerate(lab.positions, start=1):
        if j == label:
            continue
        if c == c0:
            (above if r < r0 else below).add(j)
        elif r == r0:
            (left if c < c0 else right).add(j)
    return RegionSets(frozenset(above), frozenset(right), frozenset(below), frozenset(left))


def parse_diagram(text: str) -> Diagram:
    """Parse '.'/'#' text into a Diagram (see Diagram.parse)."""
    return Diagram.parse(text)


def serialize_diagram(d: Diagram) -> str:
    """Inverse of parse_diagram."""
    return d.serialize()
