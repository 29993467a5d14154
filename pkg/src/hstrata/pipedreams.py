"""Pipe tracing over diagrams and the permutations it produces.

Every square of a diagram carries pipes: a black square is a crossing (both
strands run straight through), while a white square holds two arcs, one
joining its bottom edge to its left edge and one joining its right edge to
its top edge.  A pipe entered on the bottom or right side of the grid
therefore only ever travels up or left and exits on the left or top side
after at most m + n turns.

Boundary labels come in two flavours (`BoundaryLabeling`):

* standard: the bottom side carries 1..n left to right and the right side
  carries n+1..n+m bottom to top (entry points); the left side carries 1..m
  bottom to top and the top side m+1..m+n left to right (exit points).
  Tracing every pipe gives the permutation of [m+n] associated with the
  diagram; it always satisfies -n <= p(i) - i <= m.  Numbering the rows
  bottom to top is the unique choice of axis directions for which that bound
  holds on every diagram while the all-black diagram still traces to the
  i -> m+i rotation; in particular the all-white diagram traces to the
  identity.
* toric: each row carries one label on both of its sides (bottom row 1 up to
  top row m) and column c carries m+c on both of its sides, so a pipe can be
  followed around the grid as if it were drawn on a torus.  The resulting
  permutation is the toric permutation; it equals the standard permutation
  composed with the inverse of the all-black diagram's permutation.

The dimension of the stratum attached to a Cauchon diagram is the number of
odd cycles of its toric permutation, where a cycle is odd when it has an odd
number of inversions, i.e. even length.  Fixed points are even cycles.
"""

from __future__ import annotations

import warnings
from typing import Iterable, NamedTuple

from .diagrams import Diagram, WhiteLabeling


class NonCauchonWarning(UserWarning):
    """Dimension was requested for a diagram that is not Cauchon."""


class Permutation:
    """A bijection of [k] = {1, .., k}, stored in one-line form."""

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(x) for x in images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"{imgs!r} is not a bijection of [{len(imgs)}]")
        self._images = imgs

    @property
    def size(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple[int, ...]:
        """images[i - 1] is the image of i."""
        return self._images

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self._images):
            raise ValueError(f"{i} outside domain [1, {len(self._images)}]")
        return self._images[i - 1]

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(range(1, k + 1))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._images)
        for i, img in enumerate(self._images, start=1):
            inv[img - 1] = i
        return Permutation(inv)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (p * q)(i) = p(q(i))."""
        if other.size != self.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        return Permutation(self._images[j - 1] for j in other._images)

    def one_line(self) -> str:
        """One-line image list, e.g. '[3,1,2]'."""
        return "[" + ",".join(str(x) for x in self._images) + "]"

    @classmethod
    def from_one_line(cls, text: str) -> "Permutation":
        """Parse '[3,1,2]', '3,1,2' or '3 1 2'."""
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        parts = body.replace(",", " ").split()
        if not parts:
            raise ValueError(f"cannot parse permutation from {text!r}")
        try:
            images = [int(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"cannot parse permutation from {text!r}") from exc
        return cls(images)

    def cycle_string(self) -> str:
        """Cycle notation, e.g. '(1 3 2)(4)'; fixed points are shown."""
        return str(cycle_decomposition(self))

    def to_json_dict(self) -> dict:
        return {"size": self.size, "images": list(self._images)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Permutation":
        p = cls(data["images"])
        if p.size != data["size"]:
            raise ValueError("declared size does not match image list")
        return p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __repr__(self) -> str:
        return f"Permutation({list(self._images)!r})"


class CycleDecomposition:
    """Disjoint cycles of a permutation, including length-1 fixed points.

    Each cycle is rotated to start at its minimum element and cycles are
    sorted by that minimum, so the decomposition is deterministic.
    """

    __slots__ = ("_cycles", "_size")

    def __init__(self, cycles: Iterable[Iterable[int]], size: int):
        cs = tuple(tuple(cycle) for cycle in cycles)
        seen = [x for cycle in cs for x in cycle]
        if sorted(seen) != list(range(1, size + 1)):
            raise ValueError(f"cycles do not partition [{size}]")
        self._cycles = cs
        self._size = size

    @property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        return self._cycles

    @property
    def size(self) -> int:
        return self._size

    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self._cycles)

    def __iter__(self):
        return iter(self._cycles)

    def __len__(self) -> int:
        return len(self._cycles)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CycleDecomposition)
            and self._cycles == other._cycles
            and self._size == other._size
        )

    def __str__(self) -> str:
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in self._cycles)

    def __repr__(self) -> str:
        return f"CycleDecomposition({list(self._cycles)!r}, size={self._size})"


def cycle_decomposition(p: Permutation) -> CycleDecomposition:
    """Disjoint-cycle decomposition with the deterministic ordering above."""
    seen = [False] * p.size
    cycles = []
    for start in range(1, p.size + 1):
        if seen[start - 1]:
            continue
        cycle = []
        x = start
        while not seen[x - 1]:
            seen[x - 1] = True
            cycle.append(x)
            x = p(x)
        cycles.append(tuple(cycle))
    return CycleDecomposition(cycles, p.size)


def odd_cycle_count(decomp: CycleDecomposition) -> int:
    """Number of odd cycles, i.e. cycles of even length.

    Cycle parity here means inversion parity, which for a single cycle is
    opposite to the parity of its length; fixed points contribute nothing.
    """
    return sum(1 for c in decomp.cycles if len(c) % 2 == 0)


class BoundaryLabeling:
    """Assignment of the labels 1..m+n to the four sides of an m x n grid."""

    __slots__ = ("kind", "m", "n")

    def __init__(self, kind: str, m: int, n: int):
        if kind not in ("standard", "toric"):
            raise ValueError(f"unknown labeling kind {kind!r}")
        self.kind = kind
        self.m = m
        self.n = n

    @classmethod
    def standard(cls, m: int, n: int) -> "BoundaryLabeling":
        return cls("standard", m, n)

    @classmethod
    def toric(cls, m: int, n: int) -> "BoundaryLabeling":
        return cls("toric", m, n)

    def bottom(self, c: int) -> int:
        """Entry label on the bottom side of column c."""
        return c if self.kind == "standard" else self.m + c

    def right(self, r: int) -> int:
        """Entry label on the right side of row r (rows count from the bottom)."""
        return self.n + (self.m + 1 - r) if self.kind == "standard" else self.m + 1 - r

    def left(self, r: int) -> int:
        """Exit label on the left side of row r (same for both kinds)."""
        return self.m + 1 - r

    def top(self, c: int) -> int:
        """Exit label on the top side of column c (same for both kinds)."""
        return self.m + c

    def __repr__(self) -> str:
        return f"BoundaryLabeling({self.kind!r}, m={self.m}, n={self.n})"


def all_black_permutation(m: int, n: int) -> Permutation:
    """Permutation traced by the all-black m x n diagram.

    Maps i to m+i for i <= n and to i-n for i > n; it is the maximum element
    of the restricted permutations under the reverse Bruhat order.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return Permutation([m + i for i in range(1, n + 1)] + list(range(1, m + 1)))


def is_restricted(p: Permutation, m: int, n: int) -> bool:
    """Whether -n <= p(i) - i <= m holds for all i (requires p.size == m+n)."""
    if p.size != m + n:
        raise ValueError(f"permutation size {p.size} does not match m+n = {m + n}")
    return all(-n <= img - i <= m for i, img in enumerate(p.images, start=1))


def _exit_tables(d: Diagram) -> tuple[list[list[int]], list[list[int]]]:
    """Exit labels for pipes entering each square upward or leftward.

    up[r][c] is the left/top exit label of a pipe entering square (r, c)
    through its bottom edge, and left[r][c] of one entering through its right
    edge.  Row 0 holds the top-side labels m+c and column 0 the left-side
    labels m+1-r, which are shared by the standard and toric labelings.
    """
    m, n = d.m, d.n
    up = [[0] * (n + 1) for _ in range(m + 1)]
    left = [[0] * (n + 1) for _ in range(m + 1)]
    for c in range(1, n + 1):
        up[0][c] = m + c
    for r in range(1, m + 1):
        left[r][0] = m + 1 - r
    rows = d.rows
    for r in range(1, m + 1):
        row = rows[r - 1]
        up_r, left_r = up[r], left[r]
        up_above = up[r - 1]
        for c in range(1, n + 1):
            if row[c - 1]:  # black: straight through
                up_r[c] = up_above[c]
                left_r[c] = left_r[c - 1]
            else:  # white: bottom->left and right->top arcs
                up_r[c] = left_r[c - 1]
                left_r[c] = up_above[c]
    return up, left


def _walk(d: Diagram, r: int, c: int, moving_up: bool) -> int:
    """Follow one pipe step by step from square (r, c); return the exit label.

    Independent of the table-based tracer; used for cross-checking.
    """
    while r >= 1 and c >= 1:
        if d.is_white(r, c):
            moving_up = not moving_up
        if moving_up:
            r -= 1
        else:
            c -= 1
    return d.m + c if r == 0 else d.m + 1 - r


def traced_permutation(d: Diagram, labeling: BoundaryLabeling) -> Permutation:
    """Trace every pipe under the given boundary labeling (stepwise walker)."""
    m, n = d.m, d.n
    if labeling.m != m or labeling.n != n:
        raise ValueError("labeling size does not match diagram")
    images = [0] * (m + n)
    for c in range(1, n + 1):
        images[labeling.bottom(c) - 1] = _walk(d, m, c, True)
    for r in range(1, m + 1):
        images[labeling.right(r) - 1] = _walk(d, r, n, False)
    return Permutation(images)


def trace_permutation(d: Diagram) -> Permutation:
    """Permutation of [m+n] traced by the diagram's pipes (standard labels).

    The result is always restricted; this is asserted after tracing.
    """
    m, n = d.m, d.n
    up, left = _exit_tables(d)
    images = [0] * (m + n)
    for c in range(1, n + 1):
        images[c - 1] = up[m][c]
    for r in range(1, m + 1):
        images[n + (m + 1 - r) - 1] = left[r][n]
    p = Permutation(images)
    assert is_restricted(p, m, n), "pipe trace produced a non-restricted permutation"
    return p


def toric_permutation(d: Diagram) -> Permutation:
    """The traced permutation composed with the inverse all-black permutation."""
    return trace_permutation(d) * all_black_permutation(d.m, d.n).inverse()


def toric_permutation_traced(d: Diagram) -> Permutation:
    """The toric permutation read directly off the toric boundary labeling.

    A second, independent implementation of toric_permutation.
    """
    return traced_permutation(d, BoundaryLabeling.toric(d.m, d.n))


class ToricEndpoints(NamedTuple):
    """Toric boundary labels reached from a white square's two arc exits."""

    left: int
    top: int


def toric_endpoint_table(d: Diagram, lab: WhiteLabeling) -> tuple[ToricEndpoints, ...]:
    """Endpoints for every white label at once (index i-1 holds label i)."""
    up, left = _exit_tables(d)
    out = []
    for r, c in lab.positions:
        out.append(ToricEndpoints(left=left[r][c - 1], top=up[r - 1][c]))
    return tuple(out)


def toric_endpoints(d: Diagram, lab: WhiteLabeling, label: int) -> ToricEndpoints:
    """Toric labels reached by leaving white square `label` left or up.

    `left` follows the pipe leaving through the square's left edge, `top` the
    one leaving through its top edge.  Whenever square j is the next white
    square to the right of square i in its row, or the next white square
    above i in its column, the identity endpoints(i).top == endpoints(j).left
    holds (the two exits continue along the same pipe).
    """
    lab.position_of(label)  # range check
    return toric_endpoint_table(d, lab)[label - 1]


def stratum_dimension_by_cycles(d: Diagram) -> int:
    """Stratum dimension of a Cauchon diagram via its toric permutation.

    Computable for any diagram; a NonCauchonWarning is issued when the input
    is not Cauchon, since only then does the value measure a stratum.
    """
    if not d.is_cauchon():
        warnings.warn(
            "diagram is not Cauchon; the odd-cycle count is not a stratum dimension",
            NonCauchonWarning,
            stacklevel=2,
        )
    return odd_cycle_count(cycle_decomposition(toric_permutation(d)))
