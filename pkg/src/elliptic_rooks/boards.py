"""Board shapes: skyline and Ferrers boards, and the l-shifted boards.

Two coordinate conventions coexist and both are kept explicit:

* Column boards (skyline/Ferrers) use (column, row) cells, columns
  numbered 1..n left to right, rows 1..height bottom to top.

* l-shifted boards use the original (row label, column label) cells of
  the shifted grid: rows carry labels 1 = L_N - L_N + 1, ...,
  L_N - L_1 + 1 from top to bottom, columns 2..L_N+1 left to right, and
  a cell (i, j) requires i < j.  For weight computations the same board
  is relabeled: rows 1..N from the bottom, columns 1..L_N from the
  right; ``to_weight_coords``/``from_weight_coords`` convert.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SkylineBoard:
    """Column board with arbitrary nonnegative heights."""

    heights: tuple

    def __post_init__(self):
        heights = tuple(int(h) for h in self.heights)
        object.__setattr__(self, "heights", heights)
        if any(h < 0 for h in heights):
            raise ValueError(f"column heights must be nonnegative: {heights}")

    @property
    def n_columns(self) -> int:
        return len(self.heights)

    def cells(self):
        """All (column, row) cells, column-major, bottom to top."""
        return [
            (i, j)
            for i, h in enumerate(self.heights, start=1)
            for j in range(1, h + 1)
        ]

    def __contains__(self, cell) -> bool:
        i, j = cell
        return 1 <= i <= len(self.heights) and 1 <= j <= self.heights[i - 1]


@dataclass(frozen=True)
class FerrersBoard(SkylineBoard):
    """Skyline board with nondecreasing heights."""

    def __post_init__(self):
        super().__post_init__()
        if any(a > b for a, b in zip(self.heights, self.heights[1:])):
            raise ValueError(f"Ferrers board needs nondecreasing heights: {self.heights}")


def staircase(n: int) -> FerrersBoard:
    """The staircase board with heights (0, 1, ..., n-1)."""
    if n < 1:
        raise ValueError("staircase needs n >= 1")
    return FerrersBoard(tuple(range(n)))


def truncated_staircase(n: int, r: int) -> FerrersBoard:
    """Staircase with the first r columns flattened to height 0."""
    if not 1 <= r <= n:
        raise ValueError("truncated_staircase needs 1 <= r <= n")
    return FerrersBoard(tuple(0 if i <= r else i - 1 for i in range(1, n + 1)))


def abel_board(n: int, acolors: int) -> FerrersBoard:
    """One empty column followed by n-1 columns of height acolors*n."""
    if n < 1 or acolors < 1:
        raise ValueError("abel_board needs n >= 1 and acolors >= 1")
    return FerrersBoard((0,) + (acolors * n,) * (n - 1))


@dataclass(frozen=True)
class LVector:
    """Positive row increments (l_1, ..., l_N) with prefix sums L_j."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries or any(e < 1 for e in entries):
            raise ValueError(f"l-vector needs positive entries: {entries}")

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    def prefix(self, j: int) -> int:
        """L_j = l_1 + ... + l_j, with L_0 = 0."""
        return sum(self.entries[:j])

    @property
    def total(self) -> int:
        return sum(self.entries)


@dataclass(frozen=True)
class LShiftedBoard:
    """Sub-board of the full l-shifted board, given by row lengths.

    Row i (top-indexed, 1..N) starts at column label
    L_N - L_{N-i+1} + 1 and spans ``rowlens[i-1]`` cells.  Validity:
    L_N >= a_1 >= ... >= a_N >= 0 and, whenever a_{i+1} > 0,
    a_i - a_{i+1} >= l_{N+1-i}.  Those two conditions keep every row
    inside the full board.
    """

    lvec: LVector
    rowlens: tuple

    def __post_init__(self):
        if not isinstance(self.lvec, LVector):
            object.__setattr__(self, "lvec", LVector(tuple(self.lvec)))
        rowlens = tuple(int(a) for a in self.rowlens)
        object.__setattr__(self, "rowlens", rowlens)
        n = self.lvec.n_rows
        if len(rowlens) != n:
            raise ValueError(f"need {n} row lengths, got {len(rowlens)}")
        if any(a < 0 for a in rowlens):
            raise ValueError(f"row lengths must be nonnegative: {rowlens}")
        if any(a < b for a, b in zip(rowlens, rowlens[1:])):
            raise ValueError(f"row lengths must be nonincreasing: {rowlens}")
        if rowlens and rowlens[0] > self.lvec.total:
            raise ValueError(
                f"top row length {rowlens[0]} exceeds board width {self.lvec.total}"
            )
        ells = self.lvec.entries
        for i in range(n - 1):
            if rowlens[i + 1] > 0 and rowlens[i] - rowlens[i + 1] < ells[n - 1 - i]:
                raise ValueError(
                    f"row lengths {rowlens} violate the gap condition at position {i + 1}:"
                    f" need a_{i + 1} - a_{i + 2} >= {ells[n - 1 - i]}"
                )

    @property
    def n_rows(self) -> int:
        return self.lvec.n_rows

    @property
    def width(self) -> int:
        return self.lvec.total

    def row_start(self, i: int) -> int:
        """Original label of row i (top-indexed): L_N - L_{N-i+1} + 1."""
        n = self.n_rows
        return self.width - self.lvec.prefix(n - i + 1) + 1

    @property
    def row_labels(self) -> tuple:
        return tuple(self.row_start(i) for i in range(1, self.n_rows + 1))

    def cells(self):
        """All cells as original (row label, column label) pairs."""
        out = []
        for i in range(1, self.n_rows + 1):
            start = self.row_start(i)
            out.extend((start, start + j) for j in range(1, self.rowlens[i - 1] + 1))
        return out

    def __contains__(self, cell) -> bool:
        i, j = cell
        for row, a in zip(self.row_labels, self.rowlens):
            if row == i:
                return i < j <= i + a
        return False


def shifted_board(rowlens) -> LShiftedBoard:
    """Shifted board with unit increments (the classical matching board)."""
    return LShiftedBoard(LVector((1,) * len(tuple(rowlens))), tuple(rowlens))


def full_lshifted(lvec) -> LShiftedBoard:
    """The full l-shifted board: row i has length L_{N-i+1}."""
    if not isinstance(lvec, LVector):
        lvec = LVector(tuple(lvec))
    n = lvec.n_rows
    return LShiftedBoard(lvec, tuple(lvec.prefix(n - i + 1) for i in range(1, n + 1)))


def full_unit_board(vertices: int) -> LShiftedBoard:
    """Full shifted board whose matchings are those of K_vertices."""
    if vertices < 2:
        raise ValueError("need at least 2 vertices")
    return full_lshifted((1,) * (vertices - 1))


def cells(board):
    """Cell list of any board type, in that board's own coordinates."""
    return board.cells()


def to_weight_coords(board: LShiftedBoard, cell):
    """Original (row label, column label) -> weight labeling (i, j)^w.

    Weight rows count 1..N from the bottom, weight columns 1..L_N from
    the right.
    """
    row_label, col_label = cell
    try:
        top_index = board.row_labels.index(row_label) + 1
    except ValueError:
        raise ValueError(f"no board row has label {row_label}") from None
    if cell not in board:
        raise ValueError(f"cell {cell} is not on the board")
    n, width = board.n_rows, board.width
    return (n - top_index + 1, width + 2 - col_label)


def from_weight_coords(board: LShiftedBoard, wcell):
    """Inverse of to_weight_coords."""
    wrow, wcol = wcell
    n, width = board.n_rows, board.width
    if not (1 <= wrow <= n and 1 <= wcol <= width):
        raise ValueError(f"weight coordinates {wcell} outside the grid")
    cell = (board.row_start(n - wrow + 1), width + 2 - wcol)
    if cell not in board:
        raise ValueError(f"weight coordinates {wcell} fall off the board")
    return cell


def parse_board(spec: str):
    """Parse a board literal.

    Ferrers boards are comma-separated heights ("0,1,2").  l-shifted
    boards are "l=1,1,1;a=3,2,1", or "l=1,1,1" for the full board, or
    "full-B<m>" for the full unit-increment board on m vertices.
    """
    text = spec.strip()
    if text.lower().startswith("full-b"):
        return full_unit_board(int(text[6:]))
    if "=" in text:
        lpart = apart = None
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            key, _, val = chunk.partition("=")
            values = tuple(int(v) for v in val.split(",") if v.strip())
            if key.strip() == "l":
                lpart = values
            elif key.strip() == "a":
                apart = values
            else:
                raise ValueError(f"unknown board field {key.strip()!r} in {spec!r}")
        if lpart is None:
            raise ValueError(f"l-shifted board literal needs an l= part: {spec!r}")
        if apart is None:
            return full_lshifted(lpart)
        return LShiftedBoard(LVector(lpart), apart)
    return FerrersBoard(tuple(int(v) for v in text.split(",") if v.strip()))
