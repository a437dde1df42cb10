"""Backtracking exact search for square tilings of small rectangles.

The search always fills the first uncovered cell in row-major order. Every
cell before it is already covered, so whatever square covers it must have
its top-left corner exactly there; only the side length is a choice. Side
lengths are tried smallest first by default, which is what keeps the
witnesses to squares of side 2, 3, 5 and 7.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_MIN_SIDE, Rect, Tiling


class SizeOrder(str, enum.Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"


@dataclass(frozen=True)
class SearchConfig:
    min_side: int = DEFAULT_MIN_SIDE
    max_side: int | None = None
    size_order: SizeOrder = SizeOrder.ASCENDING
    node_limit: int | None = None
    # Remember occupancy states already shown to be dead ends. Exact, since
    # the rest of the search depends on nothing but the occupancy.
    memo: bool = True

    def __post_init__(self) -> None:
        if self.min_side < 1:
            raise ValueError("min_side must be >= 1")
        if self.max_side is not None and self.max_side < self.min_side:
            raise ValueError("max_side must be >= min_side")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be positive")
        object.__setattr__(self, "size_order", SizeOrder(self.size_order))


class SearchInconclusive(Exception):
    """The node limit ran out before the search could decide."""

    def __init__(self, rect: Rect, nodes: int):
        super().__init__(f"search on {rect} gave up after {nodes} nodes")
        self.rect = rect
        self.nodes = nodes


class OccupancyGrid:
    """Covered/uncovered state of every cell, packed into one integer.

    Bit ``y * n + x`` is set when cell ``(x, y)`` is covered.
    """

    def __init__(self, rect: Rect):
        self.rect = rect
        self.bits = 0
        self.covered = 0
        self._full = (1 << rect.area) - 1
        self._masks: dict[tuple[int, int], int] = {}

    def square_mask(self, pos: int, side: int) -> int:
        key = (pos, side)
        mask = self._masks.get(key)
        if mask is None:
            n = self.rect.n
            y, x = divmod(pos, n)
            row = ((1 << side) - 1) << x
            mask = 0
            for r in range(side):
                mask |= row << ((y + r) * n)
            self._masks[key] = mask
        return mask

    @property
    def complete(self) -> bool:
        return self.bits == self._full

    def first_empty(self) -> int:
        """Row-major index of the first uncovered cell, or -1 when full."""
        free = ~self.bits & self._full
        return (free & -free).bit_length() - 1

    def largest_fit(self, pos: int, cap: int) -> int:
        """Largest side, at most ``cap``, of a square cornered at ``pos`` that fits."""
        y, x = divmod(pos, self.rect.n)
        limit = min(cap, self.rect.m - y, self.rect.n - x)
        side = 0
        while side < limit and not self.bits & self.square_mask(pos, side + 1):
            side += 1
        return side

    def place(self, pos: int, side: int) -> None:
        self.bits |= self.square_mask(pos, side)
        self.covered += side * side

    def remove(self, pos: int, side: int) -> None:
        self.bits &= ~self.square_mask(pos, side)
        self.covered -= side * side

    @property
    def cells(self) -> np.ndarray:
        m, n = self.rect.m, self.rect.n
        bits = np.array([(self.bits >> i) & 1 for i in range(m * n)], dtype=bool)
        return bits.reshape(m, n)


@dataclass
class SearchStats:
    nodes: int = 0
    dead_states: int = 0
    placements: list[tuple[int, int, int]] = field(default_factory=list)


def _run(r: Rect, cfg: SearchConfig, stats: SearchStats) -> bool:
    grid = OccupancyGrid(r)
    cap = min(r.m, r.n) if cfg.max_side is None else min(cfg.max_side, r.m, r.n)
    ascending = cfg.size_order is SizeOrder.ASCENDING
    dead: set[int] = set()
    limit = cfg.node_limit

    def candidates(pos: int) -> list[int]:
        top = grid.largest_fit(pos, cap)
        sides = range(cfg.min_side, top + 1)
        return list(sides) if ascending else list(reversed(sides))

    # Each frame: [cell index, candidate sides, next candidate, side in place].
    stack: list[list] = []
    stats.nodes = 1
    if grid.complete:
        return True
    pos = grid.first_empty()
    stack.append([pos, candidates(pos), 0, 0])

    while stack:
        frame = stack[-1]
        pos, sides, i, placed = frame
        if placed:
            grid.remove(pos, placed)
            frame[3] = 0
        if i == len(sides):
            stack.pop()
            if cfg.memo:
                dead.add(grid.bits)
            continue
        side = sides[i]
        frame[2] = i + 1
        frame[3] = side
        grid.place(pos, side)

        stats.nodes += 1
        if limit is not None and stats.nodes > limit:
            raise SearchInconclusive(r, stats.nodes)
        if grid.complete:
            n = r.n
            stats.placements = [(f[0] % n, f[0] // n, f[3]) for f in stack]
            stats.dead_states = len(dead)
            return True
        if cfg.memo and grid.bits in dead:
            continue
        nxt = grid.first_empty()
        stack.append([nxt, candidates(nxt), 0, 0])

    stats.dead_states = len(dead)
    return False


def find_tiling(r: Rect, cfg: SearchConfig = SearchConfig()) -> Tiling | None:
    """Search for a tiling of ``r``; ``None`` when none exists.

    Raises :class:`SearchInconclusive` if ``cfg.node_limit`` is exhausted.
    """
    stats = SearchStats()
    if not _run(r, cfg, stats):
        return None
    return Tiling(r, stats.placements)


def is_tileable(r: Rect, cfg: SearchConfig = SearchConfig()) -> bool:
    # The verdict is symmetric under transposition, and the search is far
    # cheaper when rows are the short side.
    if r.n > r.m:
        r = r.transpose()
    return _run(r, cfg, SearchStats())


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class TileTable:
    """Tileability of every ``m x n`` with ``2 <= m, n <= max_dim``."""

    max_dim: int
    min_side: int
    cells: tuple[tuple[bool, ...], ...]  # cells[m - 2][n - 2]

    def __getitem__(self, key: tuple[int, int]) -> bool:
        m, n = key
        if not (2 <= m <= self.max_dim and 2 <= n <= self.max_dim):
            raise KeyError(key)
        return self.cells[m - 2][n - 2]

    def tileable_pairs(self) -> list[tuple[int, int]]:
        """All tileable ``(m, n)`` with ``m <= n``."""
        dims = range(2, self.max_dim + 1)
        return [(m, n) for m in dims for n in dims if m <= n and self[m, n]]

    def to_text(self) -> str:
        lines = [f"table {self.max_dim} min_side={self.min_side}"]
        lines.extend("".join("#" if c else "." for c in row) for row in self.cells)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> TileTable:
        lines = text.rstrip("\n").split("\n")
        head = lines[0].split(" ")
        if len(head) != 3 or head[0] != "table" or not head[2].startswith("min_side="):
            raise ValueError(f"bad table header: {lines[0]!r}")
        max_dim, min_side = int(head[1]), int(head[2][len("min_side="):])
        size = max_dim - 1
        rows = lines[1:]
        if len(rows) != size or any(len(r) != size or set(r) - {"#", "."} for r in rows):
            raise ValueError("table body does not match its header")
        cells = tuple(tuple(c == "#" for c in r) for r in rows)
        return cls(max_dim, min_side, cells)


def _table_cell(args: tuple[int, int, SearchConfig]) -> bool:
    m, n, cfg = args
    return is_tileable(Rect(m, n), cfg)


def build_table(max_dim: int, cfg: SearchConfig = SearchConfig(), workers: int | None = 1) -> TileTable:
    """Decide every ``m x n`` up to ``max_dim`` by search.

    Only ``m <= n`` is searched; the other half is mirrored. ``workers``
    greater than one farms the cells out to a process pool, ``None`` uses
    one worker per CPU.
    """
    if max_dim < 2:
        raise ValueError("max_dim must be >= 2")
    if cfg.node_limit is not None:
        raise ValueError("tables must be built without a node limit")
    jobs = [(m, n, cfg) for m in range(2, max_dim + 1) for n in range(m, max_dim + 1)]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(_table_cell, jobs, chunksize=4))
    else:
        verdicts = [_table_cell(job) for job in jobs]

    size = max_dim - 1
    grid = [[False] * size for _ in range(size)]
    for (m, n, _), ok in zip(jobs, verdicts):
        grid[m - 2][n - 2] = grid[n - 2][m - 2] = ok
    return TileTable(max_dim, cfg.min_side, tuple(tuple(row) for row in grid))
