"""Rectangles, square placements, tilings, and an independent tiling verifier.

Coordinates follow the grid convention used everywhere in the package:
``x`` is the column of a square's left edge, ``y`` the row of its top edge,
the origin is the top-left corner and ``y`` grows downward.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numpy as np

DEFAULT_MIN_SIDE = 2


@dataclass(frozen=True, order=True)
class Rect:
    """An ``m x n`` integer rectangle: ``m`` rows tall, ``n`` columns wide."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.m, (int, np.integer)) and isinstance(self.n, (int, np.integer))):
            raise TypeError(f"rectangle dimensions must be integers, got {self.m!r} x {self.n!r}")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"rectangle dimensions must be >= 1, got {self.m} x {self.n}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))

    @property
    def area(self) -> int:
        return self.m * self.n

    def transpose(self) -> Rect:
        return Rect(self.n, self.m)

    def canonical(self) -> Rect:
        return self if self.m <= self.n else self.transpose()

    def __str__(self) -> str:
        return f"{self.m}x{self.n}"


class Placement(NamedTuple):
    """One axis-aligned square covering ``[x, x+side) x [y, y+side)``."""

    x: int
    y: int
    side: int


def _as_array(placements) -> np.ndarray:
    if isinstance(placements, np.ndarray):
        arr = np.asarray(placements, dtype=np.int64)
    else:
        arr = np.array([tuple(p) for p in placements], dtype=np.int64)
    if arr.size == 0:
        return np.empty((0, 3), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("placements must be (x, y, side) triples")
    if (arr[:, :2] < 0).any():
        raise ValueError("placement coordinates must be non-negative")
    if (arr[:, 2] < 1).any():
        raise ValueError("placement sides must be positive")
    return arr


class Tiling:
    """A rectangle together with a list of squares claimed to tile it.

    Placements are kept as an ``(k, 3)`` integer array of ``(x, y, side)``
    rows sorted by ``(y, x)``; nothing about validity is assumed, that is
    what :func:`verify` is for. Instances are immutable.
    """

    __slots__ = ("rect", "_arr", "_placements")

    def __init__(self, rect: Rect, placements: Iterable[Placement] | np.ndarray = ()):
        arr = _as_array(placements)
        if len(arr) > 1:
            key = arr[:, 1] * (int(arr[:, 0].max()) + 1) + arr[:, 0]
            if (key[1:] < key[:-1]).any():
                arr = arr[np.argsort(key, kind="stable")]
        arr.flags.writeable = False
        self.rect = rect
        self._arr = arr
        self._placements: tuple[Placement, ...] | None = None

    @classmethod
    def _presorted(cls, rect: Rect, arr: np.ndarray) -> Tiling:
        # Internal fast path for producers that already emit (y, x) order.
        t = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.flags.writeable = False
        t.rect = rect
        t._arr = arr
        t._placements = None
        return t

    @property
    def array(self) -> np.ndarray:
        """Read-only ``(k, 3)`` view of the placements."""
        return self._arr

    @property
    def placements(self) -> tuple[Placement, ...]:
        if self._placements is None:
            self._placements = tuple(Placement(*row) for row in self._arr.tolist())
        return self._placements

    def __len__(self) -> int:
        return len(self._arr)

    def __iter__(self) -> Iterator[Placement]:
        return iter(self.placements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tiling):
            return NotImplemented
        return self.rect == other.rect and np.array_equal(self._arr, other._arr)

    def __hash__(self) -> int:
        return hash((self.rect, self._arr.tobytes()))

    def __repr__(self) -> str:
        return f"Tiling({self.rect}, {len(self)} placements)"

    def sides(self) -> set[int]:
        return set(np.unique(self._arr[:, 2]).tolist())

    def side_counts(self) -> dict[int, int]:
        values, counts = np.unique(self._arr[:, 2], return_counts=True)
        return dict(zip(values.tolist(), counts.tolist()))

    def covered_area(self) -> int:
        return int((self._arr[:, 2] ** 2).sum())

    def shifted(self, dx: int, dy: int, rect: Rect) -> Tiling:
        """Return the placements translated by ``(dx, dy)`` inside ``rect``."""
        arr = self._arr.copy()
        arr[:, 0] += dx
        arr[:, 1] += dy
        return Tiling(rect, arr)


def transpose(t: Tiling) -> Tiling:
    """Reflect a tiling across its main diagonal (``m x n`` becomes ``n x m``)."""
    arr = t.array[:, [1, 0, 2]]
    return Tiling(t.rect.transpose(), arr)


# ---------------------------------------------------------------------------
# verification


class FailureKind(str, enum.Enum):
    OVERLAP = "overlap"
    OUT_OF_BOUNDS = "out_of_bounds"
    GAP = "gap"
    SIDE_TOO_SMALL = "side_too_small"


@dataclass(frozen=True)
class Failure:
    kind: FailureKind
    placements: tuple[Placement, ...] = ()
    cell: tuple[int, int] | None = None  # (x, y)

    def __str__(self) -> str:
        label = self.kind.name
        if self.kind is FailureKind.GAP:
            return f"{label} at cell x={self.cell[0]} y={self.cell[1]}"
        squares = " and ".join(f"({p.x},{p.y},{p.side})" for p in self.placements)
        if self.kind is FailureKind.OVERLAP:
            return f"{label} {squares} at cell x={self.cell[0]} y={self.cell[1]}"
        return f"{label} {squares}"


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    failure: Failure | None = None

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        return "VALID" if self.valid else str(self.failure)


def _paint(m: int, n: int, arr: np.ndarray, dtype) -> np.ndarray:
    """Coverage count per cell, painted from scratch."""
    grid = np.zeros(m * n, dtype=dtype)
    if len(arr) == 0:
        return grid.reshape(m, n)
    one = dtype(1)
    for side in np.unique(arr[:, 2]).tolist():
        group = arr[arr[:, 2] == side]
        if len(group) < side * side:
            view = grid.reshape(m, n)
            for x, y, _ in group.tolist():
                view[y:y + side, x:x + side] += one
            continue
        # Rows are (y, x)-sorted and in bounds, so corner indices ascend.
        base = group[:, 1] * n + group[:, 0]
        # Identical corners would collapse under fancy indexing; paint the
        # surplus copies separately.
        repeat = base[1:] == base[:-1]
        uniq = base[np.concatenate(([True], ~repeat))] if repeat.any() else base
        for dy in range(side):
            for dx in range(side):
                grid[uniq + (dy * n + dx)] += one
        if repeat.any():
            view = grid.reshape(m, n)
            for b in base[1:][repeat].tolist():
                y, x = divmod(b, n)
                view[y:y + side, x:x + side] += one
    return grid.reshape(m, n)


def _covering(arr: np.ndarray, x: int, y: int) -> np.ndarray:
    hit = (arr[:, 0] <= x) & (x < arr[:, 0] + arr[:, 2]) & (arr[:, 1] <= y) & (y < arr[:, 1] + arr[:, 2])
    return np.flatnonzero(hit)


def verify(t: Tiling, min_side: int = DEFAULT_MIN_SIDE) -> VerificationReport:
    """Check that ``t``'s squares partition its rectangle exactly.

    Checks run in a fixed order and the first failure wins: a side below
    ``min_side``, then a square leaving the rectangle (both in placement
    order), then the first doubly covered cell in row-major order, then the
    first uncovered cell.
    """
    m, n = t.rect.m, t.rect.n
    arr = t.array
    place = lambda i: Placement(*arr[i].tolist())  # noqa: E731

    small = np.flatnonzero(arr[:, 2] < min_side)
    if len(small):
        return VerificationReport(False, Failure(FailureKind.SIDE_TOO_SMALL, (place(small[0]),)))
    outside = np.flatnonzero((arr[:, 0] + arr[:, 2] > n) | (arr[:, 1] + arr[:, 2] > m))
    if len(outside):
        return VerificationReport(False, Failure(FailureKind.OUT_OF_BOUNDS, (place(outside[0]),)))

    # A narrow counter may wrap on adversarial stacks of squares, but then
    # either the area check or the all-ones check still fails; the exact
    # diagnosis below recounts in int64 when that happens.
    narrow = np.uint16 if m * n > 4_000_000 else np.int64
    grid = _paint(m, n, arr, narrow)
    area = int((arr[:, 2] ** 2).sum())
    if area == m * n and bool((grid == 1).all()):
        return VerificationReport(True)

    if narrow is not np.int64:
        grid = _paint(m, n, arr, np.int64)
    flat = grid.ravel()
    over = np.flatnonzero(flat > 1)
    if len(over):
        y, x = divmod(int(over[0]), n)
        first, second = _covering(arr, x, y)[:2]
        return VerificationReport(
            False, Failure(FailureKind.OVERLAP, (place(first), place(second)), (x, y))
        )
    gap = np.flatnonzero(flat == 0)
    y, x = divmod(int(gap[0]), n)
    return VerificationReport(False, Failure(FailureKind.GAP, (), (x, y)))


# ---------------------------------------------------------------------------
# text format


class TilingFormatError(ValueError):
    """Raised when tiling text does not follow the canonical format."""


def format_tiling(t: Tiling) -> str:
    lines = [f"tiling {t.rect.m} {t.rect.n}"]
    lines.extend(f"{x} {y} {s}" for x, y, s in t.array.tolist())
    return "\n".join(lines) + "\n"


def parse_tiling(text: str, strict: bool = True) -> Tiling:
    """Parse the ``tiling <m> <n>`` text format.

    In strict mode the placement lines must be in ``(y, x)`` order with no
    two squares sharing a corner, and the text must end with exactly one
    newline. Non-strict mode only requires well-formed lines, which is what
    rendering of broken files needs.
    """
    if strict and not text.endswith("\n"):
        raise TilingFormatError("missing final newline")
    if strict and text.endswith("\n\n"):
        raise TilingFormatError("trailing blank line")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TilingFormatError("empty input")

    header = lines[0].split(" ") if strict else lines[0].split()
    if len(header) != 3 or header[0] != "tiling":
        raise TilingFormatError(f"bad header line: {lines[0]!r}")
    m, n = _parse_ints(header[1:], 1, strict)
    try:
        rect = Rect(m, n)
    except ValueError as exc:
        raise TilingFormatError(str(exc)) from None

    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not strict and not line.strip():
            continue
        fields = line.split(" ") if strict else line.split()
        if len(fields) != 3:
            raise TilingFormatError(f"line {lineno}: expected '<x> <y> <side>', got {line!r}")
        x, y, s = _parse_ints(fields, lineno, strict)
        if s < 1:
            raise TilingFormatError(f"line {lineno}: side must be positive")
        rows.append((x, y, s))

    if strict:
        for lineno, (prev, cur) in enumerate(zip(rows, rows[1:]), start=3):
            if (cur[1], cur[0]) == (prev[1], prev[0]):
                raise TilingFormatError(f"line {lineno}: duplicate corner ({cur[0]}, {cur[1]})")
            if (cur[1], cur[0]) < (prev[1], prev[0]):
                raise TilingFormatError(f"line {lineno}: placements not sorted by (y, x)")
    return Tiling(rect, rows)


_DIGITS = re.compile(r"[0-9]+")


def _parse_ints(fields: list[str], lineno: int, strict: bool) -> list[int]:
    out = []
    for f in fields:
        if not _DIGITS.fullmatch(f) or (strict and len(f) > 1 and f[0] == "0"):
            raise TilingFormatError(f"line {lineno}: not a canonical non-negative integer: {f!r}")
        out.append(int(f))
    return out
