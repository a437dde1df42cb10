"""Explicit witness tilings for every tileable rectangle, at any size.

Everything here is assembled from a handful of blocks: 2x2 (or p x p)
grids, the 5x5 square, the 5x6 block, and searched base tilings for rows
6 to 19. Blocks are placed as numpy arrays of ``(x, y, side)`` rows so the
large cases stay linear in the number of squares.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import theory
from .core import Rect, Tiling, transpose
from .search import SearchConfig, find_tiling

BASE_LIMIT = theory.SMALL_LIMIT
EXTENSION = 6


def _grid(h: int, w: int, side: int, x0: int = 0, y0: int = 0) -> np.ndarray:
    """``side x side`` squares covering an ``h x w`` region at ``(x0, y0)``."""
    ys = np.arange(y0, y0 + h, side, dtype=np.int64)
    xs = np.arange(x0, x0 + w, side, dtype=np.int64)
    out = np.empty((len(ys) * len(xs), 3), dtype=np.int64)
    out[:, 0] = np.tile(xs, len(ys))
    out[:, 1] = np.repeat(ys, len(xs))
    out[:, 2] = side
    return out


def _shift(arr: np.ndarray, dx: int = 0, dy: int = 0) -> np.ndarray:
    out = arr.copy()
    out[:, 0] += dx
    out[:, 1] += dy
    return out


def _assemble(rect: Rect, *pieces: np.ndarray) -> Tiling:
    return Tiling(rect, np.concatenate(pieces) if len(pieces) > 1 else pieces[0])


# ---------------------------------------------------------------------------
# building blocks


def tile_even_even(m: int, n: int) -> Tiling:
    if m < 2 or n < 2 or m % 2 or n % 2:
        raise ValueError(f"{m}x{n} is not even by even")
    return Tiling._presorted(Rect(m, n), _grid(m, n, 2))


def _square_grid(m: int, n: int, side: int) -> Tiling:
    if m % side or n % side:
        raise ValueError(f"{side} does not divide both sides of {m}x{n}")
    return Tiling._presorted(Rect(m, n), _grid(m, n, side))


@lru_cache(maxsize=None)
def block_5x6() -> Tiling:
    """The 5x6 tiling found by search: two 3x3 squares and three 2x2 squares."""
    t = find_tiling(Rect(5, 6))
    assert t is not None and t.side_counts() == {2: 3, 3: 2}, t
    return t


class BlockKind(str, enum.Enum):
    BLOCK5X5 = "block5x5"
    BLOCK5X6 = "block5x6"


_BLOCK_WIDTH = {BlockKind.BLOCK5X5: 5, BlockKind.BLOCK5X6: 6}


@dataclass(frozen=True)
class StripPlan:
    """Left-to-right layout of 5x5 and 5x6 blocks along a 5-row strip."""

    segments: tuple[tuple[BlockKind, int], ...]

    @property
    def length(self) -> int:
        if not self.segments:
            return 0
        kind, offset = self.segments[-1]
        return offset + _BLOCK_WIDTH[kind]

    @classmethod
    def for_length(cls, n: int) -> StripPlan:
        rep = theory.frobenius_rep(n)
        if rep is None:
            raise ValueError(
                f"5x{n} cannot be tiled: {n} is not a sum of 5s and 6s "
                f"(the gaps are 1-4, 7-9, 13, 14 and 19)"
            )
        kinds = [BlockKind.BLOCK5X5] * rep.i + [BlockKind.BLOCK5X6] * rep.j
        offsets = np.cumsum([0] + [_BLOCK_WIDTH[k] for k in kinds[:-1]]).tolist() if kinds else []
        return cls(tuple(zip(kinds, offsets)))


def _strip_5xn(n: int) -> np.ndarray:
    plan = StripPlan.for_length(n)
    rep = theory.frobenius_rep(n)
    fives = np.zeros((rep.i, 3), dtype=np.int64)
    fives[:, 0] = 5 * np.arange(rep.i)
    fives[:, 2] = 5
    block = block_5x6().array
    starts = 5 * rep.i + 6 * np.arange(rep.j, dtype=np.int64)
    sixes = np.repeat(block[None, :, :], rep.j, axis=0)
    sixes[:, :, 0] += starts[:, None]
    assert plan.length == n
    return np.concatenate([fives, sixes.reshape(-1, 3)])


def tile_5xn(n: int) -> Tiling:
    """A 5 x n tiling from 5x5 squares followed by 5x6 blocks."""
    return Tiling(Rect(5, n), _strip_5xn(n))


def _mx6(m: int) -> np.ndarray:
    if m % 2 == 0 and m >= 2:
        return _grid(m, 6, 2)
    if m < 5:
        raise ValueError(f"no {m}x6 tiling from the 5x6 block and 2x2 rows")
    return np.concatenate([block_5x6().array, _grid(m - 5, 6, 2, y0=5)])


def tile_mx6(m: int) -> Tiling:
    """An m x 6 tiling: the 5x6 block over rows of 2x2 squares (all 2x2 for even m)."""
    return Tiling(Rect(m, 6), _mx6(m))


def extend_by_6(t: Tiling) -> Tiling:
    """Append an m x 6 block on the right of an m x n tiling."""
    m, n = t.rect.m, t.rect.n
    if m < 5:
        raise ValueError("extension needs at least 5 rows")
    return _assemble(Rect(m, n + EXTENSION), t.array, _shift(_mx6(m), dx=n))


def _large_pieces(m: int, n: int) -> list[np.ndarray]:
    if m % 2 == 0 and n % 2 == 0:
        return [_grid(m, n, 2)]
    pieces = []
    top = 0
    if m % 2:
        pieces.append(_strip_5xn(n))
        top = 5
    h = m - top
    left = 0
    if n % 2:
        pieces.append(transpose(Tiling(Rect(5, h), _strip_5xn(h))).array + np.array([0, top, 0]))
        left = 5
    pieces.append(_grid(h, n - left, 2, x0=left, y0=top))
    return pieces


def tile_large(m: int, n: int) -> Tiling:
    """Tile ``m x n`` for ``m, n >= 20`` with 2x2, 3x3 and 5x5 squares.

    Odd height loses a 5-row strip off the top, odd width a 5-column strip
    off the left of what remains, and the even-by-even rest takes 2x2s.
    """
    if m < 20 or n < 20:
        raise ValueError(f"tile_large needs both sides >= 20, got {m}x{n}")
    return _assemble(Rect(m, n), *_large_pieces(m, n))


# ---------------------------------------------------------------------------
# rows 6..19: searched bases plus extension


@lru_cache(maxsize=None)
def base_tiling(m: int, b: int) -> Tiling:
    """Searched tiling of the ``m x b`` base window (both at most 19)."""
    t = find_tiling(Rect(m, b), SearchConfig())
    if t is None:
        raise ValueError(f"{m}x{b} has no tiling")
    return t


@lru_cache(maxsize=None)
def base_lengths(m: int) -> tuple[int, ...]:
    """Tileable widths up to 19 for ``m`` rows that are not two shorter ones side by side."""
    table = theory.small_table()
    ok = [b for b in range(2, BASE_LIMIT + 1) if table[m, b]]
    return tuple(b for b in ok if not any(b - a in ok for a in ok if a < b))


@lru_cache(maxsize=None)
def _compositions(m: int, limit: int) -> tuple[tuple[int, ...] | None, ...]:
    # best[L]: fewest base widths summing to L, ties to the larger parts first.
    parts = base_lengths(m)
    best: list[tuple[int, ...] | None] = [None] * (limit + 1)
    best[0] = ()
    for total in range(1, limit + 1):
        options = [
            tuple(sorted(best[total - b] + (b,), reverse=True))
            for b in parts
            if b <= total and best[total - b] is not None
        ]
        if options:
            best[total] = min(options, key=lambda p: (len(p), tuple(-x for x in p)))
    return tuple(best)


def strip_plan(m: int, n: int) -> tuple[tuple[int, ...], int]:
    """Base widths and number of 6-column extensions for an ``m x n`` row, 6 <= m <= 19.

    The base is the longest composable width, at most ``2 * 19``, that is
    congruent to ``n`` mod 6; the rest is made up by extensions.
    """
    limit = min(n, 2 * BASE_LIMIT)
    best = _compositions(m, limit)
    for base in range(limit, -1, -1):
        if (n - base) % EXTENSION == 0 and best[base] is not None:
            return best[base], (n - base) // EXTENSION
    raise ValueError(f"no base composition for {m}x{n}")


def _banded(m: int, n: int) -> Tiling:
    parts, extensions = strip_plan(m, n)
    pieces = []
    x = 0
    for b in parts:
        pieces.append(_shift(base_tiling(m, b).array, dx=x))
        x += b
    if extensions:
        block = _mx6(m)
        for _ in range(extensions):
            pieces.append(_shift(block, dx=x))
            x += EXTENSION
    assert x == n
    return _assemble(Rect(m, n), *pieces)


def _smallest_prime_factor(d: int) -> int:
    for p in range(2, math.isqrt(d) + 1):
        if d % p == 0:
            return p
    return d


def construct(m: int, n: int) -> Tiling | None:
    """A witness tiling of ``m x n``, or ``None`` when none exists."""
    if m < 1 or n < 1:
        raise ValueError(f"rectangle dimensions must be >= 1, got {m} x {n}")
    if not theory.decide_tileable(m, n):
        return None
    if m > n:
        return transpose(_construct_canonical(n, m))
    return _construct_canonical(m, n)


def _construct_canonical(m: int, n: int) -> Tiling:
    if m % 2 == 0 and n % 2 == 0:
        return tile_even_even(m, n)
    if m == 3:
        return _square_grid(m, n, 3)
    # Only primes up to 7 keep the square sizes within {2, 3, 5, 7}.
    d = math.gcd(m, n)
    if d >= 2 and _smallest_prime_factor(d) <= 7:
        return _square_grid(m, n, _smallest_prime_factor(d))
    if m == 5:
        return tile_5xn(n)
    if m >= 20:
        return tile_large(m, n)
    if n <= BASE_LIMIT:
        return base_tiling(m, n)
    return _banded(m, n)
