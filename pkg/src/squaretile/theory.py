"""Closed-form tileability rules for squares of side at least 2."""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass

from .search import SearchConfig, TileTable, build_table

SMALL_LIMIT = 19
COIN_A, COIN_B = 5, 6


@dataclass(frozen=True)
class FrobeniusRep:
    """``n = 5 * i + 6 * j`` with ``i, j >= 0``."""

    i: int
    j: int

    @property
    def value(self) -> int:
        return COIN_A * self.i + COIN_B * self.j


def frobenius_rep(n: int) -> FrobeniusRep | None:
    """Write ``n`` as a sum of 5s and 6s, using as many 5s as possible."""
    if n < 0:
        raise ValueError("n must be non-negative")
    # 6j must be congruent to n mod 5, i.e. j = n (mod 5) since 6 = 1 (mod 5).
    j = n % COIN_A
    if COIN_B * j > n:
        return None
    return FrobeniusRep((n - COIN_B * j) // COIN_A, j)


class Rule(str, enum.Enum):
    EVEN_EVEN = "even_even"
    ROW2_OR_4 = "row2_or_4"
    ROW3 = "row3"
    ROW5_FROBENIUS = "row5_frobenius"
    SMALL_TABLE = "small_table"
    LARGE_THEOREM = "large_theorem"
    TOO_THIN = "too_thin"


@dataclass(frozen=True)
class Verdict:
    tileable: bool
    rule: Rule

    def __bool__(self) -> bool:
        return self.tileable

    def __str__(self) -> str:
        word = "tileable" if self.tileable else "not tileable"
        return f"{word} ({self.rule.value})"


_table: TileTable | None = None
_table_lock = threading.Lock()


def small_table() -> TileTable:
    """The searched table for ``2 <= m, n <= 19``, computed once on first use."""
    global _table
    if _table is None:
        with _table_lock:
            if _table is None:
                _table = build_table(SMALL_LIMIT, SearchConfig())
    return _table


def decide_tileable(m: int, n: int, min_side: int = 2) -> Verdict:
    if m < 1 or n < 1:
        raise ValueError(f"rectangle dimensions must be >= 1, got {m} x {n}")
    if min_side != 2:
        raise ValueError("closed-form rules exist only for min_side=2; use search instead")
    m, n = min(m, n), max(m, n)

    if m < 2:
        return Verdict(False, Rule.TOO_THIN)
    if m in (2, 4):
        return Verdict(n % 2 == 0, Rule.ROW2_OR_4)
    if m == 3:
        return Verdict(n % 3 == 0, Rule.ROW3)
    if m == 5:
        return Verdict(frobenius_rep(n) is not None, Rule.ROW5_FROBENIUS)
    if n <= SMALL_LIMIT:
        return Verdict(small_table()[m, n], Rule.SMALL_TABLE)
    return Verdict(True, Rule.LARGE_THEOREM)
