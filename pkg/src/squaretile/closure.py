"""Which rectangles can be built by gluing square tilings edge to edge.

Starting from single squares, two tilings that share a full edge length can
be placed side by side (``H``, widths add) or stacked (``V``, heights add).
The reachable dimensions are computed with a table over ``(height, width)``;
concrete layouts are only materialised when a witness is asked for.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .core import Rect, Tiling
from .search import SearchConfig, build_table

DEFAULT_SEEDS = frozenset({2, 3, 5, 7})


@dataclass(frozen=True)
class SeedSet:
    sides: frozenset[int] = DEFAULT_SEEDS

    def __post_init__(self) -> None:
        sides = frozenset(int(s) for s in self.sides)
        if any(s < 2 for s in sides):
            raise ValueError("seed squares must have side >= 2")
        object.__setattr__(self, "sides", sides)

    @classmethod
    def all_squares(cls, max_dim: int) -> SeedSet:
        return cls(frozenset(range(2, max_dim + 1)))


@dataclass(frozen=True)
class Square:
    side: int

    @property
    def m(self) -> int:
        return self.side

    @property
    def n(self) -> int:
        return self.side

    def __str__(self) -> str:
        return f"S{self.side}"


@dataclass(frozen=True)
class Join:
    """``H`` puts ``first`` left of ``second``; ``V`` puts ``first`` above it."""

    kind: str
    first: JoinTree
    second: JoinTree

    @property
    def m(self) -> int:
        return self.first.m if self.kind == "H" else self.first.m + self.second.m

    @property
    def n(self) -> int:
        return self.first.n + self.second.n if self.kind == "H" else self.first.n

    def __str__(self) -> str:
        return f"({self.kind} {self.first} {self.second})"


JoinTree = Union[Square, Join]


def _as_seeds(seeds: SeedSet | Iterable[int] | None) -> SeedSet:
    if seeds is None:
        return SeedSet()
    return seeds if isinstance(seeds, SeedSet) else SeedSet(frozenset(seeds))


def _reach(max_dim: int, seeds: SeedSet) -> list[list[tuple | None]]:
    """``how[h][w]`` says how ``h x w`` is first reached, or ``None``."""
    how: list[list[tuple | None]] = [[None] * (max_dim + 1) for _ in range(max_dim + 1)]
    for h in range(1, max_dim + 1):
        for w in range(1, max_dim + 1):
            if h == w and h in seeds.sides:
                how[h][w] = ("S",)
                continue
            # Both parts are strictly smaller, so one pass in this order
            # suffices. The larger first part is tried first.
            for c in range(w - 1, w - w // 2 - 1, -1):
                if how[h][c] and how[h][w - c]:
                    how[h][w] = ("H", c)
                    break
            else:
                for c in range(h - 1, h - h // 2 - 1, -1):
                    if how[c][w] and how[h - c][w]:
                        how[h][w] = ("V", c)
                        break
    return how


def guillotine_closure(max_dim: int, seeds: SeedSet | Iterable[int] | None = None) -> frozenset[tuple[int, int]]:
    """All ``(m, n)`` with ``m <= n <= max_dim`` buildable from the seed squares."""
    if max_dim < 2:
        raise ValueError("max_dim must be >= 2")
    how = _reach(max_dim, _as_seeds(seeds))
    return frozenset(
        (m, n) for m in range(1, max_dim + 1) for n in range(m, max_dim + 1) if how[m][n]
    )


def find_exceptions(
    max_dim: int, seeds: SeedSet | Iterable[int] | None = None, cfg: SearchConfig = SearchConfig()
) -> list[tuple[int, int]]:
    """Tileable ``(m, n)``, ``m <= n``, that edge-gluing from the seeds cannot reach."""
    closure = guillotine_closure(max_dim, seeds)
    table = build_table(max_dim, cfg)
    return [pair for pair in table.tileable_pairs() if pair not in closure]


def guillotine_witness(m: int, n: int, seeds: SeedSet | Iterable[int] | None = None) -> JoinTree | None:
    how = _reach(max(m, n), _as_seeds(seeds))

    def build(h: int, w: int) -> JoinTree:
        step = how[h][w]
        if step[0] == "S":
            return Square(h)
        kind, c = step
        if kind == "H":
            return Join("H", build(h, c), build(h, w - c))
        return Join("V", build(c, w), build(h - c, w))

    if m < 1 or n < 1 or not how[m][n]:
        return None
    return build(m, n)


def flatten(tree: JoinTree) -> Tiling:
    """Lay out a join tree as a concrete tiling."""
    rows: list[tuple[int, int, int]] = []
    todo = [(tree, 0, 0)]
    while todo:
        node, x, y = todo.pop()
        if isinstance(node, Square):
            rows.append((x, y, node.side))
        elif node.kind == "H":
            todo.append((node.first, x, y))
            todo.append((node.second, x + node.first.n, y))
        else:
            todo.append((node.first, x, y))
            todo.append((node.second, x, y + node.first.m))
    return Tiling(Rect(tree.m, tree.n), np.array(rows, dtype=np.int64))


_TOKEN = re.compile(r"\(|\)|[HV]|S\d+")


def parse_tree(text: str) -> JoinTree:
    """Read the ``(H a b)`` / ``(V a b)`` / ``S<k>`` form back."""
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != "".join(text.split()):
        raise ValueError(f"unexpected characters in join tree: {text!r}")
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("truncated join tree")
        pos += 1
        return tokens[pos - 1]

    def node() -> JoinTree:
        tok = take()
        if tok.startswith("S"):
            return Square(int(tok[1:]))
        if tok != "(":
            raise ValueError(f"unexpected token {tok!r}")
        kind = take()
        if kind not in ("H", "V"):
            raise ValueError(f"expected H or V, got {kind!r}")
        first, second = node(), node()
        if take() != ")":
            raise ValueError("expected ')'")
        edge = (first.m, second.m) if kind == "H" else (first.n, second.n)
        if edge[0] != edge[1]:
            raise ValueError(f"{kind} join of mismatched edges {edge[0]} and {edge[1]}")
        return Join(kind, first, second)

    tree = node()
    if pos != len(tokens):
        raise ValueError("trailing tokens after join tree")
    return tree
