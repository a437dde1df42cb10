"""SVG and ASCII pictures of tilings."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from xml.sax.saxutils import quoteattr

from .core import Tiling

DEFAULT_PALETTE = {2: "purple", 3: "teal", 5: "yellow", 7: "red"}
FALLBACK_COLOR = "gray"
ASCII_LETTERS = string.ascii_uppercase + string.ascii_lowercase


@dataclass(frozen=True)
class RenderStyle:
    cell_px: int = 20
    palette: dict[int, str] = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    stroke: str = "black"
    stroke_width: float = 1.0
    background: str = "white"

    def __post_init__(self) -> None:
        if self.cell_px < 1:
            raise ValueError("cell_px must be positive")

    def color(self, side: int) -> str:
        return self.palette.get(side, FALLBACK_COLOR)


def to_svg(t: Tiling, style: RenderStyle = RenderStyle()) -> str:
    """One background rect for the whole rectangle plus one rect per square."""
    px = style.cell_px
    width, height = t.rect.n * px, t.rect.m * px
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'  <rect class="background" x="0" y="0" width="{width}" height="{height}" '
        f'fill={quoteattr(style.background)} stroke={quoteattr(style.stroke)} '
        f'stroke-width="{style.stroke_width:g}"/>',
    ]
    for x, y, side in t.array.tolist():
        out.append(
            f'  <rect class="square s{side}" x="{x * px}" y="{y * px}" width="{side * px}" '
            f'height="{side * px}" fill={quoteattr(style.color(side))} '
            f'stroke={quoteattr(style.stroke)} stroke-width="{style.stroke_width:g}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def to_ascii(t: Tiling) -> str:
    """Letters cycle per square; uncovered cells show as ``.``.

    Later squares overwrite earlier ones and cells outside the rectangle are
    dropped, so broken tilings still draw.
    """
    m, n = t.rect.m, t.rect.n
    rows = [["."] * n for _ in range(m)]
    for i, (x, y, side) in enumerate(t.array.tolist()):
        letter = ASCII_LETTERS[i % len(ASCII_LETTERS)]
        for r in range(y, min(y + side, m)):
            for c in range(x, min(x + side, n)):
                rows[r][c] = letter
    return "\n".join("".join(r) for r in rows) + "\n"
