"""Tilings of integer rectangles by squares of side at least 2."""

from .core import (
    Failure,
    FailureKind,
    Placement,
    Rect,
    Tiling,
    TilingFormatError,
    VerificationReport,
    format_tiling,
    parse_tiling,
    transpose,
    verify,
)
from . import construct
from .search import SearchConfig, SearchInconclusive, build_table, find_tiling, is_tileable
from .theory import Verdict, decide_tileable, frobenius_rep

__all__ = [
    "Failure",
    "FailureKind",
    "Placement",
    "Rect",
    "SearchConfig",
    "SearchInconclusive",
    "Tiling",
    "TilingFormatError",
    "VerificationReport",
    "Verdict",
    "build_table",
    "construct",  # module; the builder is construct.construct
    "decide_tileable",
    "find_tiling",
    "format_tiling",
    "frobenius_rep",
    "is_tileable",
    "parse_tiling",
    "transpose",
    "verify",
]
