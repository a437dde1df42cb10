"""Command-line front end.

Exit codes: 0 success / tileable / valid, 1 not tileable / no tiling /
invalid, 2 usage or input error, 3 search gave up at its node limit.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from pathlib import Path

from . import closure, construct as construct_mod, theory
from .core import Rect, TilingFormatError, format_tiling, parse_tiling, verify
from .render import RenderStyle, to_ascii, to_svg
from .search import SearchConfig, SearchInconclusive, SizeOrder, TileTable, build_table, find_tiling

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
CHECK = "✓"
CELL_WIDTH = 3


class UsageError(Exception):
    pass


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        write_atomic(out, text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _positive(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise UsageError(f"dimensions must be >= 1, got {m} x {n}")


# ---------------------------------------------------------------------------
# table text


def format_table_grid(table: TileTable) -> str:
    """Checkmark grid laid out like the published table: rows m, columns n."""
    dims = range(2, table.max_dim + 1)
    lines = ["m\\n".ljust(CELL_WIDTH) + "".join(f"{n:>{CELL_WIDTH}}" for n in dims)]
    for m in dims:
        cells = "".join(f"{CHECK if table[m, n] else '':>{CELL_WIDTH}}" for n in dims)
        lines.append((f"{m:>{CELL_WIDTH}}" + cells).rstrip())
    return "\n".join(lines) + "\n"


def parse_table_grid(text: str, min_side: int = 2) -> TileTable:
    lines = text.rstrip("\n").split("\n")
    cols = [int(v) for v in lines[0][CELL_WIDTH:].split()]
    max_dim = cols[-1] if cols else 1
    if cols != list(range(2, max_dim + 1)) or len(lines) != len(cols) + 1:
        raise ValueError("malformed table grid")
    rows = []
    for expected, line in zip(cols, lines[1:]):
        if int(line[:CELL_WIDTH]) != expected:
            raise ValueError(f"row label {line[:CELL_WIDTH]!r}, expected {expected}")
        body = line[CELL_WIDTH:].ljust(CELL_WIDTH * len(cols))
        cells = [body[i * CELL_WIDTH:(i + 1) * CELL_WIDTH].strip() for i in range(len(cols))]
        if set(cells) - {"", CHECK}:
            raise ValueError(f"unexpected cell in row {expected}")
        rows.append(tuple(c == CHECK for c in cells))
    return TileTable(max_dim, min_side, tuple(rows))


def _table(max_dim: int, min_side: int, engine: str, workers: int | None) -> TileTable:
    cfg = SearchConfig(min_side=min_side)
    if engine == "search" or (engine == "auto" and (max_dim <= theory.SMALL_LIMIT or min_side != 2)):
        return build_table(max_dim, cfg, workers=workers)
    if min_side != 2:
        raise UsageError("--engine theory only supports --min-side 2")
    # decide_tileable answers the m, n <= 19 corner from its own searched table.
    dims = range(2, max_dim + 1)
    cells = tuple(tuple(theory.decide_tileable(m, n).tileable for n in dims) for m in dims)
    return TileTable(max_dim, min_side, cells)


# ---------------------------------------------------------------------------
# commands


def cmd_decide(args) -> int:
    _positive(args.m, args.n)
    verdict = theory.decide_tileable(args.m, args.n)
    print(verdict)
    return EXIT_OK if verdict.tileable else EXIT_NO


def cmd_solve(args) -> int:
    _positive(args.m, args.n)
    if args.min_side < 2:
        raise UsageError("--min-side must be >= 2")
    if args.engine == "construct":
        if args.min_side != 2:
            raise UsageError("--engine construct only supports --min-side 2")
        tiling = construct_mod.construct(args.m, args.n)
    else:
        cfg = SearchConfig(min_side=args.min_side, size_order=args.order, node_limit=args.node_limit)
        try:
            tiling = find_tiling(Rect(args.m, args.n), cfg)
        except SearchInconclusive as exc:
            print(f"inconclusive: {exc}", file=sys.stderr)
            return EXIT_INCONCLUSIVE
    if tiling is None:
        print("no tiling")
        return EXIT_NO
    _emit(format_tiling(tiling), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        tiling = parse_tiling(_read(args.file))
    except TilingFormatError as exc:
        print(f"MALFORMED {exc}")
        return EXIT_USAGE
    report = verify(tiling, args.min_side)
    print(report)
    return EXIT_OK if report.valid else EXIT_NO


def cmd_render(args) -> int:
    try:
        tiling = parse_tiling(_read(args.file), strict=False)
    except TilingFormatError as exc:
        print(f"MALFORMED {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.ascii:
        _emit(to_ascii(tiling), args.output)
    else:
        _emit(to_svg(tiling, RenderStyle(cell_px=args.cell_px)), args.output)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.max < 2:
        raise UsageError("--max must be >= 2")
    table = _table(args.max, args.min_side, args.engine, args.workers)
    _emit(table.to_text() if args.format == "raw" else format_table_grid(table), args.output)
    return EXIT_OK


def _seeds(args) -> closure.SeedSet:
    if args.all_squares:
        return closure.SeedSet.all_squares(args.max)
    try:
        sides = [int(s) for s in args.seeds.replace(",", " ").split()]
        return closure.SeedSet(frozenset(sides))
    except ValueError as exc:
        raise UsageError(f"bad --seeds: {exc}") from None


def cmd_closure(args) -> int:
    if args.max < 2:
        raise UsageError("--max must be >= 2")
    seeds = _seeds(args)
    if args.witness:
        m, n = args.witness
        tree = closure.guillotine_witness(m, n, seeds)
        print(tree if tree is not None else f"{m}x{n} is not reachable by joins")
        return EXIT_OK if tree is not None else EXIT_NO
    exceptions = closure.find_exceptions(args.max, seeds)
    listed = ", ".join(f"{m}x{n}" for m, n in exceptions) or "none"
    print(f"exceptions: {listed}")
    return EXIT_OK


def figure_pairs(max_dim: int = theory.SMALL_LIMIT) -> list[tuple[int, int]]:
    """Tileable coprime ``m < n``; common factors have the trivial grid tiling."""
    table = theory.small_table() if max_dim == theory.SMALL_LIMIT else build_table(max_dim)
    return [(m, n) for m, n in table.tileable_pairs() if m < n and math.gcd(m, n) == 1]


def cmd_figures(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    style = RenderStyle(cell_px=args.cell_px)
    pairs = figure_pairs()
    for m, n in pairs:
        tiling = find_tiling(Rect(m, n))
        write_atomic(outdir / f"{m}x{n}.tiling", format_tiling(tiling))
        write_atomic(outdir / f"{m}x{n}.svg", to_svg(tiling, style))
    print(f"wrote {len(pairs)} tilings to {outdir}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squaretile", description="Tile integer rectangles with squares of side at least 2."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="say whether m x n is tileable, and by which rule")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("solve", help="produce a tiling file")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--min-side", type=int, default=2)
    p.add_argument("--engine", choices=["search", "construct"], default="search")
    p.add_argument("--order", choices=[o.value for o in SizeOrder], default=SizeOrder.ASCENDING.value)
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a tiling file")
    p.add_argument("file")
    p.add_argument("--min-side", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a tiling file as SVG or ASCII")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--ascii", action="store_true")
    p.add_argument("--cell-px", type=int, default=20)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("table", help="print the tileability table")
    p.add_argument("--max", type=int, default=theory.SMALL_LIMIT)
    p.add_argument("--min-side", type=int, default=2)
    p.add_argument("--engine", choices=["auto", "search", "theory"], default="auto")
    p.add_argument("--format", choices=["grid", "raw"], default="grid")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("closure", help="list tileable rectangles not reachable by edge joins")
    p.add_argument("--max", type=int, default=theory.SMALL_LIMIT)
    p.add_argument("--seeds", default="2,3,5,7")
    p.add_argument("--all-squares", action="store_true")
    p.add_argument("--witness", type=int, nargs=2, metavar=("M", "N"))
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("figures", help="write SVGs of the coprime tilings up to 19x19")
    p.add_argument("--outdir", required=True)
    p.add_argument("--cell-px", type=int, default=20)
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
