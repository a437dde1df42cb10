import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from squaretile.core import (
    FailureKind,
    Placement,
    Rect,
    Tiling,
    TilingFormatError,
    format_tiling,
    parse_tiling,
    transpose,
    verify,
)

# Three 2x2 across the top, two 3x3 below.
FIVE_BY_SIX = [(0, 0, 2), (2, 0, 2), (4, 0, 2), (0, 2, 3), (3, 2, 3)]


def test_rect_validation_and_canonical():
    assert Rect(7, 3).canonical() == Rect(3, 7)
    assert Rect(3, 7).canonical() == Rect(3, 7)
    assert Rect(2, 5).area == 10
    with pytest.raises(ValueError):
        Rect(0, 5)
    with pytest.raises(TypeError):
        Rect(2.0, 3)


def test_single_square_is_valid():
    assert verify(Tiling(Rect(2, 2), [(0, 0, 2)])).valid


def test_five_by_six_block_is_valid():
    t = Tiling(Rect(5, 6), FIVE_BY_SIX)
    assert verify(t).valid
    assert t.side_counts() == {2: 3, 3: 2}


def test_missing_quadrant_is_a_gap():
    report = verify(Tiling(Rect(4, 4), [(0, 0, 2), (2, 0, 2), (0, 2, 2)]))
    assert not report.valid
    assert report.failure.kind is FailureKind.GAP
    assert report.failure.cell == (2, 2)


def test_overlap_names_both_squares():
    report = verify(Tiling(Rect(3, 3), [(0, 0, 3), (0, 0, 2)]))
    assert report.failure.kind is FailureKind.OVERLAP
    assert set(report.failure.placements) == {Placement(0, 0, 3), Placement(0, 0, 2)}
    assert report.failure.cell == (0, 0)


def test_out_of_bounds_and_small_side():
    report = verify(Tiling(Rect(4, 4), [(0, 0, 2), (2, 0, 2), (0, 2, 2), (3, 2, 2)]))
    assert report.failure.kind is FailureKind.OUT_OF_BOUNDS
    assert report.failure.placements == (Placement(3, 2, 2),)

    report = verify(Tiling(Rect(2, 2), [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]))
    assert report.failure.kind is FailureKind.SIDE_TOO_SMALL
    assert verify(Tiling(Rect(2, 2), [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]), min_side=1).valid


def test_degenerate_rectangles():
    assert not verify(Tiling(Rect(1, 5), [])).valid
    assert not verify(Tiling(Rect(1, 4), [(0, 0, 2)])).valid


def test_identical_squares_count_twice():
    # Duplicates collapse under naive fancy indexing; make sure they do not.
    base = [(x, y, 2) for y in range(0, 40, 2) for x in range(0, 40, 2)]
    report = verify(Tiling(Rect(40, 40), base + [(10, 10, 2)]))
    assert report.failure.kind is FailureKind.OVERLAP
    assert report.failure.cell == (10, 10)


def test_big_squares_paint_by_slice():
    t = Tiling(Rect(60, 120), [(0, 0, 60), (60, 0, 60)])
    assert verify(t).valid


def test_transpose_reflects():
    t = Tiling(Rect(2, 4), [(0, 0, 2), (2, 0, 2)])
    assert transpose(t) == Tiling(Rect(4, 2), [(0, 0, 2), (0, 2, 2)])


def test_transpose_of_valid_5x6():
    t = Tiling(Rect(5, 6), FIVE_BY_SIX)
    tt = transpose(t)
    assert tt.rect == Rect(6, 5)
    assert verify(t).valid and verify(tt).valid


def test_placements_sorted_by_row_then_column():
    t = Tiling(Rect(5, 6), list(reversed(FIVE_BY_SIX)))
    assert [(p.y, p.x) for p in t] == sorted((p.y, p.x) for p in t)
    assert t == Tiling(Rect(5, 6), FIVE_BY_SIX)
    assert hash(t) == hash(Tiling(Rect(5, 6), FIVE_BY_SIX))


def test_tiling_is_read_only():
    t = Tiling(Rect(2, 2), [(0, 0, 2)])
    with pytest.raises(ValueError):
        t.array[0, 0] = 1


# ---------------------------------------------------------------------------
# text format


def test_format_round_trip():
    t = Tiling(Rect(5, 6), FIVE_BY_SIX)
    text = format_tiling(t)
    assert text == "tiling 5 6\n0 0 2\n2 0 2\n4 0 2\n0 2 3\n3 2 3\n"
    assert parse_tiling(text) == t


@pytest.mark.parametrize(
    "text",
    [
        "tiling 2 2\n0 0 2",  # no final newline
        "tiling 2 2\n0 0 2\n\n",  # trailing blank line
        "tile 2 2\n0 0 2\n",
        "tiling 2\n0 0 2\n",
        "tiling 0 2\n",
        "tiling 4 4\n2 0 2\n0 0 2\n0 2 2\n2 2 2\n",  # unsorted
        "tiling 4 4\n0 0 2\n0 0 2\n",  # duplicate corner
        "tiling 2 2\n0  0 2\n",
        "tiling 2 2\n0 0 02\n",
        "tiling 2 2\n0 0 -2\n",
        "tiling 2 2\n0 0 0\n",
        "tiling 2 2\n0 0 ２\n",
    ],
)
def test_strict_parser_rejects(text):
    with pytest.raises(TilingFormatError):
        parse_tiling(text)


def test_lenient_parser_accepts_unsorted():
    t = parse_tiling("tiling 4 4\n2 0 2\n0 0 2\n", strict=False)
    assert len(t) == 2


# ---------------------------------------------------------------------------
# properties


def _grid_tiling(m, n, side):
    return Tiling(Rect(m, n), [(x, y, side) for y in range(0, m, side) for x in range(0, n, side)])


@st.composite
def valid_tilings(draw):
    # Uniform grids of one square size, either orientation.
    side = draw(st.sampled_from([2, 3, 5]))
    a = draw(st.integers(1, 5))
    b = draw(st.integers(1, 5))
    t = _grid_tiling(a * side, b * side, side)
    if draw(st.booleans()):
        t = transpose(t)
    return t


@settings(max_examples=60, deadline=None)
@given(valid_tilings(), st.randoms(use_true_random=False))
def test_verify_is_permutation_invariant(t, rnd):
    rows = t.array.tolist()
    rnd.shuffle(rows)
    shuffled = Tiling(t.rect, rows)
    assert verify(shuffled).valid == verify(t).valid
    assert int((t.array[:, 2] ** 2).sum()) == t.rect.area


@settings(max_examples=60, deadline=None)
@given(valid_tilings(), st.data())
def test_mutations_are_rejected(t, data):
    rows = t.array.tolist()
    i = data.draw(st.integers(0, len(rows) - 1))

    deleted = rows[:i] + rows[i + 1:]
    report = verify(Tiling(t.rect, deleted))
    assert report.failure.kind is FailureKind.GAP

    grown = [list(r) for r in rows]
    grown[i][2] += 1
    report = verify(Tiling(t.rect, grown))
    assert report.failure.kind in (FailureKind.OVERLAP, FailureKind.OUT_OF_BOUNDS)


@settings(max_examples=60, deadline=None)
@given(valid_tilings(), st.data())
def test_transpose_preserves_verdict(t, data):
    rows = t.array.tolist()
    if data.draw(st.booleans()):
        rows.pop(data.draw(st.integers(0, len(rows) - 1)))
    broken = Tiling(t.rect, rows)
    assert verify(transpose(broken)).valid == verify(broken).valid
    assert transpose(transpose(broken)) == broken


def test_large_grid_verifies():
    m, n = 2000, 3000
    ys, xs = np.mgrid[0:m:2, 0:n:2]
    arr = np.stack([xs.ravel(), ys.ravel(), np.full(xs.size, 2)], axis=1)
    t = Tiling(Rect(m, n), arr)
    assert verify(t).valid
    gapped = Tiling(Rect(m, n), np.delete(arr, random.Random(1).randrange(len(arr)), axis=0))
    assert verify(gapped).failure.kind is FailureKind.GAP
