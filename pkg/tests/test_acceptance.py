"""Exit criteria. Each test tags itself so the run ends with one PASS/FAIL line per criterion."""

import random
import subprocess
import sys
import time

import pytest

from squaretile import construct as c
from squaretile.closure import find_exceptions, flatten, guillotine_closure, guillotine_witness
from squaretile.core import Rect, Tiling, parse_tiling, verify
from squaretile.search import build_table, is_tileable
from squaretile.theory import decide_tileable

ALLOWED = {2, 3, 5, 7}


@pytest.fixture
def criterion(record_property):
    def tag(name):
        record_property("criterion", name)

    return tag


def test_1_table_reproduction(criterion, table1):
    criterion("1 table reproduction: build_table(19) equals the published table")
    start = time.perf_counter()
    table = build_table(19)
    serial = time.perf_counter() - start
    assert table == table1  # all 324 cells
    assert len(table.tileable_pairs()) == 129
    assert serial < 300

    start = time.perf_counter()
    assert build_table(19, workers=2) == table1
    assert time.perf_counter() - start < 60


def test_2_oracle_equivalence(criterion):
    criterion("2 oracle equivalence: decide_tileable agrees with search")
    for m in range(2, 20):
        for n in range(2, 20):
            assert decide_tileable(m, n).tileable == is_tileable(Rect(m, n)), (m, n)
    for m in range(2, 11):
        for n in range(20, 25):
            assert decide_tileable(m, n).tileable == is_tileable(Rect(m, n)), (m, n)


def test_3_constructive_completeness(criterion):
    criterion("3 constructive completeness: construct covers every tileable m, n <= 60, plus ~10^4")
    for m in range(2, 61):
        for n in range(2, 61):
            t = c.construct(m, n)
            if not decide_tileable(m, n).tileable:
                assert t is None, (m, n)
                continue
            assert t is not None and verify(t).valid, (m, n)
            assert t.sides() <= ALLOWED, (m, n)

    start = time.perf_counter()
    big = c.construct(9999, 10001)
    report = verify(big)
    elapsed = time.perf_counter() - start
    assert report.valid and big.sides() <= ALLOWED
    assert elapsed < 30


def test_4_row_five_semigroup(criterion):
    criterion("4 row-5 semigroup: tile_5xn succeeds exactly on {5,6,10,11,12,15,16,17,18} and [20,40]")
    assert 5 * 6 - 5 - 6 == 19
    expected = {5, 6, 10, 11, 12, 15, 16, 17, 18} | set(range(20, 41))
    succeeded = set()
    for n in range(1, 41):
        try:
            t = c.tile_5xn(n)
        except ValueError:
            continue
        assert verify(t).valid
        succeeded.add(n)
    assert succeeded == expected


def test_5_guillotine_exception(criterion):
    criterion("5 guillotine exception: only 11x13 escapes edge joins")
    assert find_exceptions(19, {2, 3, 5, 7}) == [(11, 13)]
    for m, n in guillotine_closure(19, {2, 3, 5, 7}):
        assert verify(flatten(guillotine_witness(m, n, {2, 3, 5, 7}))).valid, (m, n)


def _mutate(t: Tiling, rng: random.Random) -> Tiling:
    rows = t.array.tolist()
    i = rng.randrange(len(rows))
    kind = rng.choice(["delete", "grow", "shift"])
    if kind == "delete":
        rows.pop(i)
    elif kind == "grow":
        rows[i][2] += 1
    else:
        x, y, s = rows[i]
        moves = [(1, 0), (0, 1)] + ([(-1, 0)] if x else []) + ([(0, -1)] if y else [])
        dx, dy = rng.choice(moves)
        rows[i] = [x + dx, y + dy, s]
    return Tiling(t.rect, rows)


def test_6_verifier_robustness(criterion):
    criterion("6 verifier robustness: 1000 random tilings accepted, every mutation rejected")
    rng = random.Random(20261016)
    pairs = [(m, n) for m in range(2, 41) for n in range(2, 41) if decide_tileable(m, n).tileable]
    false_rejects = false_accepts = 0
    for _ in range(1000):
        t = c.construct(*rng.choice(pairs))
        if not verify(t).valid:
            false_rejects += 1
        report = verify(_mutate(t, rng))
        if report.valid:
            false_accepts += 1
    assert (false_rejects, false_accepts) == (0, 0)


def test_7_determinism(criterion, data_dir, tmp_path):
    criterion("7 determinism: solve 11 13 is byte-identical across runs and matches the golden file")
    outputs = []
    for k in range(2):
        path = tmp_path / f"run{k}.tiling"
        proc = subprocess.run(
            [sys.executable, "-m", "squaretile", "solve", "11", "13", "-o", str(path)],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(path.read_bytes())
    golden = (data_dir / "11x13.tiling").read_bytes()
    assert outputs[0] == outputs[1] == golden
    assert verify(parse_tiling(golden.decode())).valid
