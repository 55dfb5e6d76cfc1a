"""Tests for the rectangle-counting engine and the closed-grid oracle.

The oracle values are brute-force rectangle counts on closed grids; the
2x2 and 5x5 tables below are frozen from an independent hand check of
the rank-2 and rank-48 computations and the Alexander polynomial match.
The engine itself is validated by the crosscheck against the strand
calculus, which returns discrepancies as data.
"""

import itertools

import pytest

from tanglefloer import ctgen, ctmaps, gridengine as ge
from tanglefloer.tangle import Decomposition

UNKNOT_2 = "grid 2\nX: 0 1\nO: 1 0\n"
TREFOIL_5 = "grid 5\nX: 0 1 2 3 4\nO: 2 3 4 0 1\n"

# Frozen 5x5 closed-grid table: three homology classes convolved with
# four rank-two steps, total 48.
TREFOIL_5_TABLE = {
    (2, 2): 1, (1, 0): 5, (0, -2): 11, (-1, -4): 14,
    (-2, -6): 11, (-3, -8): 5, (-4, -10): 1,
}


def test_parse_grid():
    n, xs, os_ = ge.parse_grid(TREFOIL_5)
    assert n == 5
    assert list(xs) == [0, 1, 2, 3, 4]
    assert list(os_) == [2, 3, 4, 0, 1]


def test_parse_grid_errors():
    with pytest.raises(ValueError):
        ge.parse_grid("grid 2\nX: 0 0\nO: 1 0\n")
    with pytest.raises(ValueError):
        ge.parse_grid("X: 0 1\nO: 1 0\n")
    with pytest.raises(ValueError):
        ge.parse_grid("grid 3\nX: 0 1 2\nO: 2 0\n")


def test_unknot_grid_rank_two():
    n, xs, os_ = ge.parse_grid(UNKNOT_2)
    table = ge.classical_grid_tilde(n, xs, os_)
    assert table == {(0, 0): 1, (-1, -2): 1}


def test_trefoil_grid_rank_48():
    n, xs, os_ = ge.parse_grid(TREFOIL_5)
    table = ge.classical_grid_tilde(n, xs, os_)
    assert sum(table.values()) == 48
    assert table == TREFOIL_5_TABLE


def test_euler_characteristic_matches_alexander():
    n, xs, os_ = ge.parse_grid(UNKNOT_2)
    assert ge.euler_matches_alexander(ge.classical_grid_tilde(n, xs, os_),
                                      {0: 1}, n)
    n, xs, os_ = ge.parse_grid(TREFOIL_5)
    assert ge.euler_matches_alexander(ge.classical_grid_tilde(n, xs, os_),
                                      {1: 1, 0: -1, -1: 1}, n)


def test_euler_mismatch_detected():
    n, xs, os_ = ge.parse_grid(TREFOIL_5)
    table = ge.classical_grid_tilde(n, xs, os_)
    assert not ge.euler_matches_alexander(table, {0: 1}, n)


@pytest.mark.parametrize("word,events", [
    ("", (("cup", 1, "-+"),)),
    ("", (("cup", 1, "+-"),)),
    ("-+", (("cap", 1),)),
    ("-+", (("xo", 1),)),
    ("+-", (("xu", 1),)),
    ("--", (("id",),)),
    ("", (("cup", 1, "-+"), ("cap", 1))),
])
def test_crosscheck_small(word, events):
    assert ge.crosscheck(Decomposition(word, events)) == []


def test_internal_slices_partition_the_map():
    """Slice-restricted calls are disjoint and cover the full map."""
    dec = Decomposition("-+", (("xo", 1), ("cap", 1)))
    grid = ge.build_heegaard(dec)
    k = len(dec.columns)
    parts = [(tag, j) for j in range(k) for tag in ("xm", "xp", "mix")]
    parts += [("wall", j) for j in range(k - 1)]
    for gen in ctgen.enumerate_generators(dec)[::7]:
        for fn, arg in ((ctmaps.internal_differential, dec),
                        (ge.internal_rectangle_map, grid)):
            full = fn(arg, gen)
            union = set()
            for p in parts:
                piece = fn(arg, gen, parts={p})
                assert not union & piece
                union |= piece
            assert union == full


def test_enumerate_decompositions_respects_width():
    jobs = ge.enumerate_decompositions(1, 2)
    for word, events in jobs:
        dec = Decomposition(word, events)
        assert len(word) <= 2 and len(dec.right_signs) <= 2
    assert ("", (("cup", 1, "-+"),)) in jobs
    assert all(len(ev) == 1 for _, ev in jobs)


def test_sweep_smoke():
    assert ge.crosscheck_sweep(1, 1, threads=1) == []
