"""Tests for the pairing of sliced modules against direct concatenation.

Small pairs compare graded homology through the full pipeline; the
slice-by-slice comparison is exercised on the same pairs plus a larger
one, and its sweep driver on the narrow family.
"""

import pytest

from tanglefloer import homalg, pairing
from tanglefloer.tangle import Decomposition

PAIRS = [
    ("", ("cup", 1, "-+"), ("cap", 1)),
    ("", ("cup", 1, "+-"), ("cap", 1)),
    ("-", ("cup", 1, "-+"), ("cap", 2)),
    ("-+", ("xo", 1), ("cap", 1)),
    ("-+", ("cap", 1), ("cup", 1, "-+")),
    ("-", ("id",), ("id",)),
]


def hat_internal_homology(s):
    complex_ = homalg.internal_complex(homalg.hat_structure(s))
    return homalg.homology_table(complex_, 0)


@pytest.mark.parametrize("word,e1,e2", PAIRS)
def test_slice_comparison_agrees(word, e1, e2):
    assert pairing.pairing_report(word, e1, e2) == []


@pytest.mark.parametrize("word,e1,e2", PAIRS)
def test_hat_homology_matches_through_the_pipeline(word, e1, e2):
    concat = Decomposition(word, (e1, e2))
    left = Decomposition(word, (e1,))
    right = Decomposition(left.right_signs, (e2,))
    paired = homalg.box_tensor(homalg.assemble(left), homalg.assemble(right))
    direct = homalg.assemble(concat)
    assert hat_internal_homology(paired) == hat_internal_homology(direct)


def test_wall_slices_catch_corruption(monkeypatch):
    monkeypatch.setattr(pairing.ctmaps, "m2",
                        lambda *a, **k: set(), raising=True)
    report = pairing.pairing_report("", ("cup", 1, "-+"), ("cap", 1))
    assert any(r[0] == "wall" for r in report)


def test_pairing_sweep_narrow():
    assert pairing.pairing_sweep(1, threads=1) == []
