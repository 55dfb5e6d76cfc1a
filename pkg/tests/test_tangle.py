"""Tests for sliced tangle decompositions and their two file formats."""

import pytest

from tanglefloer import tangle


def test_sign_word_propagation():
    t = tangle.trefoil()
    assert t.sign_words == ["", "-+", "-+-+", "--++", "-+-+", "--++", "-+", ""]
    assert t.left_signs == "" and t.right_signs == ""
    assert t.closed


def test_unknot_shape():
    u = tangle.unknot()
    assert u.sign_words == ["", "-+", ""]
    assert u.k == 2
    assert u.n_vars == 2


def test_variable_numbering_is_global_and_sequential():
    t = tangle.trefoil()
    assert t.n_vars == 20
    segs = t.variable_segments()
    assert sorted(segs) == list(range(1, 21))
    # Variables are numbered column by column, left half before right half.
    cols = [segs[u][0] for u in sorted(segs)]
    assert cols == sorted(cols)


def test_marked_point_counts():
    cup = tangle.Decomposition("-+", [("cup", 2, "+-")])
    col = cup.columns[0]
    assert (col.na_left, col.nb, col.na_right) == (3, 4, 5)
    cap = tangle.Decomposition("-+", [("cap", 1)])
    col = cap.columns[0]
    assert (col.na_left, col.nb, col.na_right) == (3, 2, 1)
    for kind in ("xo", "xu"):
        x = tangle.Decomposition("-+", [(kind, 1)])
        col = x.columns[0]
        assert (col.na_left, col.nb, col.na_right) == (3, 3, 3)


def test_crossing_swaps_signs():
    x = tangle.Decomposition("-+", [("xo", 1)])
    assert x.right_signs == "+-"
    x = tangle.Decomposition("-+", [("xu", 1)])
    assert x.right_signs == "+-"


def test_cup_orientation_validation():
    with pytest.raises(ValueError):
        tangle.Decomposition("", [("cup", 1, "++")])
    with pytest.raises(ValueError):
        tangle.Decomposition("", [("cup", 2, "-+")])


def test_cap_validation():
    with pytest.raises(ValueError):
        tangle.Decomposition("--", [("cap", 1)])
    with pytest.raises(ValueError):
        tangle.Decomposition("-+", [("cap", 2)])


def test_unknown_event_rejected():
    with pytest.raises(ValueError):
        tangle.Decomposition("", [("twist", 1)])


def test_text_roundtrip():
    t = tangle.trefoil()
    text = tangle.serialize_text(t)
    back = tangle.parse_text(text)
    assert back.events == t.events
    assert back.left_signs == t.left_signs


def test_text_comments_and_blanks():
    dec = tangle.parse_text("""
    # a one-slice tangle
    signs: -+

    xo 1  # swap the strands
    """)
    assert dec.events == [("xo", 1)]


def test_text_errors():
    with pytest.raises(ValueError):
        tangle.parse_text("xo 1\n")
    with pytest.raises(ValueError):
        tangle.parse_text("signs: -*\n")
    with pytest.raises(ValueError):
        tangle.parse_text("signs: -+\ncup 1\n")
    with pytest.raises(ValueError):
        tangle.parse_text("signs: -+\nid 3\n")


def test_json_roundtrip():
    t = tangle.trefoil("xu")
    back = tangle.parse_json(tangle.serialize_json(t))
    assert back.events == t.events
    assert back.left_signs == t.left_signs


def test_segment_orientation_marking():
    # Left-half pieces carry variables when the strand points leftward.
    dec = tangle.Decomposition("-+", [("id",)])
    col = dec.columns[0]
    assert [s.is_var for s in col.left] == [True, False]
    assert [s.is_var for s in col.right] == [False, True]
    assert dec.n_vars == 2
