"""Sliced tangle decompositions.

A decomposition is a sign word on the left wall plus a list of events,
one per vertical slice: cup, cap, crossing (resolved in the right or left
half of the slice), or an identity slice. Each slice is cut once more down
the middle, and every strand piece in a half-slice becomes a dashed
segment carrying a marking: a variable-carrying marking when the strand
piece points with the slicing direction, a blocking marking otherwise.

Heights are doubled so that strand points sit at even integers and marked
wall points at odd integers; this keeps every comparison strict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PLUS = "+"
MINUS = "-"

EVENT_KINDS = ("cup", "cap", "xo", "xu", "id")


@dataclass(frozen=True)
class Segment:
    """One dashed strand piece in a half-slice.

    Heights are doubled wall coordinates: `left_h` on the wall toward the
    left boundary of the half, `right_h` on the wall toward the right.
    `is_var` marks pieces oriented with the slicing direction of the half;
    those carry the variable `uidx` (1-based, global).
    """
    left_h: int
    right_h: int
    is_var: bool
    uidx: int | None


@dataclass
class Column:
    """One slice: marked-point counts and the segments of both halves."""
    kind: str
    pos: int | None
    in_signs: str
    out_signs: str
    na_left: int        # marked points on the left wall of the slice
    nb: int             # marked points on the middle wall
    na_right: int       # marked points on the right wall
    left: list = field(default_factory=list)
    right: list = field(default_factory=list)


def _gap(height):
    """Index of the marked-point gap containing an even strand height."""
    assert height % 2 == 0 and height >= 2
    return height // 2 - 1


def seg_gaps(seg):
    return _gap(seg.left_h), _gap(seg.right_h)


class Decomposition:
    """A validated sliced tangle with global variable numbering."""

    def __init__(self, left_signs, events):
        self.left_signs = left_signs
        self.events = list(events)
        self.sign_words = [left_signs]
        self.columns = []
        word = left_signs
        for event in self.events:
            column, word = _build_column(word, event)
            self.columns.append(column)
            self.sign_words.append(word)
        self.right_signs = word
        self._number_variables()

    def _number_variables(self):
        uidx = 0
        for col in self.columns:
            new_left = []
            for seg in sorted(col.left, key=lambda s: min(s.left_h, s.right_h)):
                if seg.is_var:
                    uidx += 1
                    seg = Segment(seg.left_h, seg.right_h, True, uidx)
                new_left.append(seg)
            col.left = new_left
            new_right = []
            for seg in sorted(col.right, key=lambda s: min(s.left_h, s.right_h)):
                if seg.is_var:
                    uidx += 1
                    seg = Segment(seg.left_h, seg.right_h, True, uidx)
                new_right.append(seg)
            col.right = new_right
        self.n_vars = uidx

    @property
    def k(self):
        return len(self.columns)

    @property
    def left_closed(self):
        return self.left_signs == ""

    @property
    def right_closed(self):
        return self.right_signs == ""

    @property
    def closed(self):
        return self.left_closed and self.right_closed

    def variable_segments(self):
        out = {}
        for j, col in enumerate(self.columns, start=1):
            for side_name, side in (("L", col.left), ("R", col.right)):
                for seg in side:
                    if seg.is_var:
                        out[seg.uidx] = (j, side_name, seg)
        return out


def _straight_half(heights_in, heights_out, orient):
    segs = []
    for h_in, h_out, lr in zip(heights_in, heights_out, orient):
        segs.append((h_in, h_out, lr))
    return segs


def _build_column(word, event):
    kind = event[0]
    w = len(word)
    if kind == "cup":
        _, pos, pair = event
        if not 1 <= pos <= w + 1:
            raise ValueError(f"cup position {pos} out of range for width {w}")
        if pair not in ("+-", "-+"):
            raise ValueError(f"cup orientation must be '+-' or '-+', got {pair!r}")
        out = word[:pos - 1] + pair + word[pos - 1:]
        col = Column("cup", pos, word, out, w + 1, w + 2, w + 3)
        for i in range(1, w + 1):
            b = 2 * i if i < pos else 2 * i + 2
            r = 2 * i if i < pos else 2 * i + 4
            lr = word[i - 1] == PLUS
            col.left.append(Segment(2 * i, b, not lr, None))
            col.right.append(Segment(b, r, lr, None))
        # The two new arms share the tangency point on the middle wall.
        s_low, s_high = pair
        col.right.append(Segment(2 * pos, 2 * pos, s_low == PLUS, None))
        col.right.append(Segment(2 * pos, 2 * pos + 2, s_high == PLUS, None))
        return col, out
    if kind == "cap":
        _, pos = event
        if not 1 <= pos <= w - 1:
            raise ValueError(f"cap position {pos} out of range for width {w}")
        if word[pos - 1] == word[pos]:
            raise ValueError(f"cap at {pos} joins equally oriented strands")
        out = word[:pos - 1] + word[pos + 1:]
        col = Column("cap", pos, word, out, w + 1, w, w - 1)
        for i in range(1, w + 1):
            if i in (pos, pos + 1):
                continue
            b = 2 * i if i < pos else 2 * i - 2
            r = 2 * i if i < pos else 2 * i - 4
            lr = word[i - 1] == PLUS
            col.left.append(Segment(2 * i, b, not lr, None))
            col.right.append(Segment(b, r, lr, None))
        # Arms end at the shared tangency point on the middle wall.
        col.left.append(Segment(2 * pos, 2 * pos, word[pos - 1] != PLUS, None))
        col.left.append(Segment(2 * pos + 2, 2 * pos, word[pos] != PLUS, None))
        return col, out
    if kind in ("xo", "xu"):
        _, pos = event
        if not 1 <= pos <= w - 1:
            raise ValueError(f"crossing position {pos} out of range for width {w}")
        out = word[:pos - 1] + word[pos] + word[pos - 1] + word[pos + 1:]
        col = Column(kind, pos, word, out, w + 1, w + 1, w + 1)
        for i in range(1, w + 1):
            if kind == "xo":
                b = 2 * i
                r = 2 * i
                if i == pos:
                    r = 2 * i + 2
                elif i == pos + 1:
                    r = 2 * i - 2
            else:
                b = 2 * i
                if i == pos:
                    b = 2 * i + 2
                elif i == pos + 1:
                    b = 2 * i - 2
                r = b
            lr = word[i - 1] == PLUS
            col.left.append(Segment(2 * i, b, not lr, None))
            col.right.append(Segment(b, r, lr, None))
        return col, out
    if kind == "id":
        col = Column("id", None, word, word, w + 1, w + 1, w + 1)
        for i in range(1, w + 1):
            lr = word[i - 1] == PLUS
            col.left.append(Segment(2 * i, 2 * i, not lr, None))
            col.right.append(Segment(2 * i, 2 * i, lr, None))
        return col, word
    raise ValueError(f"unknown event kind {kind!r}")


# --- text format --------------------------------------------------------

def parse_text(text):
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or not lines[0].startswith("signs:"):
        raise ValueError("first line must be 'signs: <word>'")
    word = lines[0][len("signs:"):].strip()
    if any(c not in (PLUS, MINUS) for c in word):
        raise ValueError(f"bad sign word {word!r}")
    events = []
    for line in lines[1:]:
        parts = line.split()
        kind = parts[0]
        if kind == "cup":
            if len(parts) != 3:
                raise ValueError(f"cup takes a position and an orientation: {line!r}")
            events.append(("cup", int(parts[1]), parts[2]))
        elif kind in ("cap", "xo", "xu"):
            if len(parts) != 2:
                raise ValueError(f"{kind} takes a position: {line!r}")
            events.append((kind, int(parts[1])))
        elif kind == "id":
            if len(parts) != 1:
                raise ValueError(f"id takes no arguments: {line!r}")
            events.append(("id",))
        else:
            raise ValueError(f"unknown event {kind!r}")
    return Decomposition(word, events)


def serialize_text(dec):
    lines = [f"signs: {dec.left_signs}"]
    for event in dec.events:
        lines.append(" ".join(str(p) for p in event))
    return "\n".join(lines) + "\n"


def parse_json(text):
    data = json.loads(text)
    events = []
    for e in data["events"]:
        if e["kind"] == "cup":
            events.append(("cup", int(e["pos"]), e["orientation"]))
        elif e["kind"] in ("cap", "xo", "xu"):
            events.append((e["kind"], int(e["pos"])))
        elif e["kind"] == "id":
            events.append(("id",))
        else:
            raise ValueError(f"unknown event {e['kind']!r}")
    return Decomposition(data["signs"], events)


def serialize_json(dec):
    events = []
    for event in dec.events:
        if event[0] == "cup":
            events.append({"kind": "cup", "pos": event[1], "orientation": event[2]})
        elif event[0] == "id":
            events.append({"kind": "id"})
        else:
            events.append({"kind": event[0], "pos": event[1]})
    return json.dumps({"signs": dec.left_signs, "events": events}, indent=2) + "\n"


# --- stock decompositions -----------------------------------------------

def unknot():
    return Decomposition("", [("cup", 1, "-+"), ("cap", 1)])


def trefoil(kind="xo"):
    return Decomposition("", [
        ("cup", 1, "-+"),
        ("cup", 2, "+-"),
        (kind, 2), (kind, 2), (kind, 2),
        ("cap", 2),
        ("cap", 1),
    ])
