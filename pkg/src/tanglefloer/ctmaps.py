"""Structure maps of the tangle bimodule, strand-calculus route.

Every map term exchanges two strand ends at a wall, resolves or introduces
one crossing inside a half-slice, or slides strand ends through a boundary
wall. Each candidate move has a content region; strand points and blocking
marks inside the region kill the term, variable-carrying marks contribute
variable factors. Marked-point ranks sit at even coordinates and gaps at
odd coordinates so that every comparison is strict.

The Maslov drop law (each differential term lowers the first grading by
exactly one and preserves the second) is asserted on every emitted term
and used to pick the orientation of wall exchanges between two slices.
"""

from __future__ import annotations

import itertools

from . import ctgen
from .algebra import u_one, u_mul, u_power, pb_make, u_vars
from .algebra import bigrading as alg_bigrading
from .tangle import seg_gaps


def flip_signs(word):
    return "".join("+" if c == "-" else "-" for c in word)


class _Objects:
    """Points and marks of one slice, in doubled gap/rank coordinates."""

    def __init__(self, col, xm, xp):
        self.l_pts = [(2 * t, 2 * s) for s, t in xm]       # (col, row)
        self.r_pts = [(2 * s, 2 * t) for s, t in xp]
        self.l_marks = []
        for seg in col.left:
            ga, gb = seg_gaps(seg)
            self.l_marks.append((2 * gb + 1, 2 * ga + 1, seg.is_var, seg.uidx))
        self.r_marks = []
        for seg in col.right:
            gb, ga = seg_gaps(seg)
            self.r_marks.append((2 * gb + 1, 2 * ga + 1, seg.is_var, seg.uidx))


def _between(v, a, b):
    lo, hi = (a, b) if a < b else (b, a)
    return lo < v < hi


def _content(points, marks):
    """None when blocked, else the variable monomial of the region."""
    if points:
        return None
    mon = u_one()
    for _, _, is_var, uidx in marks:
        if not is_var:
            return None
        mon = u_mul(mon, u_power(uidx, 1))
    return mon


def _sel(objs, pts_attr, marks_attr, col_pred, row_pred):
    pts = [p for p in getattr(objs, pts_attr) if col_pred(p[0]) and row_pred(p[1])]
    marks = [m for m in getattr(objs, marks_attr) if col_pred(m[0]) and row_pred(m[1])]
    return pts, marks


def _replace_half(gen, cj, xm=None, xp=None):
    halves = list(gen)
    old_m, old_p = halves[cj]
    halves[cj] = (
        tuple(sorted(xm)) if xm is not None else old_m,
        tuple(sorted(xp)) if xp is not None else old_p,
    )
    return tuple(halves)


_Grader = ctgen.Grader


# --- internal differential ----------------------------------------------

def internal_differential(dec, gen, grader=None, parts=None):
    """Terms (variable monomial, target) of the slice-internal differential.

    `parts` optionally restricts the computation to named term families:
    ("xm", j) and ("xp", j) for exchanges among one wall's strand ends of
    slice j, ("mix", j) for exchanges between the two walls of slice j,
    and ("wall", j) for exchanges across the wall between slices j and
    j + 1.  Each family is a function of the slice occupancies it names.
    """
    grader = grader or _Grader(dec)
    parts = None if parts is None else set(parts)
    objs = [_Objects(col, xm, xp) for col, (xm, xp) in zip(dec.columns, gen)]
    gx = grader(gen)
    terms = {}

    def emit(mon, y, check=True):
        if check:
            gy = grader(y)
            deg = sum(e for _, e in mon)
            assert gy[0] - 2 * deg == gx[0] - 1, (gen, y, mon)
            assert gy[1] - 2 * deg == gx[1], (gen, y, mon)
        key = (mon, y)
        terms[key] = terms.get(key, 0) ^ 1

    def try_emit(mon, y):
        """Emit only when the Maslov drop law holds; used to orient moves."""
        gy = grader(y)
        deg = sum(e for _, e in mon)
        if gy[0] - 2 * deg == gx[0] - 1 and gy[1] - 2 * deg == gx[1]:
            emit(mon, y, check=False)
            return True
        return False

    k = dec.k
    for cj in range(k):
        xm, xp = gen[cj]
        ob = objs[cj]
        # Pairs of left-half strands exchanging their middle-wall ends.
        for (s1, t1), (s2, t2) in (
                itertools.combinations(xm, 2)
                if parts is None or ("xm", cj) in parts else ()):
            y = _replace_half(
                gen, cj,
                xm=[p for p in xm if p not in ((s1, t1), (s2, t2))] + [(s1, t2), (s2, t1)],
            )
            c1, c2, r1, r2 = 2 * t1, 2 * t2, 2 * s1, 2 * s2
            col_in = lambda c: _between(c, c1, c2)
            if (s1 < s2) == (t1 < t2):
                mon = _content(*_sel(ob, "l_pts", "l_marks", col_in,
                                     lambda r: _between(r, r1, r2)))
                if mon is not None:
                    emit(mon, y)
            else:
                row_out = lambda r: not _between(r, r1, r2)
                p1, m1 = _sel(ob, "l_pts", "l_marks", col_in, row_out)
                p2, m2 = _sel(ob, "r_pts", "r_marks", col_in, lambda r: True)
                mon = _content(p1 + p2, m1 + m2)
                if mon is not None:
                    emit(mon, y)
                if cj >= 1:
                    row_in = lambda r: _between(r, r1, r2)
                    p1, m1 = _sel(ob, "l_pts", "l_marks",
                                  lambda c: not _between(c, c1, c2) and c not in (c1, c2),
                                  row_in)
                    p2, m2 = _sel(objs[cj - 1], "r_pts", "r_marks",
                                  lambda c: True, row_in)
                    mon = _content(p1 + p2, m1 + m2)
                    if mon is not None:
                        emit(mon, y)
        # Pairs of right-half strands exchanging their right-wall ends.
        for (b1, r1), (b2, r2) in (
                itertools.combinations(xp, 2)
                if parts is None or ("xp", cj) in parts else ()):
            y = _replace_half(
                gen, cj,
                xp=[p for p in xp if p not in ((b1, r1), (b2, r2))] + [(b1, r2), (b2, r1)],
            )
            c1, c2, w1, w2 = 2 * b1, 2 * b2, 2 * r1, 2 * r2
            col_in = lambda c: _between(c, c1, c2)
            if (b1 < b2) != (r1 < r2):
                mon = _content(*_sel(ob, "r_pts", "r_marks", col_in,
                                     lambda r: _between(r, w1, w2)))
                if mon is not None:
                    emit(mon, y)
            else:
                row_out = lambda r: not _between(r, w1, w2)
                p1, m1 = _sel(ob, "r_pts", "r_marks", col_in, row_out)
                p2, m2 = _sel(ob, "l_pts", "l_marks", col_in, lambda r: True)
                mon = _content(p1 + p2, m1 + m2)
                if mon is not None:
                    emit(mon, y)
                if cj < k - 1:
                    row_in = lambda r: _between(r, w1, w2)
                    p1, m1 = _sel(ob, "r_pts", "r_marks",
                                  lambda c: not _between(c, c1, c2) and c not in (c1, c2),
                                  row_in)
                    p2, m2 = _sel(objs[cj + 1], "l_pts", "l_marks",
                                  lambda c: True, row_in)
                    mon = _content(p1 + p2, m1 + m2)
                    if mon is not None:
                        emit(mon, y)
        # One strand of each half exchanging their middle-wall ends.
        for (s, t), (b, r) in (
                itertools.product(xm, xp)
                if parts is None or ("mix", cj) in parts else ()):
            y = _replace_half(
                gen, cj,
                xm=[p for p in xm if p != (s, t)] + [(s, b)],
                xp=[p for p in xp if p != (b, r)] + [(t, r)],
            )
            ct, cb = 2 * t, 2 * b
            col_in = lambda c: _between(c, ct, cb)
            if t < b:
                # Rectangle runs through the gap between the two walls.
                pl, ml = _sel(ob, "l_pts", "l_marks", col_in, lambda rr: rr > 2 * s)
                pr, mr = _sel(ob, "r_pts", "r_marks", col_in, lambda rr: rr > 2 * r)
            else:
                # Rectangle wraps around the other way.
                pl, ml = _sel(ob, "l_pts", "l_marks", col_in, lambda rr: rr < 2 * s)
                pr, mr = _sel(ob, "r_pts", "r_marks", col_in, lambda rr: rr < 2 * r)
            mon = _content(pl + pr, ml + mr)
            if mon is not None:
                emit(mon, y)
        # Exchanges across the wall between two consecutive slices.
        if cj < k - 1 and (parts is None or ("wall", cj) in parts):
            xm2, _ = gen[cj + 1]
            for (b, r), (l2, b2) in itertools.product(xp, xm2):
                y0 = _replace_half(gen, cj, xp=[p for p in xp if p != (b, r)] + [(b, l2)])
                y = _replace_half(y0, cj + 1,
                                  xm=[p for p in xm2 if p != (l2, b2)] + [(r, b2)])
                row_in = lambda rr: _between(rr, 2 * r, 2 * l2)
                # The exchange region stays between the exchanged wall ranks
                # and leaves both marked lines on the same side; the grading
                # law selects the viable side.
                for sel_a, sel_b in (
                    (lambda c: c > 2 * b, lambda c: c > 2 * b2),
                    (lambda c: c < 2 * b, lambda c: c < 2 * b2),
                ):
                    p1, m1 = _sel(ob, "r_pts", "r_marks", sel_a, row_in)
                    p2, m2 = _sel(objs[cj + 1], "l_pts", "l_marks", sel_b, row_in)
                    mon = _content(p1 + p2, m1 + m2)
                    if mon is not None:
                        try_emit(mon, y)

    return {key for key, parity in terms.items() if parity}


# --- left boundary map --------------------------------------------------

def delta_left(dec, gen, grader=None):
    """Terms (algebra term, variable monomial, target) of the boundary map."""
    grader = grader or _Grader(dec)
    if dec.k == 0:
        return set()
    col = dec.columns[0]
    xm, xp = gen[0]
    ob = _Objects(col, xm, xp)
    signs = dec.left_signs
    variables = u_vars(signs)
    unocc = sorted(set(range(col.na_left)) - {s for s, _ in xm})
    gx = grader(gen)
    terms = {}

    def emit(aterm, mon, y):
        gy = grader(y)
        am, aa = alg_bigrading(signs, aterm)
        deg = sum(e for _, e in mon)
        assert am + gy[0] - 2 * deg == gx[0] - 1, (gen, aterm, mon, y)
        assert aa + gy[1] - 2 * deg == gx[1], (gen, aterm, mon, y)
        key = (aterm, mon, y)
        terms[key] = terms.get(key, 0) ^ 1

    # Slide one left-wall end to an unoccupied marked point.
    for (s, t) in xm:
        for i in unocc:
            y = _replace_half(gen, 0, xm=[p for p in xm if p != (s, t)] + [(i, t)])
            side = (lambda c: c < 2 * t) if i < s else (lambda c: c > 2 * t)
            mon = _content(*_sel(ob, "l_pts", "l_marks", side,
                                 lambda r: _between(r, 2 * i, 2 * s)))
            if mon is None:
                continue
            apb = pb_make([(i, s)] + [(p, p) for p in unocc if p != i])
            emit((u_one(), apb), mon, y)

    # Transpose two unoccupied marked points; the generator stays put.
    for i, j in itertools.combinations(unocc, 2):
        mon = _content(*_sel(ob, "l_pts", "l_marks", lambda c: True,
                             lambda r: _between(r, 2 * i, 2 * j)))
        if mon is None:
            continue
        apb = pb_make([(i, j), (j, i)] + [(p, p) for p in unocc if p not in (i, j)])
        emit((u_one(), apb), mon, gen)

    # Slide both ends of an interleaved pair through the boundary.
    for (sa, ta), (sb, tb) in itertools.combinations(xm, 2):
        (i, n), (j, m) = sorted(((sa, ta), (sb, tb)))
        if not (i < j and m < n):
            continue
        row_in = lambda r: _between(r, 2 * i, 2 * j)
        p1, m1 = _sel(ob, "l_pts", "l_marks", lambda c: c < 2 * m, row_in)
        p2, m2 = _sel(ob, "l_pts", "l_marks", lambda c: c > 2 * n, row_in)
        mon = _content(p1 + p2, m1 + m2)
        if mon is None:
            continue
        amon = u_one()
        for p in range(i + 1, j + 1):
            if signs[p - 1] == "+":
                amon = u_mul(amon, u_power(variables[p], 1))
        apb = pb_make((p, p) for p in unocc)
        y = _replace_half(gen, 0,
                          xm=[p for p in xm if p not in ((i, n), (j, m))] + [(i, m), (j, n)])
        # The grading law selects which double slides bound an empty region.
        gy = grader(y)
        am, aa = alg_bigrading(signs, (amon, apb))
        deg = sum(e for _, e in mon)
        if am + gy[0] - 2 * deg == gx[0] - 1 and aa + gy[1] - 2 * deg == gx[1]:
            emit((amon, apb), mon, y)

    return {key for key, parity in terms.items() if parity}


# --- right boundary action ----------------------------------------------

def algebra_inputs(dec, gen):
    """Variable-free right-algebra basis elements with matching idempotent."""
    sources = sorted(t for _, t in gen[-1][1])
    points = range(dec.columns[-1].na_right)
    out = []
    for targets in itertools.permutations(points, len(sources)):
        out.append(pb_make(zip(sources, targets)))
    return out


def m2_strand_factor(col, b, t, f):
    """Monomial carried by one strand end moving from wall rank t to f.

    The strand leg through the slice and its dashed algebra continuation
    are straightened; each dashed slice strand whose crossing count drops
    contributes its variable, and a dropped crossing over an opposing
    strand kills the move (None).
    """
    mon = u_one()
    for seg in col.right:
        p = seg.right_h // 2
        legs = (2 * b + 1 < seg.left_h) != (2 * t + 1 < seg.right_h)
        legs += (2 * t + 1 < 2 * p) != (2 * f + 1 < 2 * p)
        direct = (2 * b + 1 < seg.left_h) != (2 * f + 1 < 2 * p)
        excess, rem = divmod(legs - direct, 2)
        assert rem == 0 and excess >= 0
        if excess:
            if not seg.is_var:
                return None
            mon = u_mul(mon, u_power(seg.uidx, excess))
    return mon


def m2_pair_kill(move_a, move_b):
    """Whether two moved strands resolve a double crossing (term dies)."""
    (b1, t1, f1), (b2, t2, f2) = move_a, move_b
    return (b1 < b2) != (t1 < t2) and (t1 < t2) != (f1 < f2)


def right_variable_map(dec):
    """Right algebra variable index -> slice variable index of the
    adjacent outgoing dashed strand."""
    rvars = u_vars(dec.right_signs)
    out = {}
    for seg in dec.columns[-1].right:
        if seg.is_var and dec.right_signs[seg.right_h // 2 - 1] == "+":
            out[rvars[seg.right_h // 2]] = seg.uidx
    return out


def m2(dec, gen, apb, amon=u_one(), grader=None):
    """Action of a right-algebra basis term; terms (variable monomial, target)."""
    xp = gen[-1][1]
    if frozenset(t for _, t in xp) != frozenset(s for s, _ in apb):
        return set()
    col = dec.columns[-1]
    fa = dict(apb)
    moves = [(b, t, fa[t]) for b, t in xp]
    # A pair of strands interleaved in both legs gives a double crossing.
    for ma, mb in itertools.combinations(moves, 2):
        if m2_pair_kill(ma, mb):
            return set()
    mon = u_one()
    for b, t, f in moves:
        factor = m2_strand_factor(col, b, t, f)
        if factor is None:
            return set()
        mon = u_mul(mon, factor)
    # Algebra variables are the variables of the adjacent outgoing segments.
    if amon:
        var_to_seg = right_variable_map(dec)
        for v, e in amon:
            mon = u_mul(mon, u_power(var_to_seg[v], e))
    y = _replace_half(gen, dec.k - 1, xp=[(b, f) for b, t, f in moves])
    if grader is not None:
        gx, gy = grader(gen), grader(y)
        am, aa = alg_bigrading(dec.right_signs, (amon, apb))
        deg = sum(e for _, e in mon)
        assert gy[0] - 2 * deg == gx[0] + am, (gen, apb, y)
        assert gy[1] - 2 * deg == gx[1] + aa, (gen, apb, y)
    return {(mon, y)}
