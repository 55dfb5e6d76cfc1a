"""Rectangle-counting engine on a plumbed chain of grid charts.

The slice decomposition is redrawn as a chain of torus charts, one per
slice.  Each chart carries the slice's marked points and dashed-strand
marks at doubled coordinates: ranks even, gaps odd.  The bottom band of
a chart holds the left-wall data of the slice and the top band holds the
right-wall data; consecutive charts are glued along the shared wall
annulus, and the outermost walls are the module boundaries.

Every differential term is an embedded rectangle whose source points sit
at the lower-left and upper-right corners.  A rectangle may wrap around
one direction of a chart but not both; a rectangle wrapping sideways
runs through the glued annulus and picks up content from the adjacent
chart, and dies at a boundary wall.  Boundary maps are rectangles in the
outer annuli that exchange strand ends with the boundary algebras.

This route shares only the tangle data, the generator enumeration, and
the algebra with the strand-calculus route in `ctmaps`; map terms are
recomputed from scratch so the two routes can be compared term by term
(`crosscheck`).  The module ends with a classical closed-grid oracle
used to validate knot-level answers independently of both engines.
"""

from __future__ import annotations

import itertools

from . import ctgen
from .algebra import u_one, u_mul, u_power, u_vars, pb_make
from .algebra import bigrading as alg_bigrading
from .tangle import seg_gaps


# --- charts ---------------------------------------------------------------

class Chart:
    """One torus chart: marked-point counts, periods, and marks.

    Unified vertical coordinates run up the bottom band (left-wall data,
    ranks `0, 2, ...`), through the middle gap, then up the top band
    where right-wall ranks appear in reversed order so that rank `r`
    sits at `v_top(2 * r)`.  The horizontal cycle closes through the gap
    above the last middle-wall rank; that gap is where the neighbouring
    charts are glued in.
    """

    def __init__(self, col):
        self.na_l, self.nb, self.na_r = col.na_left, col.nb, col.na_right
        self.u_period = 2 * self.nb
        self.v_period = 2 * (self.na_l + self.na_r)
        self.u_gap = 2 * self.nb - 1
        self.mid_gap = 2 * self.na_l - 1
        self.wrap_gap = self.v_period - 1
        # Marks as (u, wall coordinate, carries-variable, variable index).
        self.bottom_marks = []
        for seg in col.left:
            ga, gb = seg_gaps(seg)
            self.bottom_marks.append((2 * gb + 1, 2 * ga + 1, seg.is_var, seg.uidx))
        self.top_marks = []
        for seg in col.right:
            gb, ga = seg_gaps(seg)
            self.top_marks.append((2 * gb + 1, 2 * ga + 1, seg.is_var, seg.uidx))

    def v_bottom(self, wall_coord):
        return wall_coord

    def v_top(self, wall_coord):
        return self.v_period - 2 - wall_coord


class PlumbedGrid:
    """The glued chain of charts of one decomposition."""

    def __init__(self, dec):
        self.dec = dec
        self.charts = [Chart(col) for col in dec.columns]


def build_heegaard(dec):
    return PlumbedGrid(dec)


def _cyc_in(x, start, end, period):
    """x strictly inside the cyclic interval running from start up to end."""
    span = (end - start) % period
    off = (x - start) % period
    return 0 < off < span


def _chart_objects(chart, half):
    """Points and marks of one chart as (u, v, is_point, is_var, uidx)."""
    xm, xp = half
    objs = []
    for s, t in xm:
        objs.append((2 * t, chart.v_bottom(2 * s), True, False, None))
    for b, r in xp:
        objs.append((2 * b, chart.v_top(2 * r), True, False, None))
    for u, w, is_var, uidx in chart.bottom_marks:
        objs.append((u, chart.v_bottom(w), False, is_var, uidx))
    for u, w, is_var, uidx in chart.top_marks:
        objs.append((u, chart.v_top(w), False, is_var, uidx))
    return objs


def _entry_of_point(chart, u, v):
    """Convert a chart point back to a half-slice entry."""
    if v < 2 * chart.na_l:
        return "m", (v // 2, u // 2)
    return "p", (u // 2, chart.na_r - 1 - (v - 2 * chart.na_l) // 2)


def _replace_half(gen, cj, xm=None, xp=None):
    halves = list(gen)
    old_m, old_p = halves[cj]
    halves[cj] = (
        tuple(sorted(xm)) if xm is not None else old_m,
        tuple(sorted(xp)) if xp is not None else old_p,
    )
    return tuple(halves)


_Grader = ctgen.Grader


# --- internal rectangles ----------------------------------------------------

def _rect_content(chart, objs, us, ue, vs, ve):
    """Variable monomial of a rectangle interior, or None when blocked."""
    mon = u_one()
    for u, v, is_pt, is_var, uidx in objs:
        if _cyc_in(u, us, ue, chart.u_period) and _cyc_in(v, vs, ve, chart.v_period):
            if is_pt or not is_var:
                return None
            mon = u_mul(mon, u_power(uidx, 1))
    return mon


def _annulus_content(mon, items, lo, hi, u_pred=lambda u: True):
    """Fold wall-annulus objects with wall coordinate strictly between lo, hi."""
    if mon is None:
        return None
    for u, w, is_pt, is_var, uidx in items:
        if lo < w < hi and u_pred(u):
            if is_pt or not is_var:
                return None
            mon = u_mul(mon, u_power(uidx, 1))
    return mon


def _top_annulus(chart, half):
    """Top-band objects of a chart keyed by their right-wall coordinate."""
    xm, xp = half
    items = [(2 * b, 2 * r, True, False, None) for b, r in xp]
    items += [(u, w, False, is_var, uidx) for u, w, is_var, uidx in chart.top_marks]
    return items


def _bottom_annulus(chart, half):
    """Bottom-band objects of a chart keyed by their left-wall coordinate."""
    xm, xp = half
    items = [(2 * t, 2 * s, True, False, None) for s, t in xm]
    items += [(u, w, False, is_var, uidx) for u, w, is_var, uidx in chart.bottom_marks]
    return items


def internal_rectangle_map(grid, gen, grader=None, parts=None):
    """Terms (variable monomial, target) counted by embedded rectangles.

    `parts` optionally restricts to named term families, mirroring the
    strand-calculus engine: ("xm", j) / ("xp", j) for rectangles with
    both corners in the bottom / top band of chart j, ("mix", j) for one
    corner in each, ("wall", j) for rectangles through the annulus
    between charts j and j + 1.
    """
    dec = grid.dec
    grader = grader or _Grader(dec)
    parts = None if parts is None else set(parts)
    gx = grader(gen)
    k = len(grid.charts)
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
        gy = grader(y)
        deg = sum(e for _, e in mon)
        if gy[0] - 2 * deg == gx[0] - 1 and gy[1] - 2 * deg == gx[1]:
            emit(mon, y, check=False)

    for j, chart in enumerate(grid.charts):
        xm, xp = gen[j]
        pts = [(2 * t, chart.v_bottom(2 * s)) for s, t in xm]
        pts += [(2 * b, chart.v_top(2 * r)) for b, r in xp]
        n_bot = len(xm)
        objs = _chart_objects(chart, gen[j])
        for ia, ib in itertools.combinations(range(len(pts)), 2):
            if parts is not None:
                tag = "xm" if ib < n_bot else ("xp" if ia >= n_bot else "mix")
                if (tag, j) not in parts:
                    continue
            p, q = pts[ia], pts[ib]
            if p[0] == q[0] or p[1] == q[1]:
                continue
            for (us, vs), (ue, ve) in ((p, q), (q, p)):
                u_around = _cyc_in(chart.u_gap, us, ue, chart.u_period)
                v_around = (_cyc_in(chart.mid_gap, vs, ve, chart.v_period)
                            or _cyc_in(chart.wrap_gap, vs, ve, chart.v_period))
                # An embedded rectangle wraps in at most one direction.
                if u_around and v_around:
                    continue
                mon = _rect_content(chart, objs, us, ue, vs, ve)
                if mon is None:
                    continue
                if u_around:
                    # The rectangle runs through the glued wall annulus;
                    # its vertical span stays inside one band.
                    if vs < chart.mid_gap:
                        if j == 0:
                            continue
                        items = _top_annulus(grid.charts[j - 1], gen[j - 1])
                        good = lambda w: _cyc_in(w, vs, ve, chart.v_period)
                    else:
                        if j == k - 1:
                            continue
                        items = _bottom_annulus(grid.charts[j + 1], gen[j + 1])
                        good = lambda w: _cyc_in(chart.v_top(w), vs, ve, chart.v_period)
                    for u, w, is_pt, is_var, uidx in items:
                        if not good(w):
                            continue
                        if is_pt or not is_var:
                            mon = None
                            break
                        mon = u_mul(mon, u_power(uidx, 1))
                    if mon is None:
                        continue
                # Swap the two corners to obtain the target.
                new_m = [e for e in xm if (2 * e[1], chart.v_bottom(2 * e[0])) not in (p, q)]
                new_p = [e for e in xp if (2 * e[0], chart.v_top(2 * e[1])) not in (p, q)]
                for u, v in ((us, ve), (ue, vs)):
                    kind, entry = _entry_of_point(chart, u, v)
                    (new_m if kind == "m" else new_p).append(entry)
                emit(mon, _replace_half(gen, j, xm=new_m, xp=new_p))
        # Rectangles through the wall annulus between consecutive charts.
        if j < k - 1 and (parts is None or ("wall", j) in parts):
            chart2 = grid.charts[j + 1]
            xm2, _ = gen[j + 1]
            own = _top_annulus(chart, gen[j])
            other = _bottom_annulus(chart2, gen[j + 1])
            for (b, r), (l2, b2) in itertools.product(xp, xm2):
                y0 = _replace_half(gen, j, xp=[e for e in xp if e != (b, r)] + [(b, l2)])
                y = _replace_half(y0, j + 1,
                                  xm=[e for e in xm2 if e != (l2, b2)] + [(r, b2)])
                lo, hi = sorted((2 * r, 2 * l2))
                for side in (1, -1):
                    mon = _annulus_content(u_one(), own, lo, hi,
                                           lambda u: (u - 2 * b) * side > 0)
                    mon = _annulus_content(mon, other, lo, hi,
                                           lambda u: (u - 2 * b2) * side > 0)
                    if mon is not None:
                        try_emit(mon, y)

    return {key for key, parity in terms.items() if parity}


# --- left boundary rectangles -----------------------------------------------

def left_boundary_map(grid, gen, grader=None):
    """Terms (algebra term, variable monomial, target) at the left wall."""
    dec = grid.dec
    grader = grader or _Grader(dec)
    if not grid.charts:
        return set()
    chart = grid.charts[0]
    xm, _ = gen[0]
    band = _bottom_annulus(chart, gen[0])
    signs = dec.left_signs
    variables = u_vars(signs)
    unocc = sorted(set(range(chart.na_l)) - {s for s, _ in xm})
    gx = grader(gen)
    terms = {}

    def emit(aterm, mon, y, check=True):
        if check:
            gy = grader(y)
            am, aa = alg_bigrading(signs, aterm)
            deg = sum(e for _, e in mon)
            assert am + gy[0] - 2 * deg == gx[0] - 1, (gen, aterm, mon, y)
            assert aa + gy[1] - 2 * deg == gx[1], (gen, aterm, mon, y)
        key = (aterm, mon, y)
        terms[key] = terms.get(key, 0) ^ 1

    # A slide rectangle: one strand end moves to an unoccupied rank,
    # sweeping the strip between the old and new rank on the side toward
    # the boundary when descending and away from it when ascending.
    for s, t in xm:
        for i in unocc:
            lo, hi = sorted((2 * i, 2 * s))
            side = (lambda u: u < 2 * t) if i < s else (lambda u: u > 2 * t)
            mon = _annulus_content(u_one(), band, lo, hi, side)
            if mon is None:
                continue
            apb = pb_make([(i, s)] + [(p, p) for p in unocc if p != i])
            y = _replace_half(gen, 0, xm=[e for e in xm if e != (s, t)] + [(i, t)])
            emit((u_one(), apb), mon, y)

    # A crossing rectangle on two unoccupied ranks wraps the whole annulus.
    for i, j in itertools.combinations(unocc, 2):
        mon = _annulus_content(u_one(), band, 2 * i, 2 * j)
        if mon is None:
            continue
        apb = pb_make([(i, j), (j, i)] + [(p, p) for p in unocc if p not in (i, j)])
        emit((u_one(), apb), mon, gen)

    # A double slide pushes an interleaved pair through the boundary wall,
    # sweeping the two side strips; the boundary strip crosses one dashed
    # strand per wall rank in the span, so ascending strands contribute
    # their variables to the algebra side.  The grading law selects which
    # double slides bound an empty region.
    for ea, eb in itertools.combinations(xm, 2):
        (i, n), (j, m) = sorted((ea, eb))
        if not (i < j and m < n):
            continue
        mon = _annulus_content(u_one(), band, 2 * i, 2 * j, lambda u: u < 2 * m)
        mon = _annulus_content(mon, band, 2 * i, 2 * j, lambda u: u > 2 * n)
        if mon is None:
            continue
        amon = u_one()
        for p in range(i + 1, j + 1):
            if signs[p - 1] == "+":
                amon = u_mul(amon, u_power(variables[p], 1))
        apb = pb_make((p, p) for p in unocc)
        y = _replace_half(gen, 0,
                          xm=[e for e in xm if e not in ((i, n), (j, m))] + [(i, m), (j, n)])
        gy = grader(y)
        am, aa = alg_bigrading(signs, (amon, apb))
        deg = sum(e for _, e in mon)
        if am + gy[0] - 2 * deg == gx[0] - 1 and aa + gy[1] - 2 * deg == gx[1]:
            emit((amon, apb), mon, y, check=False)

    return {key for key, parity in terms.items() if parity}


# --- right boundary rectangles ----------------------------------------------

def boundary_strand_factor(chart, b, t, f):
    """Monomial swept by one strand end moving from wall rank t to f.

    Crossing counts are taken as order flips of the strand and mark
    heights along the three walls of the outer strip; a dropped crossing
    over an opposing dashed strand kills the move (None)."""
    mon = u_one()
    for u, w, is_var, uidx in chart.top_marks:
        legs = (2 * b < u) != (2 * t < w)
        legs += (2 * t < w) != (2 * f < w)
        direct = (2 * b < u) != (2 * f < w)
        excess, rem = divmod(legs - direct, 2)
        assert rem == 0 and excess >= 0
        if excess:
            if not is_var:
                return None
            mon = u_mul(mon, u_power(uidx, excess))
    return mon


def boundary_pair_kill(move_a, move_b):
    """Whether two swept rectangles resolve a double crossing: the strand
    heights flip order twice along the walls but once end to end."""
    (b1, t1, f1), (b2, t2, f2) = move_a, move_b
    flips = ((b1 < b2) != (t1 < t2)) + ((t1 < t2) != (f1 < f2))
    return flips - ((b1 < b2) != (f1 < f2)) == 2


def boundary_variable_map(grid):
    """Right algebra variable index -> slice variable index, read off the
    top-band marks of the last chart."""
    rvars = u_vars(grid.dec.right_signs)
    out = {}
    for u, w, is_var, uidx in grid.charts[-1].top_marks:
        p = (w + 1) // 2
        if is_var and grid.dec.right_signs[p - 1] == "+":
            out[rvars[p]] = uidx
    return out


def right_boundary_action(grid, gen, apb, amon=u_one(), grader=None):
    """Action of a right-algebra basis term, counted by swept rectangles.

    Each moved strand end sweeps a rectangle between its old and new wall
    rank; a pair of strands whose rectangles overlap crosswise resolves a
    double crossing and kills the term.  At most one target and one
    monomial can result.
    """
    dec = grid.dec
    chart = grid.charts[-1]
    _, xp = gen[-1]
    if frozenset(t for _, t in xp) != frozenset(s for s, _ in apb):
        return set()
    fa = dict(apb)
    moved = [(b, t, fa[t]) for b, t in xp]
    for ma, mb in itertools.combinations(moved, 2):
        if boundary_pair_kill(ma, mb):
            return set()
    mon = u_one()
    for b, t, f in moved:
        factor = boundary_strand_factor(chart, b, t, f)
        if factor is None:
            return set()
        mon = u_mul(mon, factor)
    # Algebra variables act through the adjacent outgoing dashed strands.
    if amon:
        var_to_seg = boundary_variable_map(grid)
        for v, e in amon:
            mon = u_mul(mon, u_power(var_to_seg[v], e))
    y = _replace_half(gen, len(grid.charts) - 1, xp=[(b, f) for b, t, f in moved])
    if grader is not None:
        gx, gy = grader(gen), grader(y)
        am, aa = alg_bigrading(dec.right_signs, (amon, apb))
        deg = sum(e for _, e in mon)
        assert gy[0] - 2 * deg == gx[0] + am, (gen, apb, y)
        assert gy[1] - 2 * deg == gx[1] + aa, (gen, apb, y)
    return {(mon, y)}


# --- cross-checking the two engines -----------------------------------------

def _u_monomials(variables, max_degree):
    """All monomials in the given variables up to the given total degree."""
    out = [u_one()]
    for deg in range(1, max_degree + 1):
        for combo in itertools.combinations_with_replacement(sorted(variables), deg):
            mon = u_one()
            for v in combo:
                mon = u_mul(mon, u_power(v, 1))
            out.append(mon)
    return out


def crosscheck(dec, u_degree=2):
    """Compare both engines term by term; returns discrepancy records.

    Every generator's internal differential, left boundary map, and right
    algebra action (over basis inputs scaled by variable monomials up to
    the given degree) is compared across both routes.  Each map value
    depends only on a small local slice of the generator: same-band
    exchanges in one band see only that band's points, mixed exchanges
    see only one chart, wall exchanges see only the two point sets
    flanking the wall, the left boundary sees only the leftmost band, and
    the right action sees only the rightmost band together with the
    input.  The comparison therefore runs once per distinct slice, which
    is exhaustive: every generator's full map value is a disjoint union
    of slices already compared.  Incoming variable monomials act by
    multiplication through a fixed translation table in both engines, so
    the tables are compared directly and the monomial path is exercised
    end to end on one representative input per slice.

    Discrepancies are returned as data, one record per disagreeing local
    configuration, tagged with a representative generator.
    """
    from . import ctmaps

    grid = build_heegaard(dec)
    k = len(dec.columns)
    rvars = sorted(u_vars(dec.right_signs).values())
    amons = _u_monomials(rvars, u_degree)
    report = []

    a = ctmaps.right_variable_map(dec)
    b = boundary_variable_map(grid)
    if a != b:
        report.append(("right-variables", None, sorted(a.items()), sorted(b.items())))

    seen = set()
    for gen in ctgen.enumerate_generators(dec):
        parts = set()
        for j in range(k):
            xm, xp = gen[j]
            for tag, key in (("xm", xm), ("xp", xp), ("mix", gen[j])):
                if (tag, j, key) not in seen:
                    seen.add((tag, j, key))
                    parts.add((tag, j))
            if j < k - 1 and ("wall", j, (xp, gen[j + 1][0])) not in seen:
                seen.add(("wall", j, (xp, gen[j + 1][0])))
                parts.add(("wall", j))
        if parts:
            a = ctmaps.internal_differential(dec, gen, parts=parts)
            b = internal_rectangle_map(grid, gen, parts=parts)
            if a != b:
                report.append(("internal", ctgen.name(gen), sorted(a - b), sorted(b - a)))
        if ("left", gen[0][0]) not in seen:
            seen.add(("left", gen[0][0]))
            a = ctmaps.delta_left(dec, gen)
            b = left_boundary_map(grid, gen)
            if a != b:
                report.append(("left", ctgen.name(gen), sorted(a - b), sorted(b - a)))
        if ("right", gen[-1][1]) not in seen:
            seen.add(("right", gen[-1][1]))
            gname = ctgen.name(gen)
            first = True
            for apb in ctmaps.algebra_inputs(dec, gen):
                for amon in (amons if first else (u_one(),)):
                    a = ctmaps.m2(dec, gen, apb, amon)
                    b = right_boundary_action(grid, gen, apb, amon)
                    if a != b:
                        report.append(("right", gname, (amon, apb),
                                       sorted(a - b), sorted(b - a)))
                first = False
    return report


def event_choices(word):
    """All legal single events on a boundary sign word."""
    w = len(word)
    choices = [("id",)]
    for p in range(1, w + 2):
        choices.append(("cup", p, "-+"))
        choices.append(("cup", p, "+-"))
    for p in range(1, w):
        if word[p - 1] != word[p]:
            choices.append(("cap", p))
        choices.append(("xo", p))
        choices.append(("xu", p))
    return choices


def enumerate_decompositions(n_events, max_width):
    """All (left word, event tuple) pairs with every wall width bounded."""
    out = []

    def extend(start, word, events):
        if len(events) == n_events:
            out.append((start, tuple(events)))
            return
        for ev in event_choices(word):
            _, new_word = _trial_event(word, ev)
            if len(new_word) <= max_width:
                extend(start, new_word, events + [ev])

    for w in range(max_width + 1):
        for bits in itertools.product("-+", repeat=w):
            word = "".join(bits)
            extend(word, word, [])
    return out


def _trial_event(word, ev):
    from .tangle import _build_column
    return _build_column(word, ev)


def _crosscheck_job(args):
    from .tangle import Decomposition
    word, events, u_degree = args
    return word, events, crosscheck(Decomposition(word, events), u_degree)


def crosscheck_sweep(n_events, max_width, u_degree=2, threads=None):
    """Cross-check both engines over a family of small decompositions.

    Returns the list of all discrepancy records, tagged with the
    decomposition they came from.  Parallelism defaults to the TF_THREADS
    environment variable, then to the machine's core count.
    """
    import concurrent.futures
    import os

    if threads is None:
        threads = int(os.environ.get("TF_THREADS", 0)) or (os.cpu_count() or 1)
    jobs = [(word, events, u_degree)
            for word, events in enumerate_decompositions(n_events, max_width)]
    report = []
    if threads <= 1:
        results = map(_crosscheck_job, jobs)
    else:
        pool = concurrent.futures.ProcessPoolExecutor(max_workers=threads)
        results = pool.map(_crosscheck_job, jobs, chunksize=4)
    for word, events, found in results:
        for record in found:
            report.append((word, events) + record)
    if threads > 1:
        pool.shutdown()
    return report


# --- classical closed-grid oracle -------------------------------------------

def parse_grid(text):
    """Parse a closed grid description: size line, X row list, O row list."""
    xs = os = size = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("grid"):
            size = int(line.split()[1])
        elif line.startswith("X:"):
            xs = [int(w) for w in line[2:].split()]
        elif line.startswith("O:"):
            os = [int(w) for w in line[2:].split()]
        else:
            raise ValueError("unrecognized grid line: %r" % line)
    if size is None or xs is None or os is None:
        raise ValueError("grid description needs a size, an X row, and an O row")
    for rows in (xs, os):
        if sorted(rows) != list(range(size)):
            raise ValueError("marking rows must be a permutation of 0..n-1")
    return size, xs, os


def _pair_count(pts_a, pts_b):
    """Ordered pairs with both coordinates strictly increasing."""
    return sum((a0 < b0) and (a1 < b1) for a0, a1 in pts_a for b0, b1 in pts_b)


def _sym_count(pts_a, pts_b):
    return _pair_count(pts_a, pts_b) + _pair_count(pts_b, pts_a)


def _grid_bigrading(n, xs, os, rows):
    """(maslov, doubled alexander) of one closed-grid generator.

    Generator points sit at lattice corners and markings at the centers
    of their squares; coordinates are doubled to stay in integers.
    """
    pts = [(2 * c, 2 * rows[c]) for c in range(n)]
    opts = [(2 * c + 1, 2 * os[c] + 1) for c in range(n)]
    xpts = [(2 * c + 1, 2 * xs[c] + 1) for c in range(n)]
    m2_o = (2 * _pair_count(pts, pts) - 2 * _sym_count(pts, opts)
            + 2 * _pair_count(opts, opts) + 2)
    m2_x = (2 * _pair_count(pts, pts) - 2 * _sym_count(pts, xpts)
            + 2 * _pair_count(xpts, xpts) + 2)
    assert m2_o % 2 == 0 and m2_x % 2 == 0
    return m2_o // 2, (m2_o - m2_x) // 2 - (n - 1)


def classical_grid_tilde(n, xs, os):
    """Fully blocked homology of a closed grid; {(maslov, alex2): dim}.

    Generators are permutations; the differential counts the empty torus
    rectangles that avoid every marking and every generator point.  Small
    sizes only: the generator count is n factorial.
    """
    assert n <= 6, "closed-grid oracle is brute force; keep the grid small"
    marks = [(c, xs[c]) for c in range(n)] + [(c, os[c]) for c in range(n)]
    gens = [tuple(p) for p in itertools.permutations(range(n))]
    index = {g: i for i, g in enumerate(gens)}
    grading = {g: _grid_bigrading(n, xs, os, g) for g in gens}

    def inside(c, r, cs, ce, rs, re):
        return (c - cs) % n < (ce - cs) % n and (r - rs) % n < (re - rs) % n

    def strict(c, r, cs, ce, rs, re):
        return (0 < (c - cs) % n < (ce - cs) % n
                and 0 < (r - rs) % n < (re - rs) % n)

    def boundary(g):
        out = []
        for i, j in itertools.combinations(range(n), 2):
            y = list(g)
            y[i], y[j] = y[j], y[i]
            y = tuple(y)
            for cs, ce, rs, re in ((i, j, g[i], g[j]), (j, i, g[j], g[i])):
                if any(inside(c, r, cs, ce, rs, re) for c, r in marks):
                    continue
                if any(strict(c, r, cs, ce, rs, re) for c, r in enumerate(g)):
                    continue
                out.append(y)
        return out

    # Rank of the boundary matrix per bigrading block, over GF(2).
    blocks = {}
    for g in gens:
        blocks.setdefault(grading[g], []).append(g)
    rank_from = {}
    for (m, a2), sources in blocks.items():
        rows = []
        for g in sources:
            row = 0
            for y in boundary(g):
                assert grading[y] == (m - 1, a2), (g, y)
                row ^= 1 << index[y]
            if row:
                rows.append(row)
        # Gaussian elimination on integer bitsets.
        basis = []
        for row in rows:
            for b in basis:
                row = min(row, row ^ b)
            if row:
                basis.append(row)
                basis.sort(reverse=True)
        rank_from[(m, a2)] = len(basis)
    table = {}
    for (m, a2), members in blocks.items():
        dim = (len(members) - rank_from.get((m, a2), 0)
               - rank_from.get((m + 1, a2), 0))
        if dim:
            table[(m, a2)] = dim
    return table


def grid_euler(table):
    """Graded Euler characteristic, {alex2: signed dimension sum}."""
    out = {}
    for (m, a2), dim in table.items():
        out[a2] = out.get(a2, 0) + (dim if m % 2 == 0 else -dim)
    return {a2: c for a2, c in out.items() if c}


def _laurent_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _laurent_normalize(p):
    if not p:
        return ()
    lo = min(p)
    lead = p[max(p)]
    sign = 1 if lead > 0 else -1
    return tuple(sorted((e - lo, sign * c) for e, c in p.items()))


def euler_matches_alexander(table, alex_coeffs, n):
    """Whether the oracle's Euler characteristic carries the given knot
    polynomial, up to sign and monomial shift, times the closed-grid
    factor (1 - t)^(n-1) left by the extra markings."""
    expected = {2 * e: c for e, c in alex_coeffs.items()}
    factor = {0: 1, 2: -1}
    for _ in range(n - 1):
        expected = _laurent_mul(expected, factor)
    return _laurent_normalize(grid_euler(table)) == _laurent_normalize(expected)
