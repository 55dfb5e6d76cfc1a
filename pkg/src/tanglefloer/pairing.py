"""Pairing of sliced modules against the direct two-column build.

The generators of a two-column decomposition are exactly the chained
pairs of one-column generators, spliced together, and the bigrading is
the sum of the two column gradings.  In the variable-free quotient every
structure row is a unit arrow whose target differs from its source in
one column or across the shared wall.  The box product of the one-column
modules is therefore compared with the direct two-column build one local
slice at a time: column arrows against the matching factor's own unit
rows, wall arrows against the composite of the right factor's boundary
output with the left factor's algebra action.  Zero discrepancies means
the two variable-free complexes are equal arrow for arrow under the
splicing bijection, so their graded homology agrees in every bigrading.

A reported discrepancy is data, not a verdict: the caller can fall back
to comparing graded homology directly on the offending pair.
"""

from .tangle import Decomposition
from . import ctgen, ctmaps


def _is_idempotent(apb):
    return all(a == b for a, b in apb)


def _unit_internal(dec, gen, parts=None):
    """Variable-free internal arrows, as a set of targets."""
    return {y for mon, y in ctmaps.internal_differential(dec, gen, parts=parts)
            if mon == ()}


def _unit_boundary(dec, gen):
    """Variable-free idempotent-output left-boundary arrows."""
    out = set()
    for (amon, apb), umon, y in ctmaps.delta_left(dec, gen):
        if amon == () and umon == () and _is_idempotent(apb):
            out.add(y)
    return out


def pairing_report(word, e1, e2):
    """Compare the spliced pairing with the direct build; returns records.

    Each record is (family, representative source name, extra targets of
    the direct build, extra targets of the paired build).
    """
    concat = Decomposition(word, (e1, e2))
    left = Decomposition(word, (e1,))
    right = Decomposition(left.right_signs, (e2,))
    report = []

    g1 = ctgen.enumerate_generators(left)
    g2 = ctgen.enumerate_generators(right)
    by_iota_r = {}
    for p in g1:
        by_iota_r.setdefault(ctgen.iota_right(left, p), p)
    by_iota_l = {}
    for q in g2:
        by_iota_l.setdefault(ctgen.iota_left(right, q), q)
    grader = ctgen.Grader(concat)

    def check_grading(p, q):
        gm, ga = grader(p + q)
        pm, pa = ctgen.bigrading(left, p)
        qm, qa = ctgen.bigrading(right, q)
        if (gm, ga) != (pm + qm, pa + qa):
            report.append(("grading", ctgen.name(p + q), (gm, ga),
                           (pm + qm, pa + qa)))

    # Arrows that move points of the first column only.
    for p in g1:
        q = by_iota_l.get(ctgen.iota_right(left, p))
        if q is None:
            continue
        check_grading(p, q)
        gen = p + q
        want = {y + q for y in _unit_internal(left, p)}
        want |= {y + q for y in _unit_boundary(left, p)}
        got = _unit_internal(concat, gen, {("xm", 0), ("xp", 0), ("mix", 0)})
        got |= _unit_boundary(concat, gen)
        if want != got:
            report.append(("column-0", ctgen.name(p),
                           sorted(map(ctgen.name, got - want)),
                           sorted(map(ctgen.name, want - got))))

    # Arrows that move points of the second column only.  The paired
    # build draws these from the right factor's own unit rows: internal
    # ones directly, wall-wrapping ones through its boundary output with
    # an idempotent algebra part (the left factor's action on an
    # idempotent is the identity, and any variable content disappears in
    # the variable-free quotient).
    for q in g2:
        p = by_iota_r.get(ctgen.iota_left(right, q))
        if p is None:
            continue
        gen = p + q
        want = {p + y for y in _unit_internal(right, q)}
        want |= {p + y for y in _unit_boundary(right, q)}
        got = _unit_internal(concat, gen, {("xm", 1), ("xp", 1), ("mix", 1)})
        if want != got:
            report.append(("column-1", ctgen.name(q),
                           sorted(map(ctgen.name, got - want)),
                           sorted(map(ctgen.name, want - got))))

    # Arrows across the shared wall: the right factor's boundary output
    # feeds the left factor's algebra action.
    xp_reps = {}
    for p in g1:
        xp_reps.setdefault(p[0][1], p)
    xm_reps = {}
    for q in g2:
        xm_reps.setdefault(q[0][0], q)
    wall_points = frozenset(range(left.columns[-1].na_right))
    boundary_rows = {}
    for xm, q in xm_reps.items():
        boundary_rows[xm] = [((amon, apb), umon, y)
                             for (amon, apb), umon, y in ctmaps.delta_left(right, q)
                             if umon == () and not _is_idempotent(apb)]
    for xp, p in xp_reps.items():
        image = frozenset(t for _, t in xp)
        for xm, q in xm_reps.items():
            if frozenset(s for s, _ in xm) != wall_points - image:
                continue
            gen = p + q
            want = set()
            for (amon, apb), _, y2 in boundary_rows[xm]:
                for mon, y1 in ctmaps.m2(left, p, apb, amon):
                    if mon == ():
                        want.add(y1 + y2)
            got = _unit_internal(concat, gen, {("wall", 0)})
            if want != got:
                report.append(("wall", ctgen.name(gen),
                               sorted(map(ctgen.name, got - want)),
                               sorted(map(ctgen.name, want - got))))
    return report


def pairing_sweep(max_width=3, threads=None):
    """Run the pairing comparison over every two-column family member.

    Returns all discrepancy records tagged with the decomposition.
    Parallelism defaults to the TF_THREADS environment variable, then to
    the machine's core count.
    """
    import concurrent.futures
    import os

    from .gridengine import enumerate_decompositions

    if threads is None:
        threads = int(os.environ.get("TF_THREADS", 0)) or (os.cpu_count() or 1)
    jobs = enumerate_decompositions(2, max_width)
    report = []
    if threads <= 1:
        results = map(_pairing_job, jobs)
    else:
        pool = concurrent.futures.ProcessPoolExecutor(max_workers=threads)
        results = pool.map(_pairing_job, jobs, chunksize=4)
    for word, events, found in results:
        for record in found:
            report.append((word, events) + record)
    if threads > 1:
        pool.shutdown()
    return report


def _pairing_job(job):
    word, events = job
    e1, e2 = events
    return word, events, pairing_report(word, e1, e2)
