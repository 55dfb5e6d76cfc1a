"""Tests for the coefficient algebra.

The oracle below recomputes products, differentials, and gradings from
literal planar geometry with exact rational arithmetic. Expected values in
the frozen tests were computed with the oracle and checked by hand.
"""

import itertools
from fractions import Fraction

import pytest

from tanglefloer import algebra as al


# --- geometric oracle --------------------------------------------------

def seg_cross(s1, t1, s2, t2):
    """Whether segments (0,s1)-(1,t1) and (0,s2)-(1,t2) cross."""
    s1, t1, s2, t2 = map(Fraction, (s1, t1, s2, t2))
    d = (t1 - s1) - (t2 - s2)
    if d == 0:
        return False
    x = (s2 - s1) / d
    return 0 < x < 1


def seg_hits_height(s, t, h):
    """Whether the segment (0,s)-(1,t) crosses the horizontal line y=h."""
    h = Fraction(h)
    return (Fraction(s) < h) != (Fraction(t) < h)


def orange_height(i):
    return Fraction(2 * i - 1, 2)


def oracle_bigrading(signs, term):
    mon, pb = term
    bb = sum(
        seg_cross(s1, t1, s2, t2)
        for (s1, t1), (s2, t2) in itertools.combinations(pb, 2)
    )
    left = right = 0
    for s, t in pb:
        for i, c in enumerate(signs, start=1):
            if seg_hits_height(s, t, orange_height(i)):
                if c == "+":
                    right += 1
                else:
                    left += 1
    deg = al.u_degree(mon)
    return bb - right - 2 * deg, left - right - 2 * deg


def oracle_multiply_term(signs, ta, tb):
    ma, pa = ta
    mb, pbb = tb
    if al.pb_targets(pa) != al.pb_sources(pbb):
        return al.zero()
    fa, fb = dict(pa), dict(pbb)
    paths = {s: (s, fa[s], fb[fa[s]]) for s in fa}
    for s1, s2 in itertools.combinations(sorted(paths), 2):
        p, q = paths[s1], paths[s2]
        if seg_cross(p[0], p[1], q[0], q[1]) and seg_cross(p[1], p[2], q[1], q[2]):
            return al.zero()
    variables = al.u_vars(signs)
    mon = al.u_mul(ma, mb)
    for i, c in enumerate(signs, start=1):
        h = orange_height(i)
        legs = sum(
            seg_hits_height(p[0], p[1], h) + seg_hits_height(p[1], p[2], h)
            for p in paths.values()
        )
        direct = sum(seg_hits_height(p[0], p[2], h) for p in paths.values())
        excess = (legs - direct) // 2
        if excess:
            if c == "-":
                return al.zero()
            mon = al.u_mul(mon, al.u_power(variables[i], excess))
    return frozenset({(mon, al.pb_make((s, p[2]) for s, p in paths.items()))})


def diagram_crossings(pb):
    return sum(
        seg_cross(s1, t1, s2, t2)
        for (s1, t1), (s2, t2) in itertools.combinations(pb, 2)
    )


def oracle_diff_term(signs, term):
    mon, pb = term
    variables = al.u_vars(signs)
    fn = dict(pb)
    out = al.zero()
    for i, j in itertools.combinations(sorted(fn), 2):
        if not seg_cross(i, fn[i], j, fn[j]):
            continue
        swapped = dict(fn)
        swapped[i], swapped[j] = fn[j], fn[i]
        new_pb = al.pb_make(swapped.items())
        if diagram_crossings(new_pb) != diagram_crossings(pb) - 1:
            continue
        new_mon = mon
        dead = False
        for m, c in enumerate(signs, start=1):
            h = orange_height(m)
            old = seg_hits_height(i, fn[i], h) + seg_hits_height(j, fn[j], h)
            new = seg_hits_height(i, fn[j], h) + seg_hits_height(j, fn[i], h)
            excess = (old - new) // 2
            if excess:
                if c == "-":
                    dead = True
                    break
                new_mon = al.u_mul(new_mon, al.u_power(variables[m], excess))
        if dead:
            continue
        out = al.add(out, frozenset({(new_mon, new_pb)}))
    return out


# --- helpers ------------------------------------------------------------

def strand(*pairs):
    return (al.u_one(), al.pb_make(pairs))


def elem(*pairs):
    return frozenset({strand(*pairs)})


SMALL_WORDS = ["-", "+", "-+", "+-", "--", "++"]


# --- frozen values ------------------------------------------------------

def test_basis_count_minus_plus():
    assert len(al.enumerate_basis("-+", u_cutoff=0)) == 34


def test_frozen_products():
    s = "-+"
    a01, a10 = elem((0, 1)), elem((1, 0))
    a12, a21 = elem((1, 2)), elem((2, 1))
    a02, a20 = elem((0, 2)), elem((2, 0))
    u1 = al.u_power(1, 1)
    assert al.multiply(s, a01, a12) == a02
    assert al.multiply(s, a01, a10) == al.zero()
    assert al.multiply(s, a10, a01) == al.zero()
    assert al.multiply(s, a12, a21) == frozenset({(u1, al.pb_make([(1, 1)]))})
    assert al.multiply(s, a02, a21) == al.scale(u1, a01)
    assert al.multiply(s, a12, a20) == al.scale(u1, a10)


def test_frozen_diff_of_transposition():
    c = elem((0, 1), (1, 0))
    assert al.diff_alg("-+", c) == al.zero()
    expected = frozenset({(al.u_power(1, 1), al.pb_make([(0, 0), (1, 1)]))})
    assert al.diff_alg("+", c) == expected


def test_frozen_gradings():
    c = strand((0, 1), (1, 0))
    assert al.bigrading("-+", c) == (1, 2)
    u1e1 = (al.u_power(1, 1), al.pb_make([(1, 1)]))
    assert al.bigrading("-+", u1e1) == (-2, -2)


# --- oracle equivalence -------------------------------------------------

@pytest.mark.parametrize("signs", SMALL_WORDS)
def test_gradings_match_oracle(signs):
    for term in al.enumerate_basis(signs, u_cutoff=1):
        assert al.bigrading(signs, term) == oracle_bigrading(signs, term)


@pytest.mark.parametrize("signs", SMALL_WORDS)
def test_products_match_oracle(signs):
    basis = al.enumerate_basis(signs, u_cutoff=0)
    for ta in basis:
        for tb in basis:
            got = al.multiply_term(signs, ta, tb)
            assert got == oracle_multiply_term(signs, ta, tb)


@pytest.mark.parametrize("signs", SMALL_WORDS)
def test_diff_matches_oracle(signs):
    for term in al.enumerate_basis(signs, u_cutoff=1):
        got = al.diff_term(signs, term)
        assert got == oracle_diff_term(signs, term)


# --- structural laws ----------------------------------------------------

@pytest.mark.parametrize("signs", SMALL_WORDS)
def test_diff_squares_to_zero(signs):
    for term in al.enumerate_basis(signs, u_cutoff=1):
        x = frozenset({term})
        assert al.diff_alg(signs, al.diff_alg(signs, x)) == al.zero()


@pytest.mark.parametrize("signs", ["-+", "+", "--"])
def test_leibniz(signs):
    basis = al.enumerate_basis(signs, u_cutoff=0)
    for ta in basis:
        for tb in basis:
            a, b = frozenset({ta}), frozenset({tb})
            lhs = al.diff_alg(signs, al.multiply(signs, a, b))
            rhs = al.add(
                al.multiply(signs, al.diff_alg(signs, a), b),
                al.multiply(signs, a, al.diff_alg(signs, b)),
            )
            assert lhs == rhs


def test_associativity():
    signs = "-+"
    basis = [t for t in al.enumerate_basis(signs, u_cutoff=0)
             if len(t[1]) in (1, 2)]
    for ta, tb, tc in itertools.product(basis, repeat=3):
        a, b, c = (frozenset({t}) for t in (ta, tb, tc))
        lhs = al.multiply(signs, al.multiply(signs, a, b), c)
        rhs = al.multiply(signs, a, al.multiply(signs, b, c))
        assert lhs == rhs


@pytest.mark.parametrize("signs", SMALL_WORDS)
def test_grading_laws(signs):
    basis = al.enumerate_basis(signs, u_cutoff=1)
    for term in basis:
        m, a2 = al.bigrading(signs, term)
        for dterm in al.diff_term(signs, term):
            dm, da2 = al.bigrading(signs, dterm)
            assert dm == m - 1 and da2 == a2
    plain = al.enumerate_basis(signs, u_cutoff=0)
    for ta in plain:
        for tb in plain:
            prod = al.multiply_term(signs, ta, tb)
            for tc in prod:
                ma, aa = al.bigrading(signs, ta)
                mb, ab = al.bigrading(signs, tb)
                mc, ac = al.bigrading(signs, tc)
                assert mc == ma + mb and ac == aa + ab


def test_idempotent_action():
    signs = "-+"
    for term in al.enumerate_basis(signs, u_cutoff=0):
        x = frozenset({term})
        src, tgt = al.pb_sources(term[1]), al.pb_targets(term[1])
        assert al.multiply(signs, al.idempotent(src), x) == x
        assert al.multiply(signs, x, al.idempotent(tgt)) == x
        other = frozenset(range(3)) - src
        if other != src:
            assert al.multiply(signs, al.idempotent(other), x) == al.zero()


def test_hat_quotient():
    x = frozenset({
        (al.u_one(), al.pb_make([(0, 1)])),
        (al.u_power(1, 1), al.pb_make([(1, 0)])),
    })
    assert al.hat(x) == frozenset({(al.u_one(), al.pb_make([(0, 1)]))})


# --- serialization ------------------------------------------------------

def test_encode_format():
    x = frozenset({(al.u_power(1, 1), al.pb_make([(1, 1)]))})
    assert al.encode_element("-+", x) == {
        "signs": "-+",
        "terms": [{"u": {"1": 1}, "map": [[1, 1]]}],
    }


def test_json_roundtrip():
    signs = "-+"
    for term in al.enumerate_basis(signs, u_cutoff=1)[:200]:
        x = frozenset({term})
        got_signs, got = al.decode_element(al.encode_element(signs, x))
        assert (got_signs, got) == (signs, x)
