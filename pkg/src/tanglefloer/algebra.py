"""Coefficient algebra of decorated partial bijections.

A sign word fixes a row of dashed horizontal strands, one per sign, at
half-integer heights between integer points. A basis element is a partial
bijection of the points together with a monomial in the variables carried
by the right-oriented ('+') dashed strands. Everything is linear over the
two-element field, so elements are sets of basis terms and addition is
symmetric difference.
"""

from __future__ import annotations

import itertools

PLUS = "+"
MINUS = "-"


def check_signs(signs):
    if not isinstance(signs, str) or any(c not in (PLUS, MINUS) for c in signs):
        raise ValueError("sign word must be a string over '+' and '-'")
    return signs


def u_vars(signs):
    """Map each '+' position (1-based) to its variable index."""
    out = {}
    k = 0
    for i, c in enumerate(signs, start=1):
        if c == PLUS:
            k += 1
            out[i] = k
    return out


# --- monomials ---------------------------------------------------------

def u_one():
    return ()


def u_power(var, exp):
    if exp == 0:
        return ()
    return ((var, exp),)


def u_mul(a, b):
    acc = dict(a)
    for var, exp in b:
        acc[var] = acc.get(var, 0) + exp
    return tuple(sorted((v, e) for v, e in acc.items() if e))


def u_degree(a):
    return sum(e for _, e in a)


# --- partial bijections ------------------------------------------------

def pb_make(pairs):
    pairs = tuple(sorted(pairs))
    if len({s for s, _ in pairs}) != len(pairs):
        raise ValueError("repeated source point")
    if len({t for _, t in pairs}) != len(pairs):
        raise ValueError("repeated target point")
    return pairs


def pb_sources(pb):
    return frozenset(s for s, _ in pb)


def pb_targets(pb):
    return frozenset(t for _, t in pb)


def pb_inversions(pb):
    inv = 0
    for (s1, t1), (s2, t2) in itertools.combinations(pb, 2):
        if (s1 < s2) != (t1 < t2):
            inv += 1
    return inv


def strand_crosses(s, t, i):
    """Whether the strand s -> t crosses the dashed strand at height i - 1/2."""
    return min(s, t) < i <= max(s, t)


# --- elements ----------------------------------------------------------

def element(terms=()):
    return frozenset(terms)


def zero():
    return frozenset()


def add(x, y):
    return x ^ y


def idempotent(points):
    return frozenset({(u_one(), pb_make((p, p) for p in points))})


def scale(umon, x):
    return frozenset((u_mul(umon, m), pb) for m, pb in x)


def multiply_term(signs, ta, tb):
    """Product of two basis terms; empty set when the product vanishes."""
    ma, pa = ta
    mb, pbi = tb
    if pb_targets(pa) != pb_sources(pbi):
        return zero()
    comp = {s: dict(pbi)[t] for s, t in pa}
    # A pair of points interleaved in both legs gives a double crossing.
    for s1, s2 in itertools.combinations(sorted(comp), 2):
        a1, a2 = dict(pa)[s1], dict(pa)[s2]
        if (s1 < s2) != (a1 < a2) and (a1 < a2) != (comp[s1] < comp[s2]):
            return zero()
    variables = u_vars(signs)
    mon = u_mul(ma, mb)
    for i, c in enumerate(signs, start=1):
        legs = sum(strand_crosses(s, t, i) for s, t in pa)
        legs += sum(strand_crosses(s, t, i) for s, t in pbi)
        direct = sum(strand_crosses(s, comp[s], i) for s in comp)
        excess, rem = divmod(legs - direct, 2)
        assert rem == 0 and excess >= 0
        if excess:
            if c == MINUS:
                return zero()
            mon = u_mul(mon, u_power(variables[i], excess))
    return frozenset({(mon, pb_make(comp.items()))})


def multiply(signs, x, y):
    out = zero()
    for ta in x:
        for tb in y:
            out = add(out, multiply_term(signs, ta, tb))
    return out


def diff_term(signs, term):
    """Sum of the crossing resolutions of one basis term."""
    mon, pb = term
    variables = u_vars(signs)
    out = zero()
    fn = dict(pb)
    srcs = sorted(fn)
    for i, j in itertools.combinations(srcs, 2):
        if fn[i] < fn[j]:
            continue
        # Resolving through a third strand caught in the middle gives zero.
        if any(i < k < j and fn[j] < fn[k] < fn[i] for k in srcs):
            continue
        new_mon = mon
        dead = False
        for m, c in enumerate(signs, start=1):
            if max(i, fn[j]) < m <= min(j, fn[i]):
                if c == MINUS:
                    dead = True
                    break
                new_mon = u_mul(new_mon, u_power(variables[m], 1))
        if dead:
            continue
        swapped = dict(fn)
        swapped[i], swapped[j] = fn[j], fn[i]
        out = add(out, frozenset({(new_mon, pb_make(swapped.items()))}))
    return out


def diff_alg(signs, x):
    out = zero()
    for term in x:
        out = add(out, diff_term(signs, term))
    return out


def bigrading(signs, term):
    """(maslov, doubled alexander) of a basis term."""
    mon, pb = term
    left = right = 0
    for s, t in pb:
        for i, c in enumerate(signs, start=1):
            if strand_crosses(s, t, i):
                if c == PLUS:
                    right += 1
                else:
                    left += 1
    deg = u_degree(mon)
    maslov = pb_inversions(pb) - right - 2 * deg
    alex2 = left - right - 2 * deg
    return maslov, alex2


def enumerate_basis(signs, u_cutoff=0):
    """All basis terms with total variable degree at most the cutoff."""
    n = len(signs)
    nvars = signs.count(PLUS)
    monomials = []
    for total in range(u_cutoff + 1):
        for split in itertools.combinations_with_replacement(range(1, nvars + 1), total):
            mon = u_one()
            for v in split:
                mon = u_mul(mon, u_power(v, 1))
            monomials.append(mon)
    out = []
    points = range(n + 1)
    for k in range(n + 2):
        for srcs in itertools.combinations(points, k):
            for tgts in itertools.permutations(points, k):
                pb = pb_make(zip(srcs, tgts))
                for mon in monomials:
                    out.append((mon, pb))
    return out


def hat(x):
    """Quotient by every variable."""
    return frozenset(t for t in x if t[0] == ())


# --- serialization -----------------------------------------------------

def encode_element(signs, x):
    terms = []
    for mon, pb in sorted(x):
        terms.append({
            "u": {str(v): e for v, e in mon},
            "map": [[s, t] for s, t in pb],
        })
    return {"signs": signs, "terms": terms}


def decode_element(data):
    signs = check_signs(data["signs"])
    terms = set()
    for t in data["terms"]:
        mon = u_one()
        for v, e in t["u"].items():
            mon = u_mul(mon, u_power(int(v), int(e)))
        terms.add((mon, pb_make((int(s), int(tt)) for s, tt in t["map"])))
    return signs, frozenset(terms)
