"""Tests for structures, cancellation, the box product, and homology.

The reduced one-cup module and its pairing with the one-cap module are
frozen reference computations: action families of every length, the four
paired generators, and the two variable-towers of the resulting homology.
"""

import pytest

from tanglefloer import algebra as al
from tanglefloer import homalg, tangle

CUP = tangle.Decomposition("", [("cup", 1, "-+")])
CAP = tangle.Decomposition("-+", [("cap", 1)])


def a(i, j):
    return ((), al.pb_make([(i, j)]))


def reduced_cup():
    s = homalg.assemble(CUP)
    return homalg.cancel(homalg.restrict_summand(s, 1))


def test_cancel_leaves_two_generators():
    m = reduced_cup()
    names = sorted(m.name(g) for g in m.gens)
    assert names == ["1-:0>0;1+:1>1", "1-:0>1;1+:0>1"]
    assert [m.grading(g) for g in m.gens] == [(-1, -2), (0, 0)]


def test_reduced_action_families():
    m = reduced_cup()
    gen = {m.name(g): g for g in m.gens}
    x, y = gen["1-:0>0;1+:1>1"], gen["1-:0>1;1+:0>1"]

    def act(g, *seq):
        terms, _ = m.act(g, seq)
        return {(u, m.name(t)) for _, u, t in terms}

    u1 = ((1, 1),)
    assert act(x) == {(u1, "1-:0>1;1+:0>1")}
    assert act(y) == set()
    assert act(x, a(1, 0), a(0, 1)) == {((), "1-:0>1;1+:0>1")}
    assert act(x, a(1, 0), a(0, 2), a(2, 1)) == {((), "1-:0>0;1+:1>1")}
    assert act(x, a(1, 0), a(0, 2), a(2, 0), a(0, 1)) == {((), "1-:0>1;1+:0>1")}
    assert act(y, a(1, 2), a(2, 1)) == {((), "1-:0>0;1+:1>1")}
    assert act(y, a(1, 2), a(2, 0), a(0, 1)) == {((), "1-:0>1;1+:0>1")}
    # Intermediate inputs give nothing yet but stay extendable.
    for seq in [(a(1, 0),), (a(1, 0), a(0, 2))]:
        terms, viable = m.act(x, seq)
        assert terms == set() and viable


def test_box_product_golden():
    m = reduced_cup()
    d = homalg.assemble(CAP)
    b = homalg.box_tensor(m, d)
    gradings = sorted(b.grading(g) for g in b.gens)
    assert gradings == [(-2, -3), (-1, -3), (-1, -1), (0, -1)]
    rows = {}
    for g in b.gens:
        for (amon, apb), umon, y in b.d1[g]:
            rows.setdefault((b.grading(g), b.grading(y)), set()).add(umon)
    # Both arrows carry the sum of the two variables.
    assert rows == {
        ((-2, -3), (-1, -1)): {((1, 1),), ((2, 1),)},
        ((-1, -3), (0, -1)): {((1, 1),), ((2, 1),)},
    }
    homalg.check_d1_squared(b)


def test_unknot_homology_towers():
    b = homalg.box_tensor(reduced_cup(), homalg.assemble(CAP))
    bottoms = homalg.tower_bottoms(b, u_cutoff=4)
    assert bottoms == {(0, -1): 1, (-1, -1): 1}
    table = homalg.homology_table(b, u_cutoff=4)
    for step in range(4):
        assert table[(0 - 2 * step, -1 - 2 * step)] == 1
        assert table[(-1 - 2 * step, -1 - 2 * step)] == 1


def test_hat_flavor_rank():
    b = homalg.box_tensor(reduced_cup(), homalg.assemble(CAP))
    hat = homalg.hat_structure(b)
    table = homalg.homology_table(hat, u_cutoff=0)
    assert sum(table.values()) == 4
    assert table == {(-2, -3): 1, (-1, -3): 1, (-1, -1): 1, (0, -1): 1}


def test_shift_table():
    t = {(0, -1): 1}
    t2 = homalg.doubled_table(t)
    assert t2 == {(0, -1): 1}
    assert homalg.shift_table(t2, -1, -1) == {(1, 0): 1}


def test_is_bounded():
    d = homalg.assemble(CAP)
    assert homalg.is_bounded(d) >= 1
    # A structure with a non-vanishing cycle is inconclusive.
    s = homalg.Structure("-+", "", 0, {})
    s.add_gen("g", name="g", iota_l={0}, iota_r=set(), maslov=0, alex2=0, summand=0)
    iota = ((), al.pb_make([(0, 0)]))
    s.add_d1("g", iota, (), "g")
    with pytest.raises(RuntimeError):
        homalg.is_bounded(s, limit=8)


def test_relations_catch_corruption():
    s = homalg.assemble(CAP)
    x = s.gens[0]
    aterm = ((), al.pb_make((p, p) for p in s.info[x]["iota_l"]))
    s.add_d1(x, aterm, ((1, 1),), s.gens[1])
    with pytest.raises(AssertionError):
        homalg.check_d1_squared(s)


def test_explicit_cancellation_of_complexes():
    s = homalg.Structure("", "", 0, {})
    for n, (m, a2) in enumerate([(1, 0), (0, 0), (0, 0)]):
        s.add_gen(f"g{n}", name=f"g{n}", iota_l=set(), iota_r=set(),
                  maslov=m, alex2=a2, summand=0)
    iota = ((), al.pb_make([]))
    s.add_d1("g0", iota, (), "g1")
    s.add_d1("g0", iota, (), "g2")
    r = homalg.cancel(s)
    assert [r.name(g) for g in r.gens] == ["g2"]
    assert not r.d1["g2"]


def test_internal_complex_and_summands():
    s = homalg.assemble(CUP)
    s1 = homalg.restrict_summand(s, 1)
    assert len(s1.gens) == 6
    c = homalg.internal_complex(s1)
    assert c.is_complex()
    assert sum(len(c.d1[g]) for g in c.gens) == 3
