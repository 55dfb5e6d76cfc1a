"""Bimodule containers and homological operations.

A structure holds generators with bigradings and idempotents, rows of the
zero-input map (with a left algebra output and a variable monomial), and
rows of the one-input right action. Closed boundaries make the relevant
side trivial, so complexes and one-sided modules are the same container.

Cancellation of a unit arrow in a module with a right action is lazy: the
reduced action is evaluated by summing zig-zag paths through the cancelled
pair, never using the cancelled row itself. Box products consume the
zig-zag evaluation through a prefix-viability check, which is what makes
path enumeration terminate even when the differential graph has cycles.
"""

from __future__ import annotations

import collections
import itertools

from . import algebra as al
from . import ctgen, ctmaps
from .algebra import u_one, u_mul, u_power, u_degree


class Structure:
    """Generators plus zero-input rows (d1) and one-input rows (d2).

    d1[x] is a set of ((amon, apb), umon, y); d2[x] maps a variable-free
    right-algebra basis element apb to a set of (umon, y). The right
    identification var_map sends right-algebra variables to module
    variables.
    """

    def __init__(self, left_signs, right_signs, n_vars, var_map=None):
        self.left_signs = left_signs
        self.right_signs = right_signs
        self.n_vars = n_vars
        self.var_map = dict(var_map or {})
        self.gens = []
        self.info = {}
        self.d1 = {}
        self.d2 = {}

    def add_gen(self, g, name, iota_l, iota_r, maslov, alex2, summand):
        self.gens.append(g)
        self.info[g] = {
            "name": name, "iota_l": frozenset(iota_l), "iota_r": frozenset(iota_r),
            "maslov": maslov, "alex2": alex2, "summand": summand,
        }
        self.d1[g] = set()
        self.d2[g] = {}

    def name(self, g):
        return self.info[g]["name"]

    def grading(self, g):
        return self.info[g]["maslov"], self.info[g]["alex2"]

    def add_d1(self, x, aterm, umon, y):
        self.d1[x] ^= {(aterm, umon, y)}

    def add_d2(self, x, apb, umon, y):
        rows = self.d2[x].setdefault(apb, set())
        rows ^= {(umon, y)}
        self.d2[x][apb] = rows

    # --- right action interface -----------------------------------------

    def _apply_aterm(self, g, aterm):
        """One right-algebra input; returns set of (umon, target)."""
        amon, apb = aterm
        mon = u_one()
        for v, e in amon:
            mon = u_mul(mon, u_power(self.var_map[v], e))
        src = frozenset(s for s, _ in apb)
        if src != self.info[g]["iota_r"]:
            return set()
        if all(s == t for s, t in apb):
            return {(mon, g)}
        out = set()
        for umon, y in self.d2[g].get(apb, ()):
            out ^= {(u_mul(umon, mon), y)}
        return out

    def act(self, g, seq):
        """Terms ((amon, apb), umon, y) of the action with the given inputs.

        Returns (terms, viable): `viable` says whether a longer input
        sequence extending `seq` could still produce terms.
        """
        if not seq:
            return set(self.d1[g]), True
        if len(seq) == 1:
            terms = set()
            iota = (u_one(), al.pb_make((p, p) for p in self.info[g]["iota_l"]))
            for umon, y in self._apply_aterm(g, seq[0]):
                terms ^= {(iota, umon, y)}
            return terms, False
        return set(), False

    def is_complex(self):
        return self.left_signs == "" and self.right_signs == ""


def assemble(dec):
    """Build the bimodule of a sliced tangle from its strand-move maps."""
    grader = ctmaps._Grader(dec)
    var_map = {}
    if dec.right_signs:
        rvars = al.u_vars(dec.right_signs)
        for seg in dec.columns[-1].right:
            p = seg.right_h // 2
            if seg.is_var and 1 <= p <= len(dec.right_signs) \
                    and dec.right_signs[p - 1] == "+":
                var_map[rvars[p]] = seg.uidx
    s = Structure(dec.left_signs, dec.right_signs, dec.n_vars, var_map)
    gens = sorted(ctgen.enumerate_generators(dec), key=ctgen.name)
    for g in gens:
        m, a2 = grader(g)
        s.add_gen(g, name=ctgen.name(g),
                  iota_l=ctgen.iota_left(dec, g), iota_r=ctgen.iota_right(dec, g),
                  maslov=m, alex2=a2, summand=ctgen.summand_index(g))
    for g in gens:
        iota_pb = al.pb_make((p, p) for p in s.info[g]["iota_l"])
        for mon, y in ctmaps.internal_differential(dec, g, grader):
            s.add_d1(g, ((), iota_pb), mon, y)
        for aterm, mon, y in ctmaps.delta_left(dec, g, grader):
            s.add_d1(g, aterm, mon, y)
        for apb in ctmaps.algebra_inputs(dec, g):
            if all(a == b for a, b in apb):
                continue
            for mon, y in ctmaps.m2(dec, g, apb, grader=grader):
                s.add_d2(g, apb, mon, y)
    return s


def folded_hat_structure(dec, summand=0):
    """Reduced hat-flavor structure of a decomposition closed on the right.

    Assembling a many-event decomposition in one pass is combinatorially
    infeasible, so the events are folded in one at a time from the right.
    The running factor stays closed on the right, so every cancellation is
    the explicit one — no lazy action wrappers. Variable-carrying rows are
    dropped after each step: coefficients only ever accumulate variables,
    so anything that picks one up can never contribute to the hat flavor.
    """
    assert dec.right_signs == "", "folding needs a right-closed decomposition"
    from . import tangle as tg
    m = None
    for word, event in reversed(list(zip(dec.sign_words, dec.events))):
        d = hat_structure(assemble(tg.Decomposition(word, [event])))
        if m is None:
            b = restrict_summand(d, summand)
        else:
            b = box_tensor(d, m)
            del m
        m = _rekey(hat_structure(cancel(b, consume=True)))
        del b
    return m


def _rekey(s):
    """Replace generator keys and names with short sequential labels.

    Folded generator names otherwise grow with every pairing and dominate
    memory on large intermediate steps.
    """
    keys = {g: f"f{i}" for i, g in enumerate(s.gens)}
    out = Structure(s.left_signs, s.right_signs, s.n_vars, s.var_map)
    for g in s.gens:
        fields = dict(s.info[g])
        fields["name"] = keys[g]
        out.add_gen(keys[g], **{k: fields[k] for k in
                                ("name", "iota_l", "iota_r", "maslov", "alex2", "summand")})
    for g in s.gens:
        for aterm, umon, y in s.d1[g]:
            out.add_d1(keys[g], aterm, umon, keys[y])
        for apb, rows in s.d2[g].items():
            for umon, y in rows:
                out.add_d2(keys[g], apb, umon, keys[y])
    return out


def restrict_summand(s, summand):
    out = Structure(s.left_signs, s.right_signs, s.n_vars, s.var_map)
    keep = {g for g in s.gens if s.info[g]["summand"] == summand}
    for g in s.gens:
        if g in keep:
            out.add_gen(g, **{k: s.info[g][k] for k in
                              ("name", "iota_l", "iota_r", "maslov", "alex2", "summand")})
    for g in keep:
        for aterm, umon, y in s.d1[g]:
            assert y in keep
            out.add_d1(g, aterm, umon, y)
        for apb, rows in s.d2[g].items():
            for umon, y in rows:
                assert y in keep
                out.add_d2(g, apb, umon, y)
    return out


def hat_structure(s):
    """Quotient by every module variable: keep only variable-free rows."""
    out = Structure(s.left_signs, s.right_signs, 0, {})
    for g in s.gens:
        out.add_gen(g, **{k: s.info[g][k] for k in
                          ("name", "iota_l", "iota_r", "maslov", "alex2", "summand")})
    for g in s.gens:
        for (amon, apb), umon, y in s.d1[g]:
            if umon == () and amon == ():
                out.add_d1(g, ((), apb), (), y)
        for apb, rows in s.d2[g].items():
            for umon, y in rows:
                if umon == ():
                    out.add_d2(g, apb, (), y)
    return out


def internal_complex(s):
    """Zero-input rows with idempotent algebra output, as a complex."""
    out = Structure("", "", s.n_vars, {})
    for g in s.gens:
        out.add_gen(g, **{k: s.info[g][k] for k in
                          ("name", "iota_l", "iota_r", "maslov", "alex2", "summand")})
    for g in s.gens:
        for (amon, apb), umon, y in s.d1[g]:
            if amon == () and all(a == b for a, b in apb):
                out.add_d1(g, ((), ()), umon, y)
    return out


# --- structure relations --------------------------------------------------

def _compose_left(signs, a1, a2):
    if signs == "":
        ok = al.pb_targets(a1[1]) == al.pb_sources(a2[1])
        return {(u_mul(a1[0], a2[0]), a2[1])} if ok else set()
    return al.multiply(signs, frozenset({a1}), frozenset({a2}))


def check_d1_squared(s):
    for x in s.gens:
        acc = {}
        for a1, u1, y in s.d1[x]:
            for a2, u2, z in s.d1[y]:
                for a in _compose_left(s.left_signs, a1, a2):
                    key = (a, u_mul(u1, u2), z)
                    acc[key] = acc.get(key, 0) ^ 1
            if s.left_signs:
                for a in al.diff_alg(s.left_signs, frozenset({a1})):
                    key = (a, u1, y)
                    acc[key] = acc.get(key, 0) ^ 1
        bad = [k for k, v in acc.items() if v]
        if bad:
            raise AssertionError(f"d1 relation fails at {s.name(x)}: {bad[:3]}")


def _basis_inputs(s, g):
    """Variable-free right-algebra basis elements accepted by g."""
    word = s.right_signs
    points = range(len(word) + 1)
    src = sorted(s.info[g]["iota_r"])
    for tgts in itertools.permutations(points, len(src)):
        yield al.pb_make(zip(src, tgts))


def check_one_input(s):
    word = s.right_signs
    for x in s.gens:
        for apb in _basis_inputs(s, x):
            acc = {}
            for u1, y in s._apply_aterm(x, (u_one(), apb)):
                for a2, u2, z in s.d1[y]:
                    key = (a2, u_mul(u1, u2), z)
                    acc[key] = acc.get(key, 0) ^ 1
            for a1, u1, y in s.d1[x]:
                for u2, z in s._apply_aterm(y, (u_one(), apb)):
                    key = (a1, u_mul(u1, u2), z)
                    acc[key] = acc.get(key, 0) ^ 1
            for amon, dpb in al.diff_alg(word, frozenset({(u_one(), apb)})):
                for u1, y in s._apply_aterm(x, (amon, dpb)):
                    iota = (u_one(), al.pb_make((p, p) for p in s.info[x]["iota_l"]))
                    key = (iota, u1, y)
                    acc[key] = acc.get(key, 0) ^ 1
            bad = [k for k, v in acc.items() if v]
            if bad:
                raise AssertionError(
                    f"one-input relation fails at {s.name(x)}, {apb}: {bad[:3]}")


def check_two_input(s):
    word = s.right_signs
    for x in s.gens:
        for apb1 in _basis_inputs(s, x):
            mid = al.pb_targets(apb1)
            out1 = s._apply_aterm(x, (u_one(), apb1))
            points = range(len(word) + 1)
            for tgts in itertools.permutations(points, len(mid)):
                apb2 = al.pb_make(zip(sorted(mid), tgts))
                acc = {}
                for u1, y in out1:
                    for u2, z in s._apply_aterm(y, (u_one(), apb2)):
                        key = (u_mul(u1, u2), z)
                        acc[key] = acc.get(key, 0) ^ 1
                prod = al.multiply(word, frozenset({(u_one(), apb1)}),
                                   frozenset({(u_one(), apb2)}))
                for aterm in prod:
                    for u1, y in s._apply_aterm(x, aterm):
                        acc[(u1, y)] = acc.get((u1, y), 0) ^ 1
                bad = [k for k, v in acc.items() if v]
                if bad:
                    raise AssertionError(
                        f"two-input relation fails at {s.name(x)}: {bad[:3]}")


def check_structure_relations(s, two_input=True):
    check_d1_squared(s)
    if s.right_signs != "" or any(s.d2[g] for g in s.gens):
        check_one_input(s)
        if two_input:
            check_two_input(s)
    return True


# --- boundedness ----------------------------------------------------------

def is_bounded(s, limit=64):
    """Certify that iterated d1 with consecutive products evaluated dies.

    Returns the certificate length; raises if inconclusive at the limit.
    """
    frontier = {}
    for x in s.gens:
        for aterm, umon, y in s.d1[x]:
            frontier.setdefault((x, y), set()).add(aterm)
    for n in range(1, limit + 1):
        if not frontier:
            return n
        nxt = {}
        for (x, y), aterms in frontier.items():
            for a2, umon, z in s.d1[y]:
                for a1 in aterms:
                    for a in _compose_left(s.left_signs, a1, a2):
                        nxt.setdefault((x, z), set()).add(a)
        frontier = nxt
    raise RuntimeError(f"boundedness inconclusive after {limit} steps")


# --- cancellation ----------------------------------------------------------

def _unit_arrows(d1_rows, info):
    for x in sorted(d1_rows, key=lambda g: info[g]["name"]):
        for (amon, apb), umon, y in sorted(d1_rows[x], key=repr):
            if amon == () and umon == () and y != x and all(a == b for a, b in apb):
                yield x, y


class CancelledModule:
    """One unit arrow cancelled out of a module with a right action.

    Wraps the inner structure; the reduced action sums zig-zag paths that
    pass through the cancelled pair without ever using the cancelled row.
    """

    def __init__(self, inner, x, y):
        self.inner = inner
        self.x = x
        self.y = y
        self.left_signs = inner.left_signs
        self.right_signs = inner.right_signs
        self.n_vars = inner.n_vars
        self.var_map = inner.var_map
        self.gens = [g for g in inner.gens if g not in (x, y)]
        self.info = {g: inner.info[g] for g in self.gens}

    def name(self, g):
        return self.info[g]["name"]

    def grading(self, g):
        return self.info[g]["maslov"], self.info[g]["alex2"]

    def is_complex(self):
        return self.inner.is_complex()

    def _inner_act_bar(self, g, seq):
        """Inner action with the cancelled row removed."""
        terms, viable = self.inner.act(g, seq)
        if g == self.x and not seq:
            iota = (u_one(), al.pb_make((p, p) for p in self.inner.info[g]["iota_l"]))
            terms = set(terms) ^ {(iota, u_one(), self.y)}
        return terms, viable

    def act(self, g, seq, _depth=0):
        if _depth > 4 * (len(seq) + len(self.inner.gens) + 2):
            raise RuntimeError("cancellation does not terminate")
        out = {}
        viable = not seq
        for cut in range(len(seq) + 1):
            head, tail = seq[:cut], seq[cut:]
            terms, inner_viable = self._inner_act_bar(g, head)
            if not tail and inner_viable:
                viable = True
            for aterm, umon, z in terms:
                if z == self.y:
                    sub, sub_viable = self.act(self.x, tail, _depth + 1)
                    if sub_viable:
                        viable = True
                    for a2, u2, w in sub:
                        for a in _compose_left(self.left_signs, aterm, a2):
                            key = (a, u_mul(umon, u2), w)
                            out[key] = out.get(key, 0) ^ 1
                elif z == self.x:
                    continue
                elif not tail:
                    key = (aterm, umon, z)
                    out[key] = out.get(key, 0) ^ 1
        return {k for k, v in out.items() if v}, viable

    def d1_rows(self, g):
        terms, _ = self.act(g, ())
        return terms


def cancel(s, consume=False):
    """Cancel unit arrows until none remain.

    Complexes and left-module structures are reduced explicitly; modules
    with a right action are wrapped lazily.
    """
    if s.right_signs == "" and not any(s.d2.get(g) for g in getattr(s, "gens", [])):
        return _cancel_explicit(s, consume=consume)
    current = s
    while True:
        rows = {g: current.act(g, ())[0] if isinstance(current, CancelledModule)
                else current.d1[g] for g in current.gens}
        pair = next(_unit_arrows(rows, current.info), None)
        if pair is None:
            return current
        current = CancelledModule(current, *pair)


def _is_unit_coeff(aterm, umon):
    amon, apb = aterm
    return amon == () and umon == () and all(a == b for a, b in apb)


def _cancel_explicit(s, consume=False):
    """Cancel unit arrows of a structure with no right action.

    Rows are re-encoded over small integers (interned coefficients and
    generator indices) so that the fill-in produced by large cancellations
    stays affordable. With consume=True the input structure's rows are
    released as they are read.
    """
    gens = list(s.gens)
    info = dict(s.info)
    index = {g: i for i, g in enumerate(gens)}
    coeffs = []            # cid -> (aterm, umon)
    coeff_ids = {}
    unit_cids = set()

    def coeff_id(aterm, umon):
        cid = coeff_ids.get((aterm, umon))
        if cid is None:
            cid = len(coeffs)
            coeff_ids[(aterm, umon)] = cid
            coeffs.append((aterm, umon))
            if _is_unit_coeff(aterm, umon):
                unit_cids.add(cid)
        return cid

    d1 = {}
    for g in gens:
        rows = s.d1.pop(g) if consume else s.d1[g]
        d1[index[g]] = {(coeff_id(aterm, umon), index[z])
                        for aterm, umon, z in rows}
    alive = set(range(len(gens)))
    # Incoming-edge index; entries may go stale and are re-checked on use.
    incoming = {i: set() for i in alive}
    for i in alive:
        for _, z in d1[i]:
            incoming[z].add(i)
    queue = collections.deque(
        (i, z) for i in range(len(gens))
        for cid, z in sorted(d1[i])
        if cid in unit_cids and z != i)
    while queue:
        x, y = queue.popleft()
        if x not in alive or y not in alive or x == y:
            continue
        unit = next((row for row in d1[x]
                     if row[1] == y and row[0] in unit_cids), None)
        if unit is None:
            continue
        into_y = [(g, row[0]) for g in sorted(incoming[y])
                  if g in alive and g not in (x, y)
                  for row in d1[g] if row[1] == y]
        out_x = [row for row in d1[x] if row != unit]
        for g, c1 in into_y:
            a1, u1 = coeffs[c1]
            for c2, z in out_x:
                if z == x or z == y:
                    continue
                a2, u2 = coeffs[c2]
                u12 = u_mul(u1, u2)
                for a in _compose_left(s.left_signs, a1, a2):
                    row = (coeff_id(a, u12), z)
                    if row in d1[g]:
                        d1[g].discard(row)
                    else:
                        d1[g].add(row)
                        incoming[z].add(g)
                        if row[0] in unit_cids and z != g:
                            queue.append((g, z))
        for dead in (x, y):
            for g in incoming[dead]:
                if g in alive and g not in (x, y):
                    d1[g] = {row for row in d1[g] if row[1] not in (x, y)}
            alive.discard(dead)
            del d1[dead], incoming[dead]
    assert not any(row[0] in unit_cids and row[1] != i
                   for i in alive for row in d1[i])
    out = Structure(s.left_signs, s.right_signs, s.n_vars, s.var_map)
    for i, g in enumerate(gens):
        if i in alive:
            out.add_gen(g, **{k: info[g][k] for k in
                              ("name", "iota_l", "iota_r", "maslov", "alex2", "summand")})
    for i, g in enumerate(gens):
        if i in alive:
            for cid, z in d1[i]:
                aterm, umon = coeffs[cid]
                out.add_d1(g, aterm, umon, gens[z])
    return out


# --- box product -----------------------------------------------------------

def box_tensor(mod, dstruct, max_depth=200):
    """Pair a right-action module with a left-output structure.

    Generators are pairs with matching idempotents at the shared wall; the
    zero-input rows sum the module action over algebra-output paths of the
    second factor.
    """
    assert mod.right_signs == dstruct.left_signs
    shift = mod.n_vars
    out = Structure(mod.left_signs, dstruct.right_signs,
                    mod.n_vars + dstruct.n_vars, mod.var_map)
    pairs = []
    for p in mod.gens:
        for q in dstruct.gens:
            if mod.info[p]["iota_r"] == dstruct.info[q]["iota_l"]:
                pairs.append((p, q))
    for p, q in pairs:
        ip, iq = mod.info[p], dstruct.info[q]
        out.add_gen((p, q), name=f"{ip['name']} * {iq['name']}",
                    iota_l=ip["iota_l"], iota_r=iq["iota_r"],
                    maslov=ip["maslov"] + iq["maslov"],
                    alex2=ip["alex2"] + iq["alex2"],
                    summand=iq["summand"])
    lookup = set(pairs)

    def remap(umon):
        return tuple((v + shift, e) for v, e in umon)

    for p, q in pairs:
        acc = {}
        stack = [(q, (), u_one(), 0)]
        while stack:
            q_cur, seq, u_acc, depth = stack.pop()
            if depth > max_depth:
                raise RuntimeError("box product path enumeration exceeded depth")
            terms, viable = mod.act(p, seq)
            for aterm, umon, p2 in terms:
                assert (p2, q_cur) in lookup
                key = (aterm, u_mul(umon, u_acc), (p2, q_cur))
                acc[key] = acc.get(key, 0) ^ 1
            if viable:
                for aterm_n, u_n, q2 in dstruct.d1[q_cur]:
                    stack.append((q2, seq + (aterm_n,),
                                  u_mul(u_acc, remap(u_n)), depth + 1))
        for key, parity in acc.items():
            if parity:
                out.add_d1((p, q), *key)
    # One-input rows pass through the second factor's right action.
    for p, q in pairs:
        for apb, rows in dstruct.d2[q].items():
            for umon, q2 in rows:
                if (p, q2) in lookup:
                    out.add_d2((p, q), apb, remap(umon), (p, q2))
    return out


# --- homology --------------------------------------------------------------

def _rank(rows):
    """Rank over the two-element field; rows are ints (bitsets)."""
    rank = 0
    pivots = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


def _monomials(n_vars, total):
    if total == 0:
        yield u_one()
        return
    if n_vars == 0:
        return
    for c in itertools.combinations_with_replacement(range(1, n_vars + 1), total):
        mon = u_one()
        for v in c:
            mon = u_mul(mon, u_power(v, 1))
        yield mon


def homology_table(s, u_cutoff=5):
    """Dimensions of the homology of a complex, by (maslov, alex2).

    Reports the bigradings reachable from generator bigradings by at most
    `u_cutoff` total variable powers.
    """
    assert s.is_complex()
    n = s.n_vars
    basis = {}
    for g in s.gens:
        m0, a0 = s.grading(g)
        for d in range(u_cutoff + 1):
            for mon in _monomials(n, d):
                basis.setdefault((m0 - 2 * d, a0 - 2 * d), []).append((mon, g))
    index = {bg: {el: i for i, el in enumerate(els)} for bg, els in basis.items()}

    def d_matrix(bg):
        src = basis.get(bg, [])
        tgt_bg = (bg[0] - 1, bg[1])
        tgt = index.get(tgt_bg, {})
        rows = []
        truncated = False
        for mon, g in src:
            row = 0
            for (amon, apb), umon, y in s.d1[g]:
                el = (u_mul(mon, umon), y)
                if el in tgt:
                    row ^= 1 << tgt[el]
                elif u_degree(el[0]) > u_cutoff:
                    truncated = True
            rows.append(row)
        return rows, truncated

    table = {}
    for bg, els in basis.items():
        rows, trunc_out = d_matrix(bg)
        rank_out = _rank(rows)
        up_bg = (bg[0] + 1, bg[1])
        rows_in, trunc_in = (d_matrix(up_bg) if up_bg in basis else ([], False))
        rank_in = _rank(rows_in)
        dim = len(els) - rank_out - rank_in
        if trunc_out or trunc_in:
            # Differentials leaving the reported window make this bigrading
            # unreliable; skip it rather than report a wrong dimension.
            continue
        if dim:
            table[bg] = dim
    return table


def tower_bottoms(s, u_cutoff=5):
    """Homology classes not in the image of any variable action.

    Returns a table (maslov, alex2) -> count of tower bottoms.
    """
    assert s.is_complex()
    table = homology_table(s, u_cutoff)
    n = s.n_vars
    basis = {}
    for g in s.gens:
        m0, a0 = s.grading(g)
        for d in range(u_cutoff + 1):
            for mon in _monomials(n, d):
                basis.setdefault((m0 - 2 * d, a0 - 2 * d), []).append((mon, g))
    index = {bg: {el: i for i, el in enumerate(els)} for bg, els in basis.items()}

    def vec(el, bg):
        return 1 << index[bg][el]

    def d_rows(bg):
        out = []
        tgt = index.get((bg[0] - 1, bg[1]), {})
        for mon, g in basis.get(bg, []):
            row = 0
            for (amon, apb), umon, y in s.d1[g]:
                el = (u_mul(mon, umon), y)
                if el in tgt:
                    row ^= 1 << tgt[el]
            out.append(row)
        return out

    def cycles(bg):
        """Basis of the cycle space as bitsets over the bigrading basis."""
        src = basis.get(bg, [])
        tgt = index.get((bg[0] - 1, bg[1]), {})
        rows = d_rows(bg)
        # Kernel via column reduction of the stacked [d | I] matrix.
        width = len(tgt) if tgt else 0
        aug = [(rows[i] << len(src)) | (1 << i) for i in range(len(src))]
        pivots = {}
        kern = []
        for row in aug:
            cur = row
            while True:
                top = cur >> len(src)
                if top == 0:
                    kern.append(cur & ((1 << len(src)) - 1))
                    break
                msb = top.bit_length() - 1
                if msb in pivots:
                    cur ^= pivots[msb]
                else:
                    pivots[msb] = cur
                    break
        return kern

    out = {}
    for bg in table:
        bdry = d_rows((bg[0] + 1, bg[1])) if (bg[0] + 1, bg[1]) in basis else []
        up = (bg[0] + 2, bg[1] + 2)
        u_cycle_images = []
        if up in basis:
            for cyc in cycles(up):
                for v in range(1, n + 1):
                    img = 0
                    for i, el in enumerate(basis[up]):
                        if cyc >> i & 1:
                            moved = (u_mul(el[0], u_power(v, 1)), el[1])
                            if moved in index.get(bg, {}):
                                img ^= vec(moved, bg)
                    if img:
                        u_cycle_images.append(img)
        base_rank = _rank(bdry)
        reached = _rank(bdry + u_cycle_images)
        bottoms = table[bg] - (reached - base_rank)
        if bottoms:
            out[bg] = bottoms
    return out


def doubled_table(table):
    """Re-key a table so both gradings are doubled integers."""
    return {(2 * m, a2): v for (m, a2), v in table.items()}


def shift_table(table2, dm2, da2):
    """Shift a doubled-key table; a shift by (s, t) sends (M, A) to (M-s, A-t)."""
    return {(m2 - dm2, a2 - da2): v for (m2, a2), v in table2.items()}
