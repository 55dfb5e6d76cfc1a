"""Canonical text forms for structures and dimension tables.

Structures serialize to canonical JSON: sorted keys, compact separators,
generators and map rows in sorted order, so equal structures produce
byte-identical text.  Dimension tables serialize to JSON, to TSV, or to
an aligned human-readable block; gradings are stored doubled and printed
as exact halves ("-1/2"), never as floats.
"""

import json

from . import algebra as al
from .homalg import Structure


def half_str(doubled):
    """Render a doubled grading as an exact integer or half string."""
    if doubled % 2 == 0:
        return str(doubled // 2)
    return f"{doubled}/2"


def parse_half(text):
    """Parse an exact integer or half string back to a doubled grading."""
    text = text.strip()
    if text.endswith("/2"):
        return int(text[:-2])
    return 2 * int(text)


def _mon_data(umon):
    return [[v, e] for v, e in sorted(umon)]


def _mon_load(data):
    return tuple((v, e) for v, e in data)


def _pb_data(apb):
    return [[s, t] for s, t in sorted(apb)]


def _pb_load(data):
    return al.pb_make((s, t) for s, t in data)


def structure_data(s):
    """Plain-data form of a structure, with deterministic ordering."""
    gens = []
    order = sorted(s.gens, key=s.name)
    for g in order:
        info = s.info[g]
        gens.append({
            "name": info["name"],
            "iota_l": sorted(info["iota_l"]),
            "iota_r": sorted(info["iota_r"]),
            "maslov": info["maslov"],
            "alexander2": info["alex2"],
            "summand": info["summand"],
        })
    maps = []
    for g in order:
        src = s.name(g)
        for (amon, apb), umon, y in s.d1[g]:
            maps.append({
                "kind": "d1", "source": src,
                "algebra_in": [],
                "u_monomial": _mon_data(umon),
                "algebra_out": [_mon_data(amon), _pb_data(apb)],
                "target": s.name(y),
            })
        for apb, rows in s.d2[g].items():
            for umon, y in rows:
                maps.append({
                    "kind": "d2", "source": src,
                    "algebra_in": _pb_data(apb),
                    "u_monomial": _mon_data(umon),
                    "algebra_out": [],
                    "target": s.name(y),
                })
    maps.sort(key=lambda row: json.dumps(row, sort_keys=True))
    data = {"generators": gens, "maps": maps}
    if s.gens or s.left_signs or s.right_signs or s.n_vars:
        data["left_signs"] = s.left_signs
        data["right_signs"] = s.right_signs
        data["n_vars"] = s.n_vars
        data["var_map"] = [[v, m] for v, m in sorted(s.var_map.items())]
    return data


def serialize_structure(s):
    """Canonical JSON text of a structure; byte-identical across runs."""
    return json.dumps(structure_data(s), sort_keys=True, separators=(",", ":"))


def parse_structure(text):
    """Rebuild a structure from its canonical JSON text.

    Generators are keyed by name; the result supports the same homology
    and pairing operations as a directly assembled structure.
    """
    data = json.loads(text)
    s = Structure(data.get("left_signs", ""), data.get("right_signs", ""),
                  data.get("n_vars", 0),
                  {v: m for v, m in data.get("var_map", [])})
    for row in data["generators"]:
        s.add_gen(row["name"], name=row["name"],
                  iota_l=frozenset(row["iota_l"]), iota_r=frozenset(row["iota_r"]),
                  maslov=row["maslov"], alex2=row["alexander2"],
                  summand=row["summand"])
    for row in data["maps"]:
        if row["kind"] == "d1":
            amon_data, apb_data = row["algebra_out"]
            s.add_d1(row["source"],
                     (_mon_load(amon_data), _pb_load(apb_data)),
                     _mon_load(row["u_monomial"]), row["target"])
        else:
            s.add_d2(row["source"], _pb_load(row["algebra_in"]),
                     _mon_load(row["u_monomial"]), row["target"])
    return s


def table_rows(table2):
    """Sorted (maslov2, alexander2, dim) rows of a doubled-key table."""
    return [(m2, a2, table2[(m2, a2)]) for m2, a2 in sorted(table2)]


def table_tsv(table2):
    lines = ["maslov\talexander\tdim"]
    for m2, a2, dim in table_rows(table2):
        lines.append(f"{half_str(m2)}\t{half_str(a2)}\t{dim}")
    return "\n".join(lines) + "\n"


def table_json(table2):
    rows = [{"maslov": half_str(m2), "alexander": half_str(a2), "dim": dim}
            for m2, a2, dim in table_rows(table2)]
    return json.dumps(rows, sort_keys=True, separators=(",", ":")) + "\n"


def table_pretty(table2, title="dimensions"):
    rows = table_rows(table2)
    lines = [title, "maslov  alexander  dim"]
    for m2, a2, dim in rows:
        lines.append(f"{half_str(m2):>6}  {half_str(a2):>9}  {dim:>3}")
    if not rows:
        lines.append("(empty)")
    return "\n".join(lines) + "\n"


def format_table(table2, fmt, title="dimensions"):
    if fmt == "tsv":
        return table_tsv(table2)
    if fmt == "json":
        return table_json(table2)
    return table_pretty(table2, title)
