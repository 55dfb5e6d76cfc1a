"""Command-line surface for the tangle homology pipeline.

Subcommands: `compute` builds the module of a tangle decomposition,
`pair` glues two inputs with the box product, `homology` reports the
dimension table of a closed decomposition (optionally rendering a figure
next to the delimited output), `crosscheck` runs the two map engines
against each other, `grid-tilde` runs the closed-grid oracle, and
`check` verifies the structure relations.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input
error.  All output is deterministic byte for byte.
"""

import argparse
import json
import sys

from . import gridengine, homalg, serialize, tangle


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tanglefloer",
        description="compute combinatorial tangle homology invariants")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_flavor(p):
        p.add_argument("--flavor", choices=("hat", "minus"), default="minus")

    p = sub.add_parser("compute", help="build the module of a decomposition")
    p.add_argument("path")
    add_flavor(p)
    p.add_argument("--summand", type=int, default=None,
                   help="restrict to one strand-count summand")
    p.add_argument("--aliases", default=None,
                   help="JSON file renaming canonical generator names")

    p = sub.add_parser("pair", help="box-pair two decompositions or structures")
    p.add_argument("left")
    p.add_argument("right")
    add_flavor(p)

    p = sub.add_parser("homology", help="dimension table of a closed decomposition")
    p.add_argument("path")
    add_flavor(p)
    p.add_argument("--u-cutoff", type=int, default=5)
    p.add_argument("--format", choices=("json", "tsv", "pretty"), default="pretty")
    p.add_argument("--plot", default=None, metavar="FILE",
                   help="also render the table as a figure to FILE")

    p = sub.add_parser("crosscheck", help="compare the two map engines")
    p.add_argument("path")
    p.add_argument("--u-degree", type=int, default=2)

    p = sub.add_parser("grid-tilde", help="closed-grid oracle homology")
    p.add_argument("path")
    p.add_argument("--format", choices=("json", "tsv", "pretty"), default="pretty")

    p = sub.add_parser("check", help="verify the structure relations")
    p.add_argument("path")
    p.add_argument("--skip-two-input", action="store_true")
    return parser


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_decomposition(path):
    text = _read(path)
    if path.endswith(".json"):
        return tangle.parse_json(text)
    return tangle.parse_text(text)


def _load_structure(path):
    if path.endswith(".ctjson"):
        return serialize.parse_structure(_read(path))
    return homalg.assemble(_load_decomposition(path))


def _apply_aliases(text, alias_path):
    aliases = json.loads(_read(alias_path))
    data = json.loads(text)
    for row in data["generators"]:
        row["name"] = aliases.get(row["name"], row["name"])
    for row in data["maps"]:
        row["source"] = aliases.get(row["source"], row["source"])
        row["target"] = aliases.get(row["target"], row["target"])
    data["generators"].sort(key=lambda row: row["name"])
    data["maps"].sort(key=lambda row: json.dumps(row, sort_keys=True))
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _cmd_compute(args, out):
    s = homalg.assemble(_load_decomposition(args.path))
    if args.summand is not None:
        s = homalg.restrict_summand(s, args.summand)
    if args.flavor == "hat":
        s = homalg.hat_structure(s)
    text = serialize.serialize_structure(s)
    if args.aliases:
        text = _apply_aliases(text, args.aliases)
    print(text, file=out)
    return 0


def _cmd_pair(args, out):
    left = _load_structure(args.left)
    right = _load_structure(args.right)
    paired = homalg.box_tensor(left, right)
    if args.flavor == "hat":
        paired = homalg.hat_structure(paired)
    print(serialize.serialize_structure(paired), file=out)
    return 0


def _cmd_homology(args, out):
    dec = _load_decomposition(args.path)
    if dec.left_signs or dec.right_signs:
        raise ValueError("homology needs a closed decomposition "
                         f"(boundaries {dec.left_signs!r}, {dec.right_signs!r})")
    # The invariant of a closed decomposition lives in the summand whose
    # strand count on the last wall is half the boundary size.
    s = homalg.restrict_summand(homalg.assemble(dec),
                                len(dec.right_signs) // 2)
    if args.flavor == "hat":
        complex_ = homalg.internal_complex(homalg.hat_structure(s))
        table = homalg.doubled_table(homalg.homology_table(complex_, 0))
        title = "hat homology"
    else:
        complex_ = homalg.internal_complex(s)
        table = homalg.doubled_table(homalg.tower_bottoms(complex_, args.u_cutoff))
        title = "variable-tower bottoms"
    print(serialize.format_table(table, args.format, title), end="", file=out)
    if args.plot:
        from . import plot
        plot.render_table(table, args.plot, title)
    return 0


def _cmd_crosscheck(args, out):
    dec = _load_decomposition(args.path)
    report = gridengine.crosscheck(dec, args.u_degree)
    print(f"{len(report)} discrepancies", file=out)
    for record in sorted(map(repr, report)):
        print(record, file=out)
    return 0


def _cmd_grid_tilde(args, out):
    n, xs, os_ = gridengine.parse_grid(_read(args.path))
    table = homalg.doubled_table(gridengine.classical_grid_tilde(n, xs, os_))
    print(serialize.format_table(table, args.format, "grid homology"),
          end="", file=out)
    return 0


def _cmd_check(args, out):
    s = _load_structure(args.path)
    homalg.check_structure_relations(s, two_input=not args.skip_two_input)
    print("relations pass", file=out)
    return 0


_COMMANDS = {
    "compute": _cmd_compute,
    "pair": _cmd_pair,
    "homology": _cmd_homology,
    "crosscheck": _cmd_crosscheck,
    "grid-tilde": _cmd_grid_tilde,
    "check": _cmd_check,
}


def entry(argv=None, out=None):
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return _COMMANDS[args.command](args, out)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


def main():
    raise SystemExit(entry())


if __name__ == "__main__":
    main()
