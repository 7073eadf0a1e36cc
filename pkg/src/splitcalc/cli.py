"""Command line front end: ``splitcalc <command> ...``.

Exit codes: 0 success or YES, 1 NO, 2 UNKNOWN, 64 usage error, 65 data error.
Every command prints a ``report/1`` block of ``key: value`` lines; ``--report
PATH`` also writes it to a file.  Commands that produce a graph print it in
``.gog`` form unless ``-o`` redirects it, and the report then goes to stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import gogfile, lattice
from .families import FAMILY_IDS, bs24_vertex_presentation, make_family
from .gog import (GraphOfGroups, InvalidInputError, RefinementError, TriState, UnpresentableError,
                  collapse, equivalent, find_redundant_vertices, fundamental_presentation,
                  is_minimal, is_reduced, refine, validate)
from .gog.equivalence import invariant_summary
from .invariants import abelianization, distinguish, standard_targets
from .words import WordSyntaxError

EXIT = {TriState.YES: 0, TriState.NO: 1, TriState.UNKNOWN: 2}
USAGE, DATAERR = 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Report:
    def __init__(self, command: str):
        self.lines = [("command", command)]
        self.graph_on_stdout = False

    def add(self, key: str, value) -> None:
        self.lines.append((key, str(value)))

    def text(self) -> str:
        return "report/1\n" + "".join(f"{k}: {v}\n" for k, v in self.lines)


def _load_graph(path: str, lenient: bool) -> tuple[gogfile.GogDocument, GraphOfGroups]:
    doc = gogfile.load(path, strict=not lenient)
    return doc, gogfile.to_graph(doc)


def _emit_graph(g: GraphOfGroups, out: str | None, stdout) -> bool:
    """Write the graph; True when it went to stdout."""
    text = gogfile.serialize(gogfile.from_graph(g))
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return False
    stdout.write(text)
    return True


def _tristate(report: Report, state: TriState) -> int:
    report.add("result", state)
    return EXIT[state]


def cmd_validate(args, report, stdout):
    _, g = _load_graph(args.file, args.lenient)
    diags = validate(g)
    for d in diags:
        report.add("diagnostic", d)
    if any(d.is_error for d in diags):
        return _tristate(report, TriState.NO)
    return _tristate(report, TriState.UNKNOWN if diags else TriState.YES)


def cmd_minimal(args, report, stdout):
    return _tristate(report, is_minimal(_load_graph(args.file, args.lenient)[1]))


def cmd_reduced(args, report, stdout):
    return _tristate(report, is_reduced(_load_graph(args.file, args.lenient)[1]))


def cmd_redundant(args, report, stdout):
    flagged = find_redundant_vertices(_load_graph(args.file, args.lenient)[1])
    for vid, conf in flagged:
        report.add("redundant", f"{vid} {conf}")
    if any(conf is TriState.YES for _, conf in flagged):
        return _tristate(report, TriState.YES)
    return _tristate(report, TriState.UNKNOWN if flagged else TriState.NO)


def cmd_collapse(args, report, stdout):
    _, g = _load_graph(args.file, args.lenient)
    edges = [e for e in args.edges.split(",") if e]
    h = collapse(g, edges, opaque="compose" if args.compose_opaque else "error")
    report.add("vertices", len(h.vertices))
    report.add("edges", len(h.edges))
    report.graph_on_stdout = _emit_graph(h, args.output, stdout)
    return 0


def cmd_refine(args, report, stdout):
    _, g = _load_graph(args.file, args.lenient)
    data = gogfile.refinement_from(gogfile.load(args.data, strict=not args.lenient), g)
    h = refine(g, data)
    report.add("vertices", len(h.vertices))
    report.add("edges", len(h.edges))
    report.graph_on_stdout = _emit_graph(h, args.output, stdout)
    return 0


def _invariant_lines(report: Report, g: GraphOfGroups) -> None:
    for k, v in invariant_summary(g).items():
        report.add(k, v)


def cmd_invariants(args, report, stdout):
    _, g = _load_graph(args.file, args.lenient)
    _invariant_lines(report, g)
    return 0


def cmd_presentation(args, report, stdout):
    _, g = _load_graph(args.file, args.lenient)
    tree = None if args.tree is None else [e for e in args.tree.split(",") if e]
    p = fundamental_presentation(g, tree)
    report.add("presentation", p.format())
    report.add("abelianization", abelianization(p))
    return 0


def cmd_equivalent(args, report, stdout):
    _, g1 = _load_graph(args.first, args.lenient)
    _, g2 = _load_graph(args.second, args.lenient)
    return _tristate(report, equivalent(g1, g2))


def cmd_family(args, report, stdout):
    if args.id == "example-1-4":
        if args.b is None:
            raise UsageError("family example-1-4 needs --b x,y,z")
        try:
            param = tuple(int(x) for x in args.b.split(","))
        except ValueError:
            raise UsageError(f"bad --b vector {args.b!r}") from None
    else:
        if args.n is None:
            raise UsageError(f"family {args.id} needs --n")
        param = args.n
    try:
        inst = make_family(args.id, param)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report.add("family", inst.family_id)
    report.add("parameter", ",".join(map(str, param)) if isinstance(param, tuple) else param)
    if args.id == "theta":
        idx = inst.certificate
        report.add("index", "inf" if idx == lattice.INFINITE else idx)
    elif args.id == "example-1-4":
        report.add("in_span", str(inst.certificate[0]).lower())
        report.add("in_root_closure", str(inst.certificate[1]).lower())
    else:
        report.add("certificate", inst.certificate)
    for note in inst.notes:
        report.add("note", note)
    if args.invariants:
        _invariant_lines(report, inst.graph)
        if args.id == "bs24":
            others = [k for k in range(1, 5) if k != args.n]
            for k in others:
                d = distinguish(bs24_vertex_presentation(args.n), bs24_vertex_presentation(k),
                                standard_targets(32))
                report.add(f"distinguish.{k}", d if d is not None else "none found")
    else:
        report.graph_on_stdout = _emit_graph(inst.graph, args.output, stdout)
    return 0


def _vectors(text: str) -> list[tuple[int, ...]]:
    out = []
    for item, _ in gogfile.split_top(text):
        if not item:
            continue
        body = item.strip().strip("()")
        out.append(tuple(int(x) for x in body.split(",")) if body else ())
    return out


def cmd_sandwich(args, report, stdout):
    torsion = tuple(int(x) for x in args.torsion.split(",")) if args.torsion else ()
    p = lattice.LatticeGroup.from_invariants(args.ambient, torsion)
    try:
        gens = _vectors(args.sub or "")
    except ValueError:
        raise UsageError(f"bad --sub vectors {args.sub!r}") from None
    if any(len(v) != p.ambient_rank for v in gens):
        raise UsageError(f"--sub vectors must have length {p.ambient_rank}")
    a = lattice.canonicalize(gens, p)
    rep = lattice.count_sandwich_classes(a, p)
    report.add("ambient", p)
    report.add("sub", a)
    report.add("root_closures", len(rep.root_closure_options))
    report.add("complement_ranks", f"{rep.complement_rank_range.start}..{rep.complement_rank_range.stop - 1}")
    report.add("classes", rep.class_count)
    for b in rep.witnesses:
        report.add("witness", b)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="splitcalc", description="Exact computations with graphs of groups.")
    p.add_argument("--report", metavar="PATH", help="also write the report to PATH")
    p.add_argument("--lenient", action="store_true", help="preserve unknown sections and keys")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, helptext in (("validate", cmd_validate, "check a graph of groups"),
                               ("minimal", cmd_minimal, "is the splitting minimal?"),
                               ("reduced", cmd_reduced, "is the splitting reduced?"),
                               ("redundant", cmd_redundant, "list redundant vertices"),
                               ("invariants", cmd_invariants, "print graph invariants")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.set_defaults(func=fn)

    s = sub.add_parser("presentation", help="fundamental group presentation")
    s.add_argument("file")
    s.add_argument("--tree", help="comma separated spanning tree edges")
    s.set_defaults(func=cmd_presentation)

    s = sub.add_parser("collapse", help="collapse a set of edges")
    s.add_argument("file")
    s.add_argument("--edges", required=True, help="comma separated edge ids")
    s.add_argument("--compose-opaque", action="store_true",
                   help="merge opaque labels into an opaque composite instead of failing")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_collapse)

    s = sub.add_parser("refine", help="refine a vertex by a one-edge splitting")
    s.add_argument("file")
    s.add_argument("--data", required=True, help=".gog file with the splitting and a [refinement] section")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_refine)

    s = sub.add_parser("equivalent", help="compare two graphs of groups")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_equivalent)

    s = sub.add_parser("family", help="build a member of an example family")
    s.add_argument("id", choices=FAMILY_IDS)
    s.add_argument("--n", type=int)
    s.add_argument("--b", help="vector for example-1-4, e.g. 0,1,0")
    s.add_argument("--invariants", action="store_true", help="report invariants instead of the graph")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("sandwich", help="count sandwich classes of A in P")
    s.add_argument("--ambient", type=int, required=True, help="free rank of P")
    s.add_argument("--torsion", help="comma separated torsion orders of P (placed last)")
    s.add_argument("--sub", help="generators of A, e.g. '(2,0), (0,3)'")
    s.set_defaults(func=cmd_sandwich)
    return p


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"splitcalc: {exc}\n")
        return USAGE
    report = Report(args.command)
    try:
        code = args.func(args, report, stdout)
    except UsageError as exc:
        stderr.write(f"splitcalc: {exc}\n")
        return USAGE
    except OSError as exc:
        stderr.write(f"splitcalc: {exc}\n")
        return DATAERR
    except gogfile.ParseError as exc:
        stderr.write(f"splitcalc: parse error: {exc}\n")
        return DATAERR
    except RefinementError as exc:
        stderr.write(f"splitcalc: {exc.code}: {exc}\n")
        return DATAERR
    except UnpresentableError as exc:
        stderr.write(f"splitcalc: UNPRESENTABLE: {exc}\n")
        return DATAERR
    except (InvalidInputError, WordSyntaxError) as exc:
        stderr.write(f"splitcalc: INVALID_INPUT: {exc}\n")
        return DATAERR
    text = report.text()
    # keep stdout parseable when it already carries a .gog document
    (stderr if report.graph_on_stdout else stdout).write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
