"""Command-line interface.

Subcommands::

    norcensus census --tets N [--prune default|none] [--out DIR] [--jobs K]
    norcensus families --max N [--minimal] [--jobs K]
    norcensus construct SPEC...
    norcensus homology TRI
    norcensus isosig TRI
    norcensus central-surfaces TRI
    norcensus report [RECORDS.csv ...] [--families N]

``TRI`` is a signature, a file in the text triangulation format, or ``-``
for standard input.  Exit codes: 0 success, 2 quarantined records at
N <= 7, 64 usage error, 65 data error.
"""
import argparse
import csv
import os
import sys
from collections import defaultdict
from dataclasses import dataclass

EX_QUARANTINE = 2
EX_USAGE = 64
EX_DATAERR = 65


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _strip_name(text):
    # construct appends a "name ..." line after the triangulation
    return "\n".join(ln for ln in text.splitlines() if not ln.startswith("name "))


def load_triangulation(arg):
    """A triangulation from a signature, a text file or ``-`` (stdin)."""
    from .isosig import MalformedSignature, from_signature
    from .triangulation import TriangulationError, from_text
    try:
        if arg == "-":
            return from_text(_strip_name(sys.stdin.read()))
        if os.path.exists(arg):
            with open(arg, encoding="utf-8") as fh:
                return from_text(_strip_name(fh.read()))
        return from_signature(arg)
    except (TriangulationError, MalformedSignature, ValueError) as exc:
        raise DataError(f"cannot read triangulation {arg!r}: {exc}") from None


# -- report ---------------------------------------------------------------------

@dataclass(frozen=True)
class ReportRow:
    name: str
    tets: int
    count: int
    homology: str


RECORD_FIELDS = ("sig", "tets", "homology", "hasCentral", "classification")


def report_table(rows):
    """One :class:`ReportRow` per manifold from ``(name, tets, homology)``
    triples; ``tets`` is the least size seen and ``count`` the number of
    triples at that size."""
    groups = defaultdict(list)
    for name, tets, h in rows:
        groups[name].append((int(tets), h))
    out = []
    for name, items in groups.items():
        least = min(t for t, _ in items)
        hs = {h for t, h in items}
        if len(hs) != 1:
            raise DataError(f"{name} recorded with homologies {sorted(hs)}")
        out.append(ReportRow(name, least, sum(1 for t, _ in items if t == least), hs.pop()))
    return sorted(out, key=lambda r: (r.tets, _name_key(r.name)))


def _name_key(name):
    # torus bundles first, then RP2 before Dbar, as in the published table
    order = ("T2xI", "SFS(RP2", "SFS(Dbar")
    head = next((i for i, p in enumerate(order) if name.startswith(p)), len(order))
    return head, name


def write_report(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["tetrahedra", "manifold", "triangulations", "homology"])
    for r in rows:
        w.writerow([r.tets, r.name, r.count, r.homology])


def read_records(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rd = csv.DictReader(fh)
        if rd.fieldnames is None or tuple(rd.fieldnames) != RECORD_FIELDS:
            raise DataError(f"{path}: expected header {','.join(RECORD_FIELDS)}")
        return list(rd)


def write_records(records, outdir):
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, "records.csv"), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RECORD_FIELDS)
        for r in records:
            w.writerow([r.sig, r.tets, str(r.homology), "true" if r.has_central else "false",
                        str(r.classification)])
    with open(os.path.join(outdir, "sigs.txt"), "w", encoding="utf-8") as fh:
        for s in sorted(r.sig for r in records):
            fh.write(s + "\n")


# -- subcommands ------------------------------------------------------------------

def cmd_census(args, out):
    from .census import PruningConfig, run_census_report
    cfg = PruningConfig() if args.prune == "default" else PruningConfig.none()
    rep = run_census_report(args.tets, cfg, jobs=args.jobs)
    if args.out:
        write_records(rep.records, args.out)
    for r in rep.records:
        print(f"{r.sig},{r.homology},{r.classification}", file=out)
    nq = sum(r.quarantined for r in rep.records)
    print(f"# {args.tets} tetrahedra: {rep.survivors} survivors, {len(rep.records)} records, "
          f"{len(rep.excluded)} excluded, {nq} quarantined", file=sys.stderr)
    return EX_QUARANTINE if nq and args.tets <= 7 else 0


def cmd_families(args, out):
    from .families.registry import generate_family_census, minimal_records
    recs = generate_family_census(args.max, jobs=args.jobs)
    if args.minimal:
        recs = minimal_records(recs)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["sig", "tets", "families", "manifold", "spec"])
    for r in recs:
        w.writerow([r.sig, r.size, "+".join(r.families), str(r.name), str(r.spec)])
    return 0


def cmd_construct(args, out):
    from .families.registry import SpecSyntaxError, build, manifold_of_spec, parse_spec
    from .families.lst import InvalidParams, LstParams, build_layered_solid_torus
    from .triangulation import TriangulationError, to_text
    text = " ".join(args.spec)
    try:
        spec = parse_spec(text)
    except SpecSyntaxError as exc:
        print(f"construct: {exc}", file=sys.stderr)
        return EX_USAGE
    try:
        if isinstance(spec, LstParams):
            tri = build_layered_solid_torus(spec).tri
            name = str(spec)
        else:
            tri = build(spec)
            name = str(manifold_of_spec(spec, tri))
    except (TriangulationError, InvalidParams, ValueError, AssertionError) as exc:
        raise DataError(f"cannot build {text!r}: {exc}") from None
    out.write(to_text(tri))
    print(f"name {name}", file=out)
    return 0


def cmd_homology(args, out):
    from .algebra.homology import first_homology
    print(first_homology(load_triangulation(args.tri)), file=out)
    return 0


def cmd_isosig(args, out):
    from .isosig import canonical_signature
    try:
        print(canonical_signature(load_triangulation(args.tri)), file=out)
    except ValueError as exc:
        raise DataError(str(exc)) from None
    return 0


def cmd_central_surfaces(args, out):
    from .surfaces import enumerate_central_surfaces
    for s in enumerate_central_surfaces(load_triangulation(args.tri)):
        print(s, file=out)
    return 0


def cmd_report(args, out):
    rows = []
    for path in args.records:
        for rec in read_records(path):
            if rec["classification"].startswith("Quarantined"):
                continue
            rows.append((rec["classification"], int(rec["tets"]), rec["homology"]))
    if args.families:
        from .algebra.homology import first_homology
        from .families.registry import build, generate_family_census, minimal_records
        seen = {r[0] for r in rows}
        for r in minimal_records(generate_family_census(args.families, jobs=args.jobs)):
            if r.size == args.families and str(r.name) not in seen:
                rows.append((str(r.name), r.size, str(first_homology(build(r.spec)))))
    write_report(report_table(rows), out)
    return 0


def build_parser():
    p = _Parser(prog="norcensus", description="Census of closed non-orientable "
                "P2-irreducible 3-manifold triangulations.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("census", help="run the pruned census at one size")
    c.add_argument("--tets", type=int, required=True)
    c.add_argument("--prune", choices=("default", "none"), default="default")
    c.add_argument("--out", help="directory for records.csv and sigs.txt")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_census)

    f = sub.add_parser("families", help="list family triangulations")
    f.add_argument("--max", type=int, required=True)
    f.add_argument("--minimal", action="store_true",
                   help="only triangulations at their manifold's least size")
    f.add_argument("--jobs", type=int, default=1)
    f.set_defaults(func=cmd_families)

    k = sub.add_parser("construct", help="build a triangulation from a spec literal")
    k.add_argument("spec", nargs="+")
    k.set_defaults(func=cmd_construct)

    for name, func, text in (("homology", cmd_homology, "print H1"),
                             ("isosig", cmd_isosig, "print the canonical signature"),
                             ("central-surfaces", cmd_central_surfaces,
                              "list central normal surfaces")):
        s = sub.add_parser(name, help=text)
        s.add_argument("tri")
        s.set_defaults(func=func)

    r = sub.add_parser("report", help="per-manifold summary table as CSV")
    r.add_argument("records", nargs="*", help="records.csv files written by census")
    r.add_argument("--families", type=int, metavar="N",
                   help="add family manifolds whose least size is N")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_report)
    return p


def cmd_dispatch(argv=None, out=None):
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    if getattr(args, "jobs", 1) < 1 or getattr(args, "tets", 1) < 0:
        print("norcensus: --jobs must be positive and --tets non-negative", file=sys.stderr)
        return EX_USAGE
    try:
        return args.func(args, out)
    except (DataError, OSError) as exc:
        print(f"norcensus: {exc}", file=sys.stderr)
        return EX_DATAERR


def main():
    sys.exit(cmd_dispatch())


if __name__ == "__main__":
    main()
