"""The census pipeline: enumerate, filter, classify.

Survivors of the pruned search are looked up in the family registry.  A
match at its manifold's least family size is a census record; a match at a
larger size is non-minimal.  Unmatched survivors are kept as quarantined
records unless a certificate proves them non-minimal (a 2-3/3-2 path to
fewer tetrahedra) or not P^2-irreducible (a fundamental group certificate).
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..algebra.homology import first_homology
from ..algebra.presentation import reducibility_certificate
from ..isosig import canonical_signature, from_signature
from ..moves import find_smaller
from ..surfaces import has_central_surface
from .graphs import enumerate_face_pairings
from .search import PruningConfig, gluings_to_triangulation, raw_gluings


@dataclass(frozen=True)
class Quarantined:
    reason: str
    homology: str = ""

    kind = "quarantined"

    def __str__(self):
        return f"Quarantined({self.reason})"


@dataclass(frozen=True)
class CensusRecord:
    sig: str
    tets: int
    homology: object
    has_central: bool
    classification: object
    spec: object = field(default=None, compare=False)

    @property
    def quarantined(self):
        return isinstance(self.classification, Quarantined)


@dataclass
class CensusReport:
    n: int
    records: list
    excluded: list      # (sig, reason) for provably non-minimal or reducible survivors
    survivors: int


def graph_survivors(args):
    """Closed non-orientable signatures realising one face pairing graph."""
    graph, cfg = args
    n = graph.size
    if n >= 3 and cfg.forbid_triple_glued_pairs and graph.has_triple_edge():
        return []
    pairs, out = raw_gluings(graph, cfg)
    sigs = set()
    for row in out:
        tri = gluings_to_triangulation(n, pairs, row)
        if not tri.is_closed() or not tri.is_valid() or not tri.is_connected():
            continue
        if tri.is_orientable():
            continue
        sigs.add(canonical_signature(tri))
    return sorted(sigs)


def enumerate_closed_triangulations(graph, cfg=PruningConfig()):
    """Closed valid non-orientable triangulations realising ``graph``."""
    return [from_signature(s) for s in graph_survivors((graph, cfg))]


def survivors(n, cfg=PruningConfig(), jobs=1):
    graphs = enumerate_face_pairings(n)
    work = [(g, cfg) for g in graphs]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(graph_survivors, work, chunksize=1))
    else:
        parts = [graph_survivors(w) for w in work]
    return sorted({s for p in parts for s in p})


def build_registry(n, jobs=1):
    """``{sig: FamilyRecord}`` of family triangulations up to ``n`` tetrahedra
    (the registered exceptional triangulation included)."""
    from ..families.registry import generate_family_census
    if n < 1:
        return {}
    return {r.sig: r for r in generate_family_census(n, jobs=jobs)}


def least_sizes(registry):
    out = {}
    for r in registry.values():
        key = str(r.name)
        out[key] = min(out.get(key, r.size), r.size)
    return out


def classify_record(tri, registry, least=None):
    """The registry's name for ``tri`` or :class:`Quarantined`."""
    sig = canonical_signature(tri)
    r = registry.get(sig)
    if r is not None:
        return r.name
    return Quarantined("no family match", str(first_homology(tri)))


def run_census_report(n, cfg=PruningConfig(), jobs=1, registry=None, budget=2000):
    if registry is None:
        registry = build_registry(n, jobs=jobs)
    least = least_sizes(registry)
    records, excluded = [], []
    sigs = survivors(n, cfg, jobs)
    for sig in sigs:
        tri = from_signature(sig)
        h = first_homology(tri)
        fam = registry.get(sig)
        if fam is not None:
            k = least[str(fam.name)]
            if k < n:
                excluded.append((sig, f"non-minimal: {fam.name} has a {k}-tetrahedron triangulation"))
                continue
            records.append(CensusRecord(sig, n, h, has_central_surface(tri), fam.name, fam.spec))
            continue
        cert = reducibility_certificate(tri)
        if cert is not None:
            excluded.append((sig, f"not P2-irreducible: {cert}"))
            continue
        smaller = find_smaller(tri, budget=budget)
        if smaller is not None:
            excluded.append((sig, f"non-minimal: moves reach {smaller.size} tetrahedra"))
            continue
        records.append(CensusRecord(sig, n, h, has_central_surface(tri),
                                    Quarantined("no family match", str(h))))
    return CensusReport(n, records, excluded, len(sigs))


def run_census(n, cfg=PruningConfig(), jobs=1, registry=None):
    """Census records with ``n`` tetrahedra, sorted by signature."""
    return run_census_report(n, cfg, jobs, registry).records
