"""Family specifications, builders and the family census.

A spec names one construction by this package's own coordinates: bundle
signatures, layering words, face identifications, plug parameters and the
index of each plug gluing among the valid ones.  Every spec has a textual
form accepted by :func:`parse_spec`.
"""
import os
import pickle
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from ..algebra.names import parse_name
from ..isosig import canonical_signature, from_signature
from .ibundles import enumerate_thin_ibundles
from .lsb import (BoundaryMismatch, LayeredBundleSpec, build_layered_surface_bundle,
                  layered_bundles, manifold_of_layered_bundle)
from .lst import InvalidParams, LstParams, build_layered_solid_torus
from .plugs import (NameInconsistent, NotAllowableBoundary, plug_core, plug_gluings,
                    plugged_fillings, prepare_core)
from .thick import NotAllowableAfterThickening, ThickCoreSpec, build_thick_core, thick_cores

InvalidLst = InvalidParams
CODE_VERSION = "1"

# Recovered from the six-tetrahedron census: the one minimal triangulation
# that no family produces.
E63 = "bgbbbcbkcdkcdxbbcfrcepcfhcfw"
E63_NAME = "T2xI/[0 1;1 0]"


class PlugMismatch(ValueError):
    pass


class SpecSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class PluggedSpec:
    """``core`` is a thin bundle signature (``family == "thin"``) or a
    :class:`ThickCoreSpec`; ``attach`` indexes the valid gluings of each
    plug onto its annulus."""
    family: str
    core: object
    lst1: LstParams
    lst2: LstParams
    attach: tuple = (0, 0)

    @property
    def size(self):
        return 6 + self.lst1.size + self.lst2.size

    def __str__(self):
        core = self.core if self.family == "thin" else _thick_text(self.core)
        return (f"plugged-{self.family} core={core} lst1={_lst_text(self.lst1)} "
                f"lst2={_lst_text(self.lst2)} attach={self.attach[0]},{self.attach[1]}")


@dataclass(frozen=True)
class ExceptionalSpec:
    label: str = "E63"
    sig: str = E63
    size: int = 6

    def __str__(self):
        return f"exceptional {self.label}"


def _lst_text(p):
    return "deg" if p.degenerate else f"{p.a},{p.b},{p.c}"


def _thick_text(c):
    return f"thick{c.variant}:{c.bundle}:{'.'.join(map(str, c.data))}"


# -- builders --------------------------------------------------------------------

@lru_cache(maxsize=None)
def _thin_core(sig):
    tri = from_signature(sig)
    if tri.size != 6:
        raise NotAllowableBoundary("plugged thin cores have six tetrahedra")
    return prepare_core(tri)


@lru_cache(maxsize=None)
def _core(family, core):
    if family == "thin":
        return _thin_core(core)
    return build_thick_core(core)


@lru_cache(maxsize=None)
def _gluings(family, core, which, params):
    c = _core(family, core)
    return tuple(plug_gluings(c.tri, c.boundary, which, params))


def _plug_pair(spec):
    out = []
    for which, params in enumerate((spec.lst1, spec.lst2)):
        opts = _gluings(spec.family, spec.core, which, params)
        k = spec.attach[which]
        if not 0 <= k < len(opts):
            raise PlugMismatch(f"{params} has {len(opts)} gluings onto annulus {which}")
        out.append(opts[k])
    return out


def build_plugged_thin(spec):
    g1, g2 = _plug_pair(spec)
    c = _core("thin", spec.core)
    return plug_core(c.tri, c.boundary, g1, g2)


def build_plugged_thick(spec):
    g1, g2 = _plug_pair(spec)
    c = _core("thick", spec.core)
    return plug_core(c.tri, c.boundary, g1, g2)


def build(spec):
    """Triangulation of any spec."""
    if isinstance(spec, LstParams):
        return build_layered_solid_torus(spec).tri
    if isinstance(spec, LayeredBundleSpec):
        return build_layered_surface_bundle(spec)
    if isinstance(spec, PluggedSpec):
        return build_plugged_thin(spec) if spec.family == "thin" else build_plugged_thick(spec)
    if isinstance(spec, ExceptionalSpec):
        return from_signature(spec.sig)
    raise TypeError(f"not a family spec: {spec!r}")


def manifold_of_spec(spec, tri=None):
    """Name of the manifold built by ``spec``, checked against its H_1."""
    from ..algebra.homology import first_homology
    from ..algebra.names import sfs
    if isinstance(spec, LayeredBundleSpec):
        return manifold_of_layered_bundle(spec, tri)
    if isinstance(spec, ExceptionalSpec):
        name = parse_name(E63_NAME)
    elif isinstance(spec, PluggedSpec):
        g1, g2 = _plug_pair(spec)
        c = _core(spec.family, spec.core)
        name = sfs(c.base, *c.fibres(g1, g2))
    else:
        raise TypeError(f"no manifold name for {spec!r}")
    h = first_homology(tri if tri is not None else build(spec))
    if name.homology() != h:
        raise NameInconsistent(f"{name} predicts {name.homology()}, triangulation has {h}")
    return name


# -- spec literals ---------------------------------------------------------------

def _kv(words):
    out = {}
    for w in words:
        if "=" not in w:
            raise SpecSyntaxError(f"expected key=value, got {w!r}")
        k, v = w.split("=", 1)
        out[k] = v
    return out


def _parse_lst(text):
    if text == "deg":
        return LstParams(1, 1, 2)
    parts = text.split(",")
    if len(parts) != 3:
        raise SpecSyntaxError(f"a layered solid torus needs three weights, got {text!r}")
    try:
        return LstParams.of(*(int(x) for x in parts))
    except ValueError as exc:
        raise SpecSyntaxError(str(exc)) from None


def parse_spec(text):
    """Parse a spec literal, e.g. ``lst 2,3,5``,
    ``lsb bundle=<sig> layer=e0,e2 id=0:3,17``,
    ``plugged-thin core=<sig> lst1=1,2,3 lst2=deg attach=0,0``,
    ``plugged-thick core=thick2:<sig>:5 lst1=deg lst2=deg`` or
    ``exceptional E63``."""
    words = text.split()
    if not words:
        raise SpecSyntaxError("empty spec")
    head, rest = words[0], words[1:]
    try:
        if head == "lst":
            return _parse_lst("".join(rest))
        if head == "exceptional":
            if rest != ["E63"]:
                raise SpecSyntaxError("the only registered exceptional triangulation is E63")
            return ExceptionalSpec()
        kv = _kv(rest)
        if head in ("lsb", "lkb"):
            layer = kv.get("layer", "-")
            layers = () if layer in ("-", "") else tuple(int(x.lstrip("e")) for x in layer.split(","))
            s, pq = kv.get("id", "0:0,0").split(":")
            p, q = pq.split(",")
            return LayeredBundleSpec(kv["bundle"], layers, (int(s), int(p), int(q)),
                                     "torus" if head == "lsb" else "klein")
        if head in ("plugged-thin", "plugged-thick"):
            attach = tuple(int(x) for x in kv.get("attach", "0,0").split(","))
            lst1, lst2 = _parse_lst(kv.get("lst1", "deg")), _parse_lst(kv.get("lst2", "deg"))
            if head == "plugged-thin":
                return PluggedSpec("thin", kv["core"], lst1, lst2, attach)
            kind, sig, data = kv["core"].split(":")
            core = ThickCoreSpec(int(kind[len("thick"):]), sig,
                                 tuple(int(x) for x in data.split(".")))
            return PluggedSpec("thick", core, lst1, lst2, attach)
    except (KeyError, ValueError) as exc:
        if isinstance(exc, SpecSyntaxError):
            raise
        raise SpecSyntaxError(f"bad spec {text!r}: {exc}") from None
    raise SpecSyntaxError(f"unknown spec kind {head!r}")


# -- family census ----------------------------------------------------------------

@dataclass(frozen=True)
class FamilyRecord:
    sig: str
    spec: object = field(compare=False)
    name: object = field(compare=False)
    families: tuple = field(compare=False, default=())
    size: int = field(compare=False, default=0)

    @property
    def family(self):
        return self.families[0]


FAMILY_ORDER = ("lsb", "thin", "thick", "exceptional")


def _lsb_task(args):
    bundle, nmax = args
    out = []
    for n in range(bundle.size, nmax + 1):
        for spec, tri in layered_bundles(bundle, n):
            out.append((canonical_signature(tri), spec, str(manifold_of_layered_bundle(spec, tri))))
    return out


def _plug_task(args):
    family, key, core, extra = args
    out = []
    for g1, g2, tri, name in plugged_fillings(core, extra):
        # record each gluing by its index among the valid ones
        attach = (_gluings(family, key, 0, g1.params).index(g1),
                  _gluings(family, key, 1, g2.params).index(g2))
        spec = PluggedSpec(family, key, g1.params, g2.params, attach)
        out.append((canonical_signature(tri), spec, str(name)))
    return out


def untwisted_bundles(nmax):
    """Untwisted thin I-bundles with two 2-face boundaries, up to ``nmax`` tets."""
    from ._thin import raw_thin_complexes
    from ..triangulation import Triangulation
    from .ibundles import classify_bundle
    found = {}
    for n in range(1, nmax + 1):
        for choices, adj in raw_thin_complexes(n, 4, two_sided=True):
            b = classify_bundle(Triangulation(adj), choices)
            if b is not None and b.kind == "untwisted" and b.boundary_faces == (2, 2):
                found.setdefault(b.sig, b)
    return [found[s] for s in sorted(found)]


def thin_cores():
    """``[(sig, PlugCore)]`` for the 6-tet twisted thin bundles with allowable boundary."""
    out = []
    for b in enumerate_thin_ibundles(6, kind="twisted", boundary_faces=4):
        try:
            out.append((b.sig, _thin_core(b.sig)))
        except NotAllowableBoundary:
            continue
    return out


def _cache_path(nmax):
    d = os.environ.get("CENSUS_CACHE_DIR")
    if not d:
        return None
    return os.path.join(d, f"families-n{nmax}-v{CODE_VERSION}.pkl")


def generate_family_census(nmax, jobs=1, use_cache=True):
    """All family triangulations with at most ``nmax`` tetrahedra, one
    :class:`FamilyRecord` per signature, sorted by signature."""
    path = _cache_path(nmax) if use_cache else None
    if path and os.path.exists(path):
        with open(path, "rb") as fh:
            return pickle.load(fh)
    tasks = []
    if nmax >= 1:
        tasks += [(_lsb_task, (b, nmax), "lsb") for b in untwisted_bundles(nmax)]
    if nmax >= 6:
        tasks += [(_plug_task, ("thin", sig, core, nmax - 6), "thin") for sig, core in thin_cores()]
        tasks += [(_plug_task, ("thick", spec, core, nmax - 6), "thick")
                  for spec, core in thick_cores()]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_run, [(f, a) for f, a, _ in tasks]))
    else:
        results = [f(a) for f, a, _ in tasks]
    merged = defaultdict(list)
    for (_, _, fam), res in zip(tasks, results):
        for sig, spec, name in res:
            merged[sig].append((FAMILY_ORDER.index(fam), str(spec), fam, spec, name))
    if nmax >= 6 and E63 is not None:
        merged[E63].append((3, "", "exceptional", ExceptionalSpec(), E63_NAME))
    records = []
    for sig in sorted(merged):
        entries = sorted(merged[sig], key=lambda e: e[:2])
        names = {e[4] for e in entries}
        if len(names) != 1:
            raise NameInconsistent(f"{sig} named {sorted(names)}")
        fams = tuple(dict.fromkeys(e[2] for e in entries))
        spec = entries[0][3]
        records.append(FamilyRecord(sig, spec, parse_name(entries[0][4]), fams, spec.size))
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "wb") as fh:
            pickle.dump(records, fh)
    return records


def _run(job):
    f, a = job
    return f(a)


def minimal_records(records):
    """Records whose size is the least size at which their manifold occurs."""
    least = {}
    for r in records:
        key = str(r.name)
        least[key] = min(least.get(key, r.size), r.size)
    return [r for r in records if r.size == least[str(r.name)]]


def family_counts(records):
    """``{(family, size): (triangulations, manifolds)}`` over the records,
    each triangulation counted in every family that produces it."""
    tri = Counter()
    man = defaultdict(set)
    for r in records:
        for fam in r.families:
            tri[fam, r.size] += 1
            man[fam, r.size].add(str(r.name))
    return {k: (tri[k], len(man[k])) for k in sorted(tri)}
