"""Thickened cores for the plugged thick family.

Both variants produce a six-tetrahedron twisted product with an allowable
four-face boundary, which is then plugged exactly like a thin core.

(i)  a 3-tet twisted bundle with a 2-face boundary receives a triangular
     prism (3 tets): one rectangle of the prism is glued to the old
     boundary and its top and bottom triangles are identified.
(ii) a 5-tet twisted bundle with a 4-face boundary receives one layering.
"""
from dataclasses import dataclass
from itertools import permutations, product

from ..algebra.homology import first_homology
from ..isosig import canonical_signature, from_signature
from ..perm import INDEX
from ..triangulation import TriangulationBuilder, TriangulationError, layer_on_edge
from ._thin import raw_thin_complexes
from .ibundles import classify_bundle
from .plugs import NotAllowableBoundary, prepare_core


class NotAllowableAfterThickening(ValueError):
    pass


# prism ABC (top) over DEF (bottom), cut into three tetrahedra
PRISM_TETS = ("ABCD", "BCDE", "CDEF")
PRISM_RECTANGLES = (("ABD", "BDE"), ("BCE", "CEF"), ("ACD", "CDF"))
PRISM_TOP, PRISM_BOTTOM = "ABC", "DEF"


def _locate(face, skip=None):
    for i, labels in enumerate(PRISM_TETS):
        if i != skip and set(face) <= set(labels):
            missing = [v for v in range(4) if labels[v] not in face][0]
            return i, missing
    raise KeyError(face)


def _label_join(bld, off, f1, f2, corr):
    """Glue prism face ``f1`` onto prism face ``f2``; ``corr`` maps labels.
    An internal face (``f1 == f2``) joins the two tetrahedra sharing it."""
    t1, m1 = _locate(f1)
    t2, m2 = _locate(f2, skip=t1 if f1 == f2 else None)
    l1, l2 = PRISM_TETS[t1], PRISM_TETS[t2]
    perm = [0] * 4
    for v in range(4):
        perm[v] = m2 if v == m1 else l2.index(corr[l1[v]])
    bld.join(off + t1, m1, off + t2, tuple(perm))


def _prism(bld):
    off = bld.size
    for _ in PRISM_TETS:
        bld.new_tet()
    # internal faces: BCD between tets 0 and 1, CDE between tets 1 and 2
    _label_join(bld, off, "BCD", "BCD", {x: x for x in "ABCDEF"})
    _label_join(bld, off, "CDE", "CDE", {x: x for x in "ABCDEF"})
    return off


@dataclass(frozen=True, order=True)
class ThickCoreSpec:
    """``variant`` 1: ``(rect, top, g0, g1)`` choose the prism rectangle, the
    top-to-bottom correspondence and the two face maps onto the old
    boundary.  ``variant`` 2: ``(edge,)`` is the layered boundary edge class."""
    variant: int
    bundle: str
    data: tuple

    def __str__(self):
        return f"thick{self.variant} bundle={self.bundle} data={','.join(map(str, self.data))}"


def _variant1(bundle_sig, data):
    rect, top, g0, g1 = data
    core = from_signature(bundle_sig)
    bfaces = [(t, f) for t in range(core.size) for f in range(4) if core.raw(t, f) is None]
    if len(bfaces) != 2:
        raise NotAllowableAfterThickening("variant (i) needs a 2-face boundary")
    bld = TriangulationBuilder(core)
    off = _prism(bld)
    images = list(permutations(PRISM_BOTTOM))[top]
    _label_join(bld, off, PRISM_TOP, PRISM_BOTTOM, dict(zip(PRISM_TOP, images)))
    for face, g in zip(PRISM_RECTANGLES[rect], (g0, g1)):
        t0, f0 = bfaces[g // 6]
        pt, pm = _locate(face)
        vs = [v for v in range(4) if v != pm]
        img = list(permutations([v for v in range(4) if v != f0]))[g % 6]
        perm = [0] * 4
        perm[pm] = f0
        for a, b in zip(vs, img):
            perm[a] = b
        bld.join(off + pt, pm, t0, tuple(perm))
    return bld.freeze()


def build_thick_core(spec):
    """The six-tetrahedron core of ``spec``; raises if it is not allowable."""
    try:
        if spec.variant == 1:
            tri = _variant1(spec.bundle, spec.data)
        else:
            tri = layer_on_edge(from_signature(spec.bundle), spec.data[0])
    except TriangulationError as exc:
        raise NotAllowableAfterThickening(str(exc)) from None
    if tri.size != 6 or not tri.is_valid() or str(first_homology(tri)) != "Z + Z":
        raise NotAllowableAfterThickening("thickening is not a twisted product")
    try:
        core = prepare_core(tri)
    except NotAllowableBoundary as exc:
        raise NotAllowableAfterThickening(str(exc)) from None
    return core


def _twisted(n, faces):
    out = {}
    for ch, adj in raw_thin_complexes(n, faces):
        from ..triangulation import Triangulation
        b = classify_bundle(Triangulation(adj), ch)
        if b is not None and b.kind == "twisted":
            out.setdefault(b.sig, b)
    return [out[s] for s in sorted(out)]


def thick_cores():
    """``[(spec, PlugCore)]`` for every distinct thickened core."""
    found = {}
    for b in _twisted(3, 2):
        for rect, top, g0, g1 in product(range(3), range(6), range(12), range(12)):
            if g0 // 6 == g1 // 6:
                continue
            spec = ThickCoreSpec(1, b.sig, (rect, top, g0, g1))
            try:
                core = build_thick_core(spec)
            except NotAllowableAfterThickening:
                continue
            found.setdefault(canonical_signature(core.tri), (spec, core))
    for b in _twisted(5, 4):
        tri = from_signature(b.sig)
        sk = tri.skeleton
        for cls in range(len(sk.edge_classes)):
            if not sk.edge_boundary[cls]:
                continue
            spec = ThickCoreSpec(2, b.sig, (cls,))
            try:
                core = build_thick_core(spec)
            except (NotAllowableAfterThickening, ValueError):
                continue
            found.setdefault(canonical_signature(core.tri), (spec, core))
    return [found[s] for s in sorted(found)]
