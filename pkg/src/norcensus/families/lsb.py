"""Layered surface bundles.

An untwisted thin I-bundle whose two boundary surfaces each have two faces
is thickened by layerings on its upper boundary and then closed by gluing
the lower boundary onto the upper one.  The result is a surface bundle over
the circle; for torus fibres its monodromy is read off from the images of
the boundary edges in H_1 of the layered product.
"""
from dataclasses import dataclass
from itertools import product

from ..algebra.homology import _oriented_edge, edge_classes_in_homology, first_homology
from ..algebra.names import TorusBundle, det, sfs
from ..isosig import canonical_signature, from_signature
from ..perm import S4
from ..triangulation import TriangulationBuilder, TriangulationError, layer_on_edge
from .ibundles import boundary_components
from .plugs import NameInconsistent


class BoundaryMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LayeredBundleSpec:
    """``bundle`` is the signature of the thin I-bundle; ``layers`` picks,
    at each step, one of the three upper boundary edges (sorted by edge
    class); ``identification`` is ``(swap, p0, p1)``: lower face ``i`` goes
    to upper face ``i ^ swap`` by S4 permutation index ``p_i``."""
    bundle: str
    layers: tuple = ()
    identification: tuple = (0, 0, 0)
    surface: str = "torus"

    @property
    def size(self):
        return from_signature(self.bundle).size + len(self.layers)

    def __str__(self):
        word = ",".join(f"e{k}" for k in self.layers) or "-"
        s, p, q = self.identification
        kind = "lsb" if self.surface == "torus" else "lkb"
        return f"{kind} bundle={self.bundle} layer={word} id={s}:{p},{q}"


# H_1 determines each of the four non-orientable flat manifolds
FLAT_BY_HOMOLOGY = {
    "Z + Z": lambda: TorusBundle((0, 1, 1, 0)),
    "Z + Z + Z_2": lambda: TorusBundle((1, 0, 0, -1)),
    "Z + Z_4": lambda: sfs("RP2", (2, 1), (2, 1)),
    "Z + Z_2 + Z_2": lambda: sfs("Dbar", (2, 1), (2, 1)),
}


def _sides(tri):
    comps = boundary_components(tri)
    if len(comps) != 2 or any(len(c) != 2 for c in comps):
        raise BoundaryMismatch("bundle needs two boundary surfaces of two faces each")
    return comps


def _top_edges(tri, faces):
    sk = tri.skeleton
    return sorted({sk.edge_of[t][e] for t, f in faces
                   for e, (a, b) in enumerate(((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
                   if f not in (a, b)})


def layered_product(bundle_tri, layers):
    """Apply the layering word to the upper boundary; returns
    ``(tri, lower_faces, upper_faces)``."""
    tri = bundle_tri
    lower, upper = _sides(tri)
    for k in layers:
        edges = _top_edges(tri, upper)
        if not 0 <= k < len(edges):
            raise BoundaryMismatch(f"layer choice {k} out of range")
        try:
            tri = layer_on_edge(tri, edges[k])
        except TriangulationError as exc:
            raise BoundaryMismatch(str(exc)) from None
        comps = boundary_components(tri)
        upper = [c for c in comps if c != lower]
        if len(upper) != 1:
            raise BoundaryMismatch("layering merged the boundary surfaces")
        upper = upper[0]
    return tri, lower, upper


def _face_perms(f0, f1):
    return [i for i, p in enumerate(S4) if p[f0] == f1]


def identifications(lower, upper):
    """All 72 candidate face identifications ``(swap, p0, p1)``."""
    out = []
    for swap in (0, 1):
        tgt = upper if not swap else upper[::-1]
        for p0, p1 in product(_face_perms(lower[0][1], tgt[0][1]),
                              _face_perms(lower[1][1], tgt[1][1])):
            out.append((swap, p0, p1))
    return out


def _close(tri, lower, upper, ident):
    swap, p0, p1 = ident
    tgt = upper if not swap else upper[::-1]
    bld = TriangulationBuilder(tri)
    try:
        for (t, f), (t2, f2), p in zip(lower, tgt, (p0, p1)):
            if S4[p][f] != f2:
                raise BoundaryMismatch("permutation does not carry face to face")
            bld.join(t, f, t2, S4[p])
        out = bld.freeze()
    except TriangulationError as exc:
        raise BoundaryMismatch(str(exc)) from None
    if not out.is_valid() or not out.is_closed():
        raise BoundaryMismatch("identification does not match the boundary edge pattern")
    return out


def _monodromy(tri, lower, tgt, perms):
    # images of the lower edges in H_1 of the layered product, before gluing
    rank, vec, _ = edge_classes_in_homology(tri)
    if rank != 2:
        return None
    sk = tri.skeleton
    pairs = []
    for (t, f), (t2, _), p in zip(lower, tgt, perms):
        vs = [v for v in range(4) if v != f]
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = vs[i], vs[j]
                c, s = _oriented_edge(sk, t, a, b)
                c2, s2 = _oriented_edge(sk, t2, S4[p][a], S4[p][b])
                pairs.append(([s * x for x in vec[c]], [s2 * x for x in vec[c2]]))
    for (x1, y1), (x2, y2) in product(pairs, pairs):
        d = x1[0] * x2[1] - x1[1] * x2[0]
        if abs(d) != 1:
            continue
        # A = Y X^-1 with columns x1, x2
        xi = (x2[1] * d, -x2[0] * d, -x1[1] * d, x1[0] * d)
        a = (y1[0] * xi[0] + y2[0] * xi[2], y1[0] * xi[1] + y2[0] * xi[3],
             y1[1] * xi[0] + y2[1] * xi[2], y1[1] * xi[1] + y2[1] * xi[3])
        for x, y in pairs:
            if [a[0] * x[0] + a[1] * x[1], a[2] * x[0] + a[3] * x[1]] != y:
                raise NameInconsistent("edge images are not linear")
        if abs(det(a)) != 1:
            raise NameInconsistent(f"monodromy {a} is not invertible")
        return a
    raise NameInconsistent("boundary edges do not span H_1")


def build_layered_surface_bundle(spec):
    tri, lower, upper = layered_product(from_signature(spec.bundle), spec.layers)
    return _close(tri, lower, upper, spec.identification)


def manifold_of_layered_bundle(spec, closed=None):
    tri, lower, upper = layered_product(from_signature(spec.bundle), spec.layers)
    if closed is None:
        closed = _close(tri, lower, upper, spec.identification)
    h = first_homology(closed)
    if spec.surface == "torus":
        swap, p0, p1 = spec.identification
        tgt = upper if not swap else upper[::-1]
        name = TorusBundle(_monodromy(tri, lower, tgt, (p0, p1)))
    else:
        make = FLAT_BY_HOMOLOGY.get(str(h))
        if make is None:
            raise NameInconsistent(f"Klein bottle bundle with H1 = {h} is not flat")
        name = make()
    if name.homology() != h:
        raise NameInconsistent(f"{name} predicts {name.homology()}, triangulation has {h}")
    return name


def layered_bundles(bundle, size):
    """All ``(spec, tri)`` closing ``bundle`` (a ThinIBundle) at ``size``
    tetrahedra, non-orientable only, one per signature."""
    extra = size - bundle.size
    if extra < 0:
        return []
    base = from_signature(bundle.sig)
    seen = {}
    for word in product(range(3), repeat=extra):
        try:
            tri, lower, upper = layered_product(base, word)
        except BoundaryMismatch:
            continue
        for ident in identifications(lower, upper):
            try:
                closed = _close(tri, lower, upper, ident)
            except BoundaryMismatch:
                continue
            if closed.is_orientable():
                continue
            sig = canonical_signature(closed)
            if sig not in seen:
                seen[sig] = (LayeredBundleSpec(bundle.sig, word, ident, bundle.surface), closed)
    return [seen[s] for s in sorted(seen)]
