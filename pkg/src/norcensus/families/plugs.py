"""Allowable torus boundaries and the attachment of solid torus plugs.

An allowable boundary is a four-face torus with two vertices, each carrying
one loop edge.  The two loops are parallel fibres and cut the torus into
two annuli; each annulus has two cross edges.  Orienting the torus, every
face reads (cross edge ``h``, loop ``f``, cross edge ``d``) in cyclic order
and then ``d = h + f`` in homology.  A plug glued to an annulus identifies
its two loops and closes it into a torus; its meridian in the ``(h, f)``
frame gives the Seifert invariant of the new fibre.
"""
from dataclasses import dataclass
from itertools import permutations

from ..algebra.homology import _oriented_edge, first_homology
from ..perm import INDEX
from ..triangulation import EDGE_NUMBER, TriangulationBuilder, TriangulationError
from .lst import LayeredSolidTorus, LstParams, build_layered_solid_torus


class NotAllowableBoundary(ValueError):
    pass


@dataclass(frozen=True)
class Annulus:
    faces: tuple      # two boundary faces (tet, face)
    h: int            # edge classes of the core
    d: int


@dataclass(frozen=True)
class AllowableBoundary:
    loops: tuple      # the two loop edge classes (AD and BE)
    annuli: tuple     # two Annulus records
    parallel_diagonals: bool

    @property
    def fibre_edges(self):
        return self.loops


def _face_sides(sk, t, f, orient):
    vs = [v for v in range(4) if v != f]
    if orient < 0:
        vs = [vs[0], vs[2], vs[1]]
    return [(vs[i], vs[(i + 1) % 3]) + _oriented_edge(sk, t, vs[i], vs[(i + 1) % 3])
            for i in range(3)]


def _orient_boundary(tri, faces):
    """Coherent orientation (+1/-1 per face) of a connected boundary surface,
    or ``None`` if it is non-orientable."""
    sk = tri.skeleton
    occ = {}
    for i, (t, f) in enumerate(faces):
        for _, _, cls, s in _face_sides(sk, t, f, 1):
            occ.setdefault(cls, []).append((i, s))
    orient = [0] * len(faces)
    orient[0] = 1
    stack = [0]
    while stack:
        i = stack.pop()
        for cls, lst in occ.items():
            if len(lst) != 2:
                return None
            (a, sa), (b, sb) = lst
            for x, sx, y, sy in ((a, sa, b, sb), (b, sb, a, sa)):
                if x != i:
                    continue
                want = -orient[x] * sx * sy
                if orient[y] == 0:
                    orient[y] = want
                    stack.append(y)
                elif orient[y] != want:
                    return None
    return orient


def detect_allowable_boundary(tri):
    """Return an :class:`AllowableBoundary` or ``None``."""
    faces = [(t, f) for t in range(tri.size) for f in range(4) if tri.raw(t, f) is None]
    if len(faces) != 4:
        return None
    sk = tri.skeleton
    verts = {sk.vertex_of[t][v] for t, f in faces for v in range(4) if v != f}
    edges = {}
    for t, f in faces:
        for _, _, cls, _ in _face_sides(sk, t, f, 1):
            edges[cls] = edges.get(cls, 0) + 1
    if len(verts) != 2 or len(edges) != 6 or any(k != 2 for k in edges.values()):
        return None
    from ..algebra.homology import edge_endpoints
    loops = [c for c in edges if len(set(edge_endpoints(sk, c))) == 1]
    if len(loops) != 2 or edge_endpoints(sk, loops[0]) == edge_endpoints(sk, loops[1]):
        return None
    orient = _orient_boundary(tri, faces)
    if orient is None:
        return None
    # each face must hold exactly one loop; read (h, f, d) around it
    reading = []
    for (t, f), o in zip(faces, orient):
        sides = _face_sides(sk, t, f, o)
        idx = [i for i, s in enumerate(sides) if s[2] in loops]
        if len(idx) != 1:
            return None
        i = idx[0]
        reading.append((sides[(i - 1) % 3][2], sides[(i + 1) % 3][2]))
    # group faces into annuli by their cross edges
    groups = {}
    for face, (h, d) in zip(faces, reading):
        groups.setdefault(frozenset((h, d)), []).append((face, h, d))
    if len(groups) != 2 or any(len(g) != 2 for g in groups.values()):
        return None
    annuli = []
    for g in groups.values():
        (f1, h1, d1), (f2, h2, d2) = g
        if (h1, d1) != (h2, d2) or h1 == d1:
            return None
        annuli.append(Annulus(tuple(sorted((f1, f2))), h1, d1))
    annuli.sort(key=lambda a: a.faces)
    # parallel diagonals: both annuli read the same way from a shared loop
    par = _parallel(sk, faces, orient, loops, annuli)
    return AllowableBoundary(tuple(sorted(loops)), tuple(annuli), par)


def _parallel(sk, faces, orient, loops, annuli):
    # In each annulus, the face whose loop is loops[0] either follows the
    # loop with h or with d; the pattern is parallel when both agree.
    kinds = []
    for ann in annuli:
        for t, f in ann.faces:
            o = orient[faces.index((t, f))]
            sides = _face_sides(sk, t, f, o)
            i = [k for k, s in enumerate(sides) if s[2] in loops][0]
            if sides[i][2] == loops[0]:
                kinds.append(sides[(i + 1) % 3][2] == ann.d)
                break
    return len(set(kinds)) == 1


def is_allowable(tri):
    return detect_allowable_boundary(tri) is not None


# -- plugs ----------------------------------------------------------------------

@dataclass(frozen=True)
class PlugGluing:
    """How one plug closes one annulus: ``joins`` are builder calls
    ``(core_tet, core_face, plug_tet, plug_face_perm)`` with plug tets
    numbered from zero (or, for the degenerate plug, a fold of the annulus).
    """
    params: LstParams
    joins: tuple
    weights: tuple    # (w(f), w(h), w(d))

    @property
    def fibre(self):
        """Seifert pair ``(alpha, beta)`` in the ``(h, f)`` frame."""
        a, wh, wd = self.weights
        return (a, wh) if wd == abs(a - wh) else (a, -wh)


def _classes(tri, t, u, v):
    return tri.skeleton.edge_of[t][EDGE_NUMBER[u, v]]


def _rep_edge(sk, cls):
    t, e = sk.edge_classes[cls][0]
    from ..triangulation import EDGE_VERTICES
    return (t,) + EDGE_VERTICES[e]


def plug_gluings(core, boundary, which, params):
    """Valid ways to close annulus ``which`` of ``core`` with ``params``."""
    if not isinstance(params, LstParams):
        params = LstParams.of(params)
    ann = boundary.annuli[which]
    sk = core.skeleton
    reps = {c: _rep_edge(sk, c) for c in (boundary.loops + (ann.h, ann.d))}
    out = []
    seen = set()
    if params.degenerate:
        (t1, f1), (t2, f2) = ann.faces
        v1 = [v for v in range(4) if v != f1]
        v2 = [v for v in range(4) if v != f2]
        for img in permutations(v2):
            perm = [0] * 4
            perm[f1] = f2
            for a, b in zip(v1, img):
                perm[a] = b
            joins = ((t1, f1, t2, tuple(perm)),)
            tri = _try(core, None, joins)
            if tri is None:
                continue
            c = {k: _classes(tri, *reps[k]) for k in reps}
            lf = c[boundary.loops[0]]
            if c[boundary.loops[1]] != lf or c[ann.h] != c[ann.d] or c[ann.h] == lf:
                continue
            out.append(PlugGluing(params, joins, (2, 1, 1)))
        return out
    lst = build_layered_solid_torus(params)
    ltri = lst.tri
    lfaces = [(t, f) for t in range(ltri.size) for f in range(4) if ltri.raw(t, f) is None]
    off = core.size
    for order in (ann.faces, ann.faces[::-1]):
        for p1 in _face_maps(lfaces[0][1], order[0][1]):
            for p2 in _face_maps(lfaces[1][1], order[1][1]):
                joins = ((order[0][0], order[0][1], lfaces[0][0], _inv(p1)),
                         (order[1][0], order[1][1], lfaces[1][0], _inv(p2)))
                tri = _try(core, ltri, joins)
                if tri is None:
                    continue
                c = {k: _classes(tri, *reps[k]) for k in reps}
                if c[boundary.loops[0]] != c[boundary.loops[1]]:
                    continue
                w = {}
                for (t, u, v), wt in zip(lst.edges, lst.weights):
                    w[_classes(tri, t + off, u, v)] = wt
                trio = (c[boundary.loops[0]], c[ann.h], c[ann.d])
                if len(set(trio)) != 3 or any(x not in w for x in trio):
                    continue
                key = joins
                if key in seen:
                    continue
                seen.add(key)
                out.append(PlugGluing(params, joins, tuple(w[x] for x in trio)))
    return out


def _inv(p):
    out = [0] * 4
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _face_maps(f_from, f_to):
    """All permutations sending face ``f_from`` onto face ``f_to``."""
    src = [v for v in range(4) if v != f_from]
    dst = [v for v in range(4) if v != f_to]
    for img in permutations(dst):
        perm = [0] * 4
        perm[f_from] = f_to
        for a, b in zip(src, img):
            perm[a] = b
        yield tuple(perm)


def _assemble(core, plugs):
    """Core plus plugs; ``plugs`` is a sequence of (plug triangulation or
    None, joins) with plug tets numbered locally."""
    bld = TriangulationBuilder(core)
    for ptri, joins in plugs:
        off = bld.add(ptri) if ptri is not None else 0
        for t, f, pt, perm in joins:
            if ptri is None:
                bld.join(t, f, pt, perm)
            else:
                bld.join(t, f, pt + off, perm)
    return bld.freeze()


def _try(core, ptri, joins):
    try:
        tri = _assemble(core, [(ptri, joins)])
    except TriangulationError:
        return None
    if not tri.is_valid():
        return None
    return tri


def plug_core(core, boundary, g1, g2):
    """Close both annuli of ``core``; returns the closed triangulation."""
    plugs = []
    for g in (g1, g2):
        ptri = None if g.params.degenerate else build_layered_solid_torus(g.params).tri
        plugs.append((ptri, g.joins))
    return _assemble(core, plugs)


def core_base(core, boundary):
    """Base orbifold (``"RP2"`` or ``"Dbar"``) of the fibration by loops,
    read from H_1 of the core closed by two degenerate plugs."""
    from .lst import DEGENERATE
    g1 = plug_gluings(core, boundary, 0, DEGENERATE)
    g2 = plug_gluings(core, boundary, 1, DEGENERATE)
    for a in g1:
        for b in g2:
            tri = plug_core(core, boundary, a, b)
            if not tri.is_valid():
                continue
            h = str(first_homology(tri))
            if h == "Z + Z_4":
                return "RP2"
            if h == "Z + Z_2 + Z_2":
                return "Dbar"
    return None


class NameInconsistent(AssertionError):
    pass


@dataclass(frozen=True)
class PlugCore:
    """A triangulated twisted product with allowable boundary, ready for plugs.

    ``base`` is the base orbifold of the closed spaces it produces.  Over
    RP2 the horizontal curves of the two annuli need not bound a common
    section; ``flip`` records an odd discrepancy, which amounts to
    negating the second fibre's ``beta``.  Over Dbar the obstruction term
    does not change the space, so no correction is needed.
    """
    tri: object
    boundary: AllowableBoundary
    base: str
    flip: bool

    def fibres(self, g1, g2):
        (a1, b1), (a2, b2) = g1.fibre, g2.fibre
        if self.flip:
            b2 = -b2
        return (a1, b1), (a2, b2)


def prepare_core(tri):
    """Detect the allowable boundary, the base and the section parity."""
    from ..algebra.names import sfs
    boundary = detect_allowable_boundary(tri)
    if boundary is None:
        raise NotAllowableBoundary("boundary is not an allowable four-face torus")
    base = core_base(tri, boundary)
    if base is None:
        raise NotAllowableBoundary("degenerate plugs do not give a Seifert fibred space")
    flip = False
    if base == "RP2":
        probe = LstParams(1, 2, 3)
        g1 = [g for g in plug_gluings(tri, boundary, 0, probe) if g.weights[0] == 3]
        g2 = [g for g in plug_gluings(tri, boundary, 1, probe) if g.weights[0] == 3]
        if not g1 or not g2:
            raise NotAllowableBoundary("no probe filling with two (3, *) fibres")
        h = first_homology(plug_core(tri, boundary, g1[0], g2[0]))
        (a1, b1), (a2, b2) = g1[0].fibre, g2[0].fibre
        if h == sfs(base, (a1, b1), (a2, b2)).homology():
            flip = False
        elif h == sfs(base, (a1, b1), (a2, -b2)).homology():
            flip = True
        else:
            raise NameInconsistent(f"probe filling has H1 = {h}")
    return PlugCore(tri, boundary, base, flip)


def plug_choices(core, params):
    """Gluings per annulus for each parameter set: ``[{params: [PlugGluing]}]``."""
    return [{p: plug_gluings(core.tri, core.boundary, i, p) for p in params} for i in range(2)]


def plugged_fillings(core, max_plug_tets):
    """Yield ``(g1, g2, tri, name)`` over all plug pairs adding at most
    ``max_plug_tets`` tetrahedra in total.

    Plugs whose meridian meets the fibre once create no exceptional fibre
    and are skipped.  Every name is checked against the triangulation's H_1.
    """
    from ..algebra.names import sfs
    from .lst import lst_params_up_to
    params = lst_params_up_to(max_plug_tets)
    choices = plug_choices(core, params)
    for p1 in params:
        for p2 in params:
            if p1.size + p2.size > max_plug_tets:
                continue
            for g1 in choices[0][p1]:
                if g1.weights[0] < 2:
                    continue
                for g2 in choices[1][p2]:
                    if g2.weights[0] < 2:
                        continue
                    tri = plug_core(core.tri, core.boundary, g1, g2)
                    if not tri.is_valid() or not tri.is_closed():
                        raise NameInconsistent("plugging did not close the core")
                    name = sfs(core.base, *core.fibres(g1, g2))
                    h = first_homology(tri)
                    if h != name.homology():
                        raise NameInconsistent(f"{name} predicts {name.homology()}, got {h}")
                    yield g1, g2, tri, name
