"""Thin I-bundles: triangulations in which a closed central surface meets
every tetrahedron in exactly one triangle or quadrilateral.

Each tetrahedron carries a disc (a triangle about its apex, or a quad).
Faces crossed by the disc are glued so that arcs match; the face opposite a
triangle's apex is boundary.  Enumeration builds these complexes in
breadth-first order and dedupes by isomorphism signature.
"""
from dataclasses import dataclass, field
from functools import lru_cache

from ..algebra.homology import first_homology
from ..isosig import canonical_signature
from ..perm import INDEX, INVERSE, S4
from ..surfaces import ARC, CORNERS, NONE, QUADS, analyze_surface
from ..triangulation import EDGE_NUMBER, EDGE_VERTICES, Triangulation

UNTWISTED, TWISTED = "untwisted", "twisted"


def is_triangle(c):
    return 1 <= c <= 4


def _crossed(c, e):
    a, b = EDGE_VERTICES[e]
    return e in CORNERS[c]


class _RollbackUF:
    """Union-find with parity and per-class counters, undone in LIFO order."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.rel = [0] * n
        self.size = [1] * n
        self.twisted = [False] * n
        self.open = [0] * n
        self.bdry = [0] * n
        self.flag = [0] * n
        self.log = []
        self.done = None

    def find(self, x):
        p = 0
        while self.parent[x] != x:
            p ^= self.rel[x]
            x = self.parent[x]
        return x, p

    def union(self, x, y, flip):
        (rx, px), (ry, py) = self.find(x), self.find(y)
        if rx == ry:
            bad = (px ^ py) != flip
            self.log.append(("t", rx, self.twisted[rx]))
            if bad:
                self.twisted[rx] = True
            return rx
        if self.size[rx] < self.size[ry]:
            rx, ry, px, py = ry, rx, py, px
        self.log.append(("u", rx, ry, self.twisted[rx]))
        self.parent[ry] = rx
        self.rel[ry] = px ^ py ^ flip
        self.size[rx] += self.size[ry]
        self.twisted[rx] = self.twisted[rx] or self.twisted[ry]
        self.open[rx] += self.open[ry]
        self.bdry[rx] += self.bdry[ry]
        self.flag[rx] += self.flag[ry]
        return rx

    def add_open(self, r, k):
        self.log.append(("o", r, k))
        self.open[r] += k

    def mark(self):
        return len(self.log)

    def undo(self, mark):
        while len(self.log) > mark:
            op = self.log.pop()
            if op[0] == "c":
                self.done[op[1]] -= 1
            elif op[0] == "t":
                self.twisted[op[1]] = op[2]
            elif op[0] == "o":
                self.open[op[1]] -= op[2]
            else:
                _, rx, ry, tw = op
                self.parent[ry] = ry
                self.rel[ry] = 0
                self.size[rx] -= self.size[ry]
                self.twisted[rx] = tw
                self.open[rx] -= self.open[ry]
                self.bdry[rx] -= self.bdry[ry]
                self.flag[rx] -= self.flag[ry]


def _lone(c, f):
    return ARC[c][f]


def _raw_bundles(n, triangles):
    """Yield ``(choices, adjacency)`` for every BFS-ordered arc-matching
    complex with ``n`` tetrahedra, ``triangles`` of them triangle-type, whose
    uncrossed edges and vertices all end up on the boundary."""
    quads = n - triangles
    euf = _RollbackUF(6 * n)
    vuf = _RollbackUF(4 * n)
    choices = [NONE] * n
    adj = [[None] * 4 for _ in range(n)]
    count = {"tets": 0, "tri": 0}
    # completed classes can no longer merge, so each count is bounded by
    # its final value for an I-bundle over a torus or Klein bottle
    done = {"sverts": 0, "bedges": 0, "verts": 0}
    euf.done = vuf.done = done
    internal = (4 * n - triangles) // 2
    limits = {"sverts": internal - n, "bedges": 3 * triangles // 2,
              "verts": max(triangles // 2, 1)}

    def open_tet(t, c):
        choices[t] = c
        for e in range(6):
            a, b = EDGE_VERTICES[e]
            x = 6 * t + e
            euf.parent[x], euf.rel[x], euf.size[x] = x, 0, 1
            euf.twisted[x] = False
            faces = [f for f in range(4) if f not in (a, b)]
            euf.open[x] = sum(1 for f in faces if not (is_triangle(c) and f == c - 1))
            euf.bdry[x] = 2 - euf.open[x]
            euf.flag[x] = 0 if _crossed(c, e) else 1
        for v in range(4):
            x = 4 * t + v
            vuf.parent[x], vuf.rel[x], vuf.size[x] = x, 0, 1
            vuf.twisted[x] = False
            faces = [f for f in range(4) if f != v]
            vuf.open[x] = sum(1 for f in faces if not (is_triangle(c) and f == c - 1))
            vuf.bdry[x] = 3 - vuf.open[x]
            vuf.flag[x] = 0

    def glue(t, f, t2, p):
        """Record the gluing and merge classes; False if it must be pruned."""
        pp = S4[p]
        adj[t][f] = (t2, p)
        adj[t2][pp[f]] = (t, INVERSE[p])
        ok = True
        others = [v for v in range(4) if v != f]
        for i in range(3):
            a = others[i]
            for b in others[i + 1:]:
                e = EDGE_NUMBER[a, b]
                x, y = pp[a], pp[b]
                e2 = EDGE_NUMBER[min(x, y), max(x, y)]
                r = euf.union(6 * t + e, 6 * t2 + e2, 1 if x > y else 0)
                euf.add_open(r, -2)
                if euf.twisted[r] or euf.bdry[r] > 2:
                    ok = False
                elif euf.open[r] == 0:
                    if euf.bdry[r] == 1 or (euf.bdry[r] == 0 and euf.flag[r]):
                        ok = False
                    elif euf.flag[r]:
                        done["bedges"] += 1
                        euf.log.append(("c", "bedges"))
                    else:
                        done["sverts"] += 1
                        euf.log.append(("c", "sverts"))
        for v in others:
            r = vuf.union(4 * t + v, 4 * t2 + pp[v], 0)
            vuf.add_open(r, -2)
            if vuf.open[r] == 0:
                if vuf.bdry[r] == 0:
                    ok = False
                done["verts"] += 1
                vuf.log.append(("c", "verts"))
        if done["sverts"] > limits["sverts"] or done["bedges"] > limits["bedges"] \
                or done["verts"] > limits["verts"]:
            ok = False
        return ok

    def next_face(t, f):
        while t < count["tets"]:
            while f < 4:
                c = choices[t]
                if adj[t][f] is None and not (is_triangle(c) and f == c - 1):
                    return t, f
                f += 1
            t, f = t + 1, 0
        return None

    def rec(t, f):
        slot = next_face(t, f)
        if slot is None:
            if count["tets"] == n and count["tri"] == triangles and done == limits:
                yield list(choices), [list(r) for r in adj]
            return
        t, f = slot
        c = choices[t]
        u = _lone(c, f)
        # a new tetrahedron glued by the identity
        if count["tets"] < n:
            new = count["tets"]
            options = []
            if count["tri"] < triangles:
                options.append(1 + u)
            if new - count["tri"] < quads:
                pair = tuple(sorted((f, u)))
                k = QUADS.index(pair) if pair in QUADS else QUADS.index(
                    tuple(v for v in range(4) if v not in pair))
                options.append(5 + k)
            for c2 in options:
                e_mark, v_mark = euf.mark(), vuf.mark()
                open_tet(new, c2)
                count["tets"] += 1
                count["tri"] += is_triangle(c2)
                if glue(t, f, new, INDEX[(0, 1, 2, 3)]):
                    yield from rec(t, f + 1)
                adj[t][f] = None
                adj[new][f] = None
                count["tets"] -= 1
                count["tri"] -= is_triangle(c2)
                choices[new] = NONE
                euf.undo(e_mark)
                vuf.undo(v_mark)
        # an existing unglued face
        for t2 in range(t, count["tets"]):
            c2 = choices[t2]
            for g in range(4):
                if (t2, g) <= (t, f) or adj[t2][g] is not None:
                    continue
                if is_triangle(c2) and g == c2 - 1:
                    continue
                u2 = _lone(c2, g)
                rest = [v for v in range(4) if v not in (f, u)]
                rest2 = [v for v in range(4) if v not in (g, u2)]
                for order in (rest2, rest2[::-1]):
                    perm = [0] * 4
                    perm[f], perm[u] = g, u2
                    perm[rest[0]], perm[rest[1]] = order
                    p = INDEX[tuple(perm)]
                    e_mark, v_mark = euf.mark(), vuf.mark()
                    if glue(t, f, t2, p):
                        yield from rec(t, f + 1)
                    adj[t][f] = None
                    adj[t2][g] = None
                    euf.undo(e_mark)
                    vuf.undo(v_mark)

    starts = []
    if triangles:
        starts.append(1)
    if quads:
        starts.append(5)
    for c0 in starts:
        open_tet(0, c0)
        count["tets"], count["tri"] = 1, int(is_triangle(c0))
        yield from rec(0, 0)
        choices[0] = NONE


@dataclass(frozen=True)
class ThinIBundle:
    """A thin I-bundle with its central cellulation."""
    tri: Triangulation = field(compare=False)
    kind: str
    central: tuple = field(compare=False)      # disc choice per tetrahedron
    surface: str = "torus"
    boundary_faces: tuple = field(compare=False, default=())   # face counts per boundary component
    sig: str = ""

    @property
    def size(self):
        return self.tri.size


def boundary_components(tri):
    """Boundary components as lists of boundary faces ``(tet, face)``."""
    from ..skeleton import UnionFind
    faces = [(t, f) for t in range(tri.size) for f in range(4) if tri.raw(t, f) is None]
    sk = tri.skeleton
    index = {x: i for i, x in enumerate(faces)}
    uf = UnionFind(len(faces))
    by_edge = {}
    for (t, f) in faces:
        for a in range(4):
            for b in range(a + 1, 4):
                if f not in (a, b):
                    by_edge.setdefault(sk.edge_of[t][EDGE_NUMBER[a, b]], []).append(index[(t, f)])
    for members in by_edge.values():
        for i in members[1:]:
            uf.union(members[0], i)
    return sorted(sorted(faces[i] for i in g) for g in uf.groups())


def classify_bundle(tri, choices):
    """Return a :class:`ThinIBundle` or ``None`` if the complex is not one.

    The central surface must be a torus or Klein bottle; two-sided surfaces
    give untwisted bundles with two boundary components, one-sided tori give
    twisted bundles with connected torus boundary.
    """
    if not tri.is_valid():
        return None
    euler, orientable, two_sided, comps = analyze_surface(tri, choices)
    if euler != 0 or comps != 1:
        return None
    bcomps = boundary_components(tri)
    counts = tuple(sorted(len(c) for c in bcomps))
    h = first_homology(tri)
    if two_sided:
        if len(bcomps) != 2:
            return None
        kind, surface = UNTWISTED, "torus" if orientable else "klein"
        expect = "Z + Z" if orientable else "Z + Z_2"
    else:
        if len(bcomps) != 1 or not orientable:
            return None
        kind, surface, expect = TWISTED, "torus", "Z + Z"
    if str(h) != expect:
        return None
    return ThinIBundle(tri, kind, tuple(choices), surface, counts, canonical_signature(tri))


def enumerate_thin_ibundles(n, kind=None, boundary_faces=None, surface=None):
    """All thin I-bundles with ``n`` tetrahedra up to isomorphism.

    ``boundary_faces`` fixes the total number of boundary faces (the number
    of triangle discs); by default every count is tried.  ``kind`` and
    ``surface`` filter the result.  Sorted by signature.
    """
    counts = [boundary_faces] if boundary_faces is not None else range(0, n + 1)
    found = {}
    for t in counts:
        for b in _bundles_with_faces(n, t):
            if kind is not None and b.kind != kind:
                continue
            if surface is not None and b.surface != surface:
                continue
            found.setdefault(b.sig, b)
    return [found[s] for s in sorted(found)]


@lru_cache(maxsize=None)
def _bundles_with_faces(n, t):
    from ._thin import raw_thin_complexes
    found = {}
    for choices, adj in raw_thin_complexes(n, t):
        b = classify_bundle(Triangulation(adj), choices)
        if b is not None:
            found.setdefault(b.sig, b)
    return tuple(found[s] for s in sorted(found))
