"""Vertex, edge and face classes of a triangulation, plus vertex links."""
from dataclasses import dataclass

from .perm import S4
from .triangulation import EDGE_NUMBER, EDGE_VERTICES


class UnionFind:
    """Disjoint sets over ``range(n)`` with an orientation bit per element.

    ``parity(x)`` is the orientation of ``x`` relative to its root; uniting
    with a parity that conflicts with the current one marks the class as
    twisted instead of raising.
    """

    def __init__(self, n):
        self.parent = list(range(n))
        self.rel = [0] * n
        self.twisted = [False] * n

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity
        acc = 0
        for y in reversed(path):
            acc ^= self.rel[y]
            self.rel[y] = acc
            self.parent[y] = root
        return root

    def parity(self, x):
        self.find(x)
        return self.rel[x] if self.parent[x] != x else 0

    def union(self, x, y, flip=0):
        rx, ry = self.find(x), self.find(y)
        px, py = self.parity(x), self.parity(y)
        if rx == ry:
            if px ^ py != flip:
                self.twisted[rx] = True
            return False
        self.parent[ry] = rx
        self.rel[ry] = px ^ py ^ flip
        self.twisted[rx] = self.twisted[rx] or self.twisted[ry]
        return True

    def groups(self):
        out = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@dataclass(frozen=True)
class Skeleton:
    vertex_classes: tuple          # tuples of (tet, vertex)
    edge_classes: tuple            # tuples of (tet, edge)
    face_classes: tuple            # tuples of (tet, face); length 1 for boundary
    vertex_of: tuple               # vertex_of[t][v] -> class
    edge_of: tuple
    face_of: tuple
    edge_degrees: tuple
    edge_valid: tuple
    edge_boundary: tuple
    edge_parity: tuple             # edge_parity[t][e]: 1 if (t,e) low->high opposes its class
    vertex_link_euler: tuple
    vertex_link_orientable: tuple
    vertex_link_closed: tuple
    vertex_link_surface: tuple

    @property
    def num_vertices(self):
        return len(self.vertex_classes)

    @property
    def num_edges(self):
        return len(self.edge_classes)

    @property
    def num_faces(self):
        return len(self.face_classes)

    def euler_characteristic(self, tets):
        return self.num_vertices - self.num_edges + self.num_faces - tets


def _class_table(n, uf, width):
    groups = sorted(uf.groups())
    of = [[0] * width for _ in range(n)]
    classes = []
    for i, g in enumerate(groups):
        members = tuple(divmod(x, width) for x in g)
        classes.append(members)
        for t, k in members:
            of[t][k] = i
    return tuple(classes), tuple(tuple(r) for r in of)


def compute_skeleton(tri):
    n = tri.size
    vuf, euf = UnionFind(4 * n), UnionFind(6 * n)
    # link vertices are oriented edge ends (t, v, w) -> 16 slots per tet
    luf = UnionFind(16 * n)
    # link triangles (t, v) with orientation bit
    tuf = UnionFind(4 * n)
    boundary_arcs = [0] * (4 * n)
    faces = []
    for t in range(n):
        for f in range(4):
            g = tri.raw(t, f)
            if g is None:
                faces.append(((t, f),))
                for v in range(4):
                    if v != f:
                        boundary_arcs[4 * t + v] += 1
                continue
            t2, p = g
            perm = S4[p]
            f2 = perm[f]
            if (t2, f2) > (t, f):
                faces.append(((t, f), (t2, f2)))
            face_verts = [v for v in range(4) if v != f]
            for v in face_verts:
                vuf.union(4 * t + v, 4 * t2 + perm[v])
                for w in face_verts:
                    if w != v:
                        luf.union(16 * t + 4 * v + w, 16 * t2 + 4 * perm[v] + perm[w])
                # orientation of the link triangle map at v
                src = [w for w in range(4) if w != v]
                img = [perm[w] for w in src]
                inv = sum(1 for i in range(3) for j in range(i + 1, 3) if img[i] > img[j])
                tuf.union(4 * t + v, 4 * t2 + perm[v], (inv + 1) & 1)
            for i in range(3):
                for j in range(i + 1, 3):
                    a, b = face_verts[i], face_verts[j]
                    pa, pb = perm[a], perm[b]
                    flip = 0 if (a < b) == (pa < pb) else 1
                    euf.union(6 * t + EDGE_NUMBER[a, b], 6 * t2 + EDGE_NUMBER[pa, pb], flip)

    vertex_classes, vertex_of = _class_table(n, vuf, 4)
    edge_classes, edge_of = _class_table(n, euf, 6)
    face_of = [[0] * 4 for _ in range(n)]
    faces.sort()
    for i, fc in enumerate(faces):
        for t, f in fc:
            face_of[t][f] = i

    edge_valid = tuple(not euf.twisted[euf.find(6 * t + e)] for (t, e), *_ in edge_classes)
    edge_boundary = []
    for members in edge_classes:
        on = False
        for t, e in members:
            a, b = EDGE_VERTICES[e]
            if any(tri.raw(t, v) is None for v in range(4) if v not in (a, b)):
                on = True
                break
        edge_boundary.append(on)

    euler, orientable, closed, surface = [], [], [], []
    for members in vertex_classes:
        ntri = len(members)
        nb = sum(boundary_arcs[4 * t + v] for t, v in members)
        nedges = (3 * ntri + nb) // 2
        ends = set()
        for t, v in members:
            for w in range(4):
                if w != v:
                    ends.add(luf.find(16 * t + 4 * v + w))
        euler.append(len(ends) - nedges + ntri)
        orientable.append(not tuf.twisted[tuf.find(4 * members[0][0] + members[0][1])])
        closed.append(nb == 0)
        surface.append(True)
    # a link is not a surface when some edge end is identified with the other
    # end of the same edge (an invalid edge); record that against its vertex
    for i, members in enumerate(edge_classes):
        if not edge_valid[i]:
            t, e = members[0]
            a, _ = EDGE_VERTICES[e]
            surface[vertex_of[t][a]] = False

    edge_parity = tuple(tuple(euf.parity(6 * t + e) ^ euf.parity(6 * edge_classes[edge_of[t][e]][0][0]
                                                               + edge_classes[edge_of[t][e]][0][1])
                              for e in range(6)) for t in range(n))
    return Skeleton(
        vertex_classes=vertex_classes,
        edge_classes=edge_classes,
        face_classes=tuple(faces),
        vertex_of=vertex_of,
        edge_of=edge_of,
        face_of=tuple(tuple(r) for r in face_of),
        edge_degrees=tuple(len(m) for m in edge_classes),
        edge_valid=edge_valid,
        edge_boundary=tuple(edge_boundary),
        edge_parity=edge_parity,
        vertex_link_euler=tuple(euler),
        vertex_link_orientable=tuple(orientable),
        vertex_link_closed=tuple(closed),
        vertex_link_surface=tuple(surface),
    )
