"""Generalised 3-manifold triangulations.

A triangulation is a list of tetrahedra whose faces are either boundary or
glued in pairs.  Face ``i`` of a tetrahedron is the face opposite vertex
``i``; a gluing of face ``f`` of tetrahedron ``t`` is stored as
``(adj_tet, perm)`` where ``perm`` maps the vertices of ``t`` onto the
vertices of ``adj_tet`` (so the adjacent face is ``perm[f]``).
"""
from functools import cached_property

from .perm import COMPOSE, INDEX, INVERSE, S4, SIGN, Perm4

# The six edges of a tetrahedron, indexed 0..5 by vertex pair.
EDGE_VERTICES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_NUMBER = {}
for _i, (_a, _b) in enumerate(EDGE_VERTICES):
    EDGE_NUMBER[_a, _b] = EDGE_NUMBER[_b, _a] = _i
del _i, _a, _b


class TriangulationError(ValueError):
    pass


class InconsistentGluing(TriangulationError):
    pass


class SelfGluing(TriangulationError):
    pass


class IndexOutOfRange(TriangulationError):
    pass


class NotBoundaryEdge(TriangulationError):
    pass


class EdgeNotSharedByTwoBoundaryFaces(TriangulationError):
    pass


class FormatError(TriangulationError):
    pass


def _perm_index(perm):
    if isinstance(perm, int):
        return perm
    if isinstance(perm, str):
        perm = tuple(int(c) for c in perm)
    perm = tuple(perm)
    if perm not in INDEX:
        raise InconsistentGluing(f"not a permutation: {perm!r}")
    return INDEX[perm]


class Triangulation:
    """An immutable generalised triangulation.

    ``gluings[t][f]`` is ``None`` for a boundary face, or a pair
    ``(adj_tet, perm)`` with ``perm`` a :class:`Perm4`, a 4-tuple, an image
    string such as ``"1230"`` or a permutation index.
    """

    __slots__ = ("_adj", "__dict__")

    def __init__(self, gluings=()):
        n = len(gluings)
        adj = []
        for t, row in enumerate(gluings):
            row = list(row)
            if len(row) != 4:
                raise IndexOutOfRange(f"tetrahedron {t} needs 4 face entries")
            out = []
            for f, g in enumerate(row):
                if g is None:
                    out.append(None)
                    continue
                t2, p = g
                if not 0 <= t2 < n:
                    raise IndexOutOfRange(f"({t},{f}) glued to missing tetrahedron {t2}")
                out.append((int(t2), _perm_index(p)))
            adj.append(tuple(out))
        self._adj = tuple(adj)
        self._validate()

    def _validate(self):
        for t, row in enumerate(self._adj):
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, p = g
                f2 = S4[p][f]
                if t2 == t and f2 == f:
                    raise SelfGluing(f"face ({t},{f}) glued to itself")
                back = self._adj[t2][f2]
                if back is None or back[0] != t or back[1] != INVERSE[p]:
                    raise InconsistentGluing(
                        f"({t},{f}) -> ({t2},{f2}) is not matched by the reverse gluing")

    # -- basic access -------------------------------------------------------

    @property
    def size(self):
        return len(self._adj)

    def __len__(self):
        return len(self._adj)

    def adjacent(self, tet, face):
        """Return ``(adj_tet, adj_face, Perm4)`` or ``None`` for boundary."""
        g = self._adj[tet][face]
        if g is None:
            return None
        return g[0], S4[g[1]][face], Perm4.from_index(g[1])

    def raw(self, tet, face):
        """Fast access: ``(adj_tet, perm_index)`` or ``None``."""
        return self._adj[tet][face]

    def gluing_table(self):
        return [[None if g is None else (g[0], Perm4.from_index(g[1])) for g in row]
                for row in self._adj]

    def boundary_faces(self):
        return [(t, f) for t, row in enumerate(self._adj) for f, g in enumerate(row) if g is None]

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self._adj == other._adj

    def __hash__(self):
        return hash(self._adj)

    def __repr__(self):
        return f"<Triangulation with {self.size} tetrahedra>"

    # -- derived data -------------------------------------------------------

    @cached_property
    def skeleton(self):
        from .skeleton import compute_skeleton
        return compute_skeleton(self)

    def is_connected(self):
        if self.size == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for g in self._adj[t]:
                if g is not None and g[0] not in seen:
                    seen.add(g[0])
                    stack.append(g[0])
        return len(seen) == self.size

    def is_closed(self):
        if self.size == 0:
            return False
        sk = self.skeleton
        return not self.boundary_faces() and all(
            c and chi == 2 for c, chi in zip(sk.vertex_link_closed, sk.vertex_link_euler))

    def is_valid(self):
        sk = self.skeleton
        return all(sk.edge_valid) and all(sk.vertex_link_surface)

    def is_orientable(self):
        return self.orientation() is not None

    def orientation(self):
        """A list of +1/-1 per tetrahedron making every gluing orientation
        reversing, or ``None`` when the triangulation is non-orientable."""
        n = self.size
        o = [0] * n
        for start in range(n):
            if o[start]:
                continue
            o[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for g in self._adj[t]:
                    if g is None:
                        continue
                    t2, p = g
                    want = -o[t] * SIGN[p]
                    if o[t2] == 0:
                        o[t2] = want
                        stack.append(t2)
                    elif o[t2] != want:
                        return None
        return o

    # -- relabelling --------------------------------------------------------

    def relabel(self, tet_perm, vertex_perms):
        """Relabel: old tetrahedron ``t`` becomes ``tet_perm[t]`` and its
        vertex ``v`` becomes ``vertex_perms[t][v]``."""
        n = self.size
        vp = [Perm4(v).index for v in vertex_perms]
        new = [[None] * 4 for _ in range(n)]
        for t, row in enumerate(self._adj):
            for f, g in enumerate(row):
                nf = S4[vp[t]][f]
                if g is None:
                    continue
                t2, p = g
                # new perm = vp[t2] o p o vp[t]^-1
                q = COMPOSE[COMPOSE[vp[t2]][p]][INVERSE[vp[t]]]
                new[tet_perm[t]][nf] = (tet_perm[t2], q)
        return Triangulation(new)


def build_triangulation(table):
    """Build and validate a triangulation from a per-face gluing table."""
    return Triangulation(table)


class TriangulationBuilder:
    """Mutable scratch space for constructions; call :meth:`freeze` at the end."""

    def __init__(self, tri=None):
        self.adj = [] if tri is None else [list(row) for row in tri._adj]

    @property
    def size(self):
        return len(self.adj)

    def new_tet(self):
        self.adj.append([None] * 4)
        return len(self.adj) - 1

    def add(self, tri):
        """Append a copy of ``tri``; return the index offset."""
        off = len(self.adj)
        for row in tri._adj:
            self.adj.append([None if g is None else (g[0] + off, g[1]) for g in row])
        return off

    def join(self, t, f, t2, perm):
        p = _perm_index(perm)
        f2 = S4[p][f]
        if self.adj[t][f] is not None or self.adj[t2][f2] is not None:
            raise InconsistentGluing(f"face ({t},{f}) or ({t2},{f2}) already glued")
        if t == t2 and f == f2:
            raise SelfGluing(f"face ({t},{f}) glued to itself")
        self.adj[t][f] = (t2, p)
        self.adj[t2][f2] = (t, INVERSE[p])

    def unjoin(self, t, f):
        g = self.adj[t][f]
        if g is not None:
            self.adj[g[0]][S4[g[1]][f]] = None
            self.adj[t][f] = None

    def freeze(self):
        return Triangulation(self.adj)


# -- text format ---------------------------------------------------------------

def to_text(tri):
    """Serialise as ``tets N`` followed by one line per tetrahedron."""
    lines = [f"tets {tri.size}"]
    for row in tri._adj:
        cells = []
        for g in row:
            if g is None:
                cells.append("bdry")
            else:
                cells.append(f"{g[0]}:{''.join(map(str, S4[g[1]]))}")
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def from_text(text):
    """Parse one triangulation block written by :func:`to_text`."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("tets"):
        raise FormatError("expected a 'tets N' header")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise FormatError(f"bad header line {lines[0]!r}") from None
    if len(lines) != n + 1:
        raise FormatError(f"expected {n} tetrahedron lines, got {len(lines) - 1}")
    table = []
    for ln in lines[1:]:
        cells = ln.split()
        if len(cells) != 4:
            raise FormatError(f"expected 4 entries in {ln!r}")
        row = []
        for c in cells:
            if c == "bdry":
                row.append(None)
                continue
            try:
                t, p = c.split(":")
                row.append((int(t), tuple(int(x) for x in p)))
            except ValueError:
                raise FormatError(f"bad gluing entry {c!r}") from None
        table.append(row)
    return Triangulation(table)


def read_triangulations(text):
    """Parse a file holding several ``tets N`` blocks (and optional
    ``name ...`` lines, which are ignored)."""
    blocks, cur = [], []
    for ln in text.splitlines():
        s = ln.strip()
        if s.startswith("tets"):
            if cur:
                blocks.append("\n".join(cur))
            cur = [s]
        elif s and cur and not s.startswith(("name", "#")):
            cur.append(s)
    if cur:
        blocks.append("\n".join(cur))
    return [from_text(b) for b in blocks]


# -- layering ------------------------------------------------------------------

def walk_boundary_edge(tri, tet, a, b):
    """Starting from a boundary face of ``tet`` containing edge ``ab``, walk
    around the edge to the other boundary face.

    Returns ``((t1, f1, a1, b1), (t2, f2, a2, b2))``: the two boundary faces
    with the images of the edge endpoints in each.
    """
    others = [v for v in range(4) if v not in (a, b)]
    start = None
    for c, d in (others, others[::-1]):
        # face opposite d contains a, b, c
        if tri.raw(tet, d) is None:
            start = (tet, d, c)
            break
    if start is None:
        raise NotBoundaryEdge(f"edge {a}{b} of tetrahedron {tet} is not on the boundary")
    t, d, c = start
    first = (t, d, a, b)
    # leave through the face opposite c
    steps = 0
    while True:
        g = tri.raw(t, c)
        if g is None:
            return first, (t, c, a, b)
        t2, p = g
        pa, pb, pc = S4[p][a], S4[p][b], S4[p][c]
        pd = 6 - pa - pb - pc
        # entered t2 through face opposite p[c]; exit through the other face
        t, a, b, c = t2, pa, pb, pd
        steps += 1
        if steps > 6 * tri.size + 6:
            raise NotBoundaryEdge("edge walk did not terminate")


def layer_on_edge(tri, edge):
    """Attach one new tetrahedron across the two boundary faces meeting
    along a boundary edge.

    ``edge`` is either an edge-class index of ``tri.skeleton`` or a triple
    ``(tet, a, b)``.  The new tetrahedron is appended last; its edge ``01``
    is glued to the old edge and its edge ``23`` becomes the new boundary
    edge.
    """
    if isinstance(edge, int):
        sk = tri.skeleton
        if not 0 <= edge < len(sk.edge_classes):
            raise IndexOutOfRange(f"no edge class {edge}")
        if not sk.edge_boundary[edge]:
            raise NotBoundaryEdge(f"edge class {edge} is internal")
        for tet, e in sk.edge_classes[edge]:
            a, b = EDGE_VERTICES[e]
            if any(tri.raw(tet, v) is None for v in range(4) if v not in (a, b)):
                break
    else:
        tet, a, b = edge
    (t1, f1, a1, b1), (t2, f2, a2, b2) = walk_boundary_edge(tri, tet, a, b)
    if (t1, f1) == (t2, f2):
        raise EdgeNotSharedByTwoBoundaryFaces("both sides of the edge lie on one face")
    sk = tri.skeleton
    cls = sk.edge_of[t1][EDGE_NUMBER[a1, b1]]
    bdry_incidences = 0
    for (t, e) in sk.edge_classes[cls]:
        x, y = EDGE_VERTICES[e]
        for v in range(4):
            if v not in (x, y) and tri.raw(t, v) is None:
                bdry_incidences += 1
    if bdry_incidences != 2:
        raise EdgeNotSharedByTwoBoundaryFaces(
            f"edge meets {bdry_incidences} boundary face sides, expected 2")
    c1 = 6 - a1 - b1 - f1
    c2 = 6 - a2 - b2 - f2
    bld = TriangulationBuilder(tri)
    nt = bld.new_tet()
    # new face 3 (vertices 012) onto (t1, f1): 0->a1, 1->b1, 2->c1, 3->f1
    bld.join(nt, 3, t1, (a1, b1, c1, f1))
    # new face 2 (vertices 013) onto (t2, f2): 0->a2, 1->b2, 3->c2, 2->f2
    bld.join(nt, 2, t2, (a2, b2, f2, c2))
    return bld.freeze()
