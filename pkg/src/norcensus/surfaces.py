"""Central normal surfaces: normal surfaces meeting each tetrahedron in at
most one disc.

A disc choice is encoded as an integer: ``0`` for no disc, ``1 + v`` for the
triangle cutting off vertex ``v`` and ``5 + k`` for the quadrilateral
``QUADS[k]``.
"""
from dataclasses import dataclass, field

from .perm import S4
from .skeleton import UnionFind
from .triangulation import EDGE_NUMBER

NONE = 0
QUADS = ((0, 1), (0, 2), (0, 3))  # quad k separates QUADS[k] from the rest
QUAD_CODES = (5, 6, 7)
TRIANGLE_CODES = (1, 2, 3, 4)
# branch order: quads, then triangles, then no disc
BRANCH_ORDER = QUAD_CODES + TRIANGLE_CODES + (NONE,)


def _quad_sides(k):
    a, b = QUADS[k]
    c, d = [v for v in range(4) if v not in (a, b)]
    return (a, b), (c, d)


def arc_type(choice, face):
    """Vertex cut off by the disc's arc on ``face``, or ``None``."""
    if choice == NONE:
        return None
    if choice <= 4:
        v = choice - 1
        return None if v == face else v
    (a, b), (c, d) = _quad_sides(choice - 5)
    return {a: b, b: a, c: d, d: c}[face]


# ARC[choice][face]
ARC = tuple(tuple(arc_type(c, f) for f in range(4)) for c in range(8))


def corners(choice):
    """Cyclically ordered tetrahedron edges met by the disc."""
    if choice == NONE:
        return ()
    if choice <= 4:
        v = choice - 1
        others = [w for w in range(4) if w != v]
        return tuple(EDGE_NUMBER[min(v, w), max(v, w)] for w in others)
    (a, b), (c, d) = _quad_sides(choice - 5)
    seq = ((a, c), (a, d), (b, d), (b, c))
    return tuple(EDGE_NUMBER[min(x, y), max(x, y)] for x, y in seq)


CORNERS = tuple(corners(c) for c in range(8))


def choice_label(choice):
    if choice == NONE:
        return "-"
    if choice <= 4:
        return f"T{choice - 1}"
    a, b = QUADS[choice - 5]
    return f"Q{a}{b}"


def parse_choice(text):
    if text == "-":
        return NONE
    if text[0] == "T":
        return 1 + int(text[1])
    pair = (int(text[1]), int(text[2]))
    pair = tuple(sorted(pair))
    if pair in QUADS:
        return 5 + QUADS.index(pair)
    rest = tuple(v for v in range(4) if v not in pair)
    return 5 + QUADS.index(rest)


@dataclass(frozen=True)
class CentralSurface:
    choices: tuple
    euler: int = field(compare=False, default=0)
    orientable: bool = field(compare=False, default=True)
    two_sided: bool = field(compare=False, default=True)
    components: int = field(compare=False, default=1)

    @property
    def discs(self):
        return sum(1 for c in self.choices if c != NONE)

    def label(self):
        return " ".join(choice_label(c) for c in self.choices)

    def __str__(self):
        side = "two-sided" if self.two_sided else "one-sided"
        orient = "orientable" if self.orientable else "non-orientable"
        return f"{self.label()}  chi={self.euler} {orient} {side} components={self.components}"


def matches(tri, choices):
    """Independent check of arc matching across every glued face."""
    for t in range(tri.size):
        for f in range(4):
            g = tri.raw(t, f)
            if g is None:
                continue
            t2, p = g
            f2 = S4[p][f]
            a = ARC[choices[t]][f]
            b = ARC[choices[t2]][f2]
            if (a is None) != (b is None):
                return False
            if a is not None and S4[p][a] != b:
                return False
    return True


def _search_order(tri):
    """Tetrahedra in descending order of gluings to already chosen ones."""
    n = tri.size
    order = []
    placed = [False] * n
    for _ in range(n):
        best, score = None, -1
        for t in range(n):
            if placed[t]:
                continue
            s = sum(1 for f in range(4)
                    if tri.raw(t, f) is not None and (placed[tri.raw(t, f)[0]] or tri.raw(t, f)[0] == t))
            if s > score:
                best, score = t, s
        placed[best] = True
        order.append(best)
    return order


def _iter_choice_vectors(tri, first_only=False):
    n = tri.size
    order = _search_order(tri)
    choices = [None] * n
    adj = tri._adj

    def compatible(t, c):
        for f in range(4):
            g = adj[t][f]
            if g is None:
                continue
            t2, p = g
            c2 = c if t2 == t else choices[t2]
            if c2 is None:
                continue
            f2 = S4[p][f]
            a = ARC[c][f]
            b = ARC[c2][f2]
            if a is None:
                if b is not None:
                    return False
            elif b is None or S4[p][a] != b:
                return False
        return True

    def rec(i, nonempty):
        if i == n:
            if nonempty:
                yield tuple(choices)
            return
        t = order[i]
        for c in BRANCH_ORDER:
            if compatible(t, c):
                choices[t] = c
                yield from rec(i + 1, nonempty or c != NONE)
                choices[t] = None

    return rec(0, False)


def analyze_surface(tri, choices):
    """Return ``(euler, orientable, two_sided, components)``."""
    choices = tuple(choices)
    discs = [t for t in range(tri.size) if choices[t] != NONE]
    index = {t: i for i, t in enumerate(discs)}
    # vertices: disc corners identified across faces
    vert = UnionFind(6 * tri.size)
    comp = UnionFind(len(discs))
    orient = UnionFind(len(discs))
    side = UnionFind(len(discs))
    arcs = 0
    for t in discs:
        c = choices[t]
        for f in range(4):
            u = ARC[c][f]
            if u is None:
                continue
            arcs += 1
            t2, p = tri.raw(t, f)
            f2 = S4[p][f]
            c2 = choices[t2]
            ends = [w for w in range(4) if w not in (f, u)]
            for w in ends:
                e = EDGE_NUMBER[min(u, w), max(u, w)]
                pu, pw = S4[p][u], S4[p][w]
                e2 = EDGE_NUMBER[min(pu, pw), max(pu, pw)]
                vert.union(6 * t + e, 6 * t2 + e2)
            comp.union(index[t], index[t2])
            # orientation: glued arcs must run in opposite directions
            e_from, e_to = _arc_direction(c, f, u)
            pe_from = _image_edge(e_from, p)
            pe_to = _image_edge(e_to, p)
            d_from, d_to = _arc_direction(c2, f2, S4[p][u])
            flip = 1 if (pe_from, pe_to) == (d_from, d_to) else 0
            orient.union(index[t], index[t2], flip)
            # transverse side: towards the cut-off vertex or away from it
            s1 = _towards_lone(c, u)
            s2 = _towards_lone(c2, S4[p][u])
            side.union(index[t], index[t2], s1 ^ s2)
    orientable = not any(orient.twisted[orient.find(i)] for i in range(len(discs)))
    two_sided = not any(side.twisted[side.find(i)] for i in range(len(discs)))
    nverts = len({vert.find(6 * t + e) for t in discs for e in CORNERS[choices[t]]})
    euler = nverts - arcs // 2 + len(discs)
    ncomp = len({comp.find(i) for i in range(len(discs))})
    return euler, orientable, two_sided, ncomp


def _image_edge(e, p):
    from .triangulation import EDGE_VERTICES
    a, b = EDGE_VERTICES[e]
    x, y = S4[p][a], S4[p][b]
    return EDGE_NUMBER[min(x, y), max(x, y)]


def _arc_direction(c, f, u):
    """Corners (as edges) joined by the arc on face ``f``, in cyclic order."""
    cs = CORNERS[c]
    ends = {EDGE_NUMBER[min(u, w), max(u, w)] for w in range(4) if w not in (f, u)}
    k = len(cs)
    for i in range(k):
        if cs[i] in ends and cs[(i + 1) % k] in ends:
            return cs[i], cs[(i + 1) % k]
    raise AssertionError("arc corners are not adjacent")


def _towards_lone(c, u):
    """1 if the disc's transverse direction points at vertex ``u``'s side.

    Triangles point at their vertex; quads point at the side holding
    vertex 0.
    """
    if c <= 4:
        return 1 if c - 1 == u else 0
    (a, b), _ = _quad_sides(c - 5)
    return 1 if u in (a, b) else 0


def _surface(tri, choices):
    return CentralSurface(choices, *analyze_surface(tri, choices))


def enumerate_central_surfaces(tri):
    """Every non-empty central normal surface, sorted by choice vector."""
    out = [_surface(tri, ch) for ch in _iter_choice_vectors(tri)]
    return sorted(out, key=lambda s: s.choices)


def has_central_surface(tri):
    for _ in _iter_choice_vectors(tri):
        return True
    return False


def component_surfaces(tri, choices):
    """Split a choice vector into its connected components."""
    n = tri.size
    uf = UnionFind(n)
    for t in range(n):
        if choices[t] == NONE:
            continue
        for f in range(4):
            if ARC[choices[t]][f] is not None:
                uf.union(t, tri.raw(t, f)[0])
    groups = {}
    for t in range(n):
        if choices[t] != NONE:
            groups.setdefault(uf.find(t), []).append(t)
    out = []
    for members in groups.values():
        ch = tuple(choices[t] if t in members else NONE for t in range(n))
        out.append(ch)
    return sorted(out)


def complement_pieces(tri, choices):
    """Number of connected pieces of the triangulation cut along the surface."""
    n = tri.size
    # piece id: (t, 0) is the region containing the disc's marked side or the whole tet
    uf = UnionFind(2 * n)

    def piece(t, w):
        c = choices[t]
        if c == NONE:
            return 2 * t
        if c <= 4:
            return 2 * t + (1 if w == c - 1 else 0)
        (a, b), _ = _quad_sides(c - 5)
        return 2 * t + (1 if w in (a, b) else 0)

    for t in range(n):
        for f in range(4):
            g = tri.raw(t, f)
            if g is None:
                continue
            t2, p = g
            for w in range(4):
                if w != f:
                    uf.union(piece(t, w), piece(t2, S4[p][w]))
    used = {piece(t, w) for t in range(n) for w in range(4)}
    return len({uf.find(x) for x in used})
