"""First homology of triangulations."""
from ..triangulation import EDGE_NUMBER, EDGE_VERTICES, TriangulationError
from .groups import AbelianGroup


class Disconnected(TriangulationError):
    pass


def _oriented_edge(sk, t, a, b):
    """(class, sign) for the edge of tetrahedron t running from a to b."""
    e = EDGE_NUMBER[a, b]
    sign = 1 if a < b else -1
    if sk.edge_parity[t][e]:
        sign = -sign
    return sk.edge_of[t][e], sign


def edge_endpoints(sk, cls):
    """Vertex classes (tail, head) of an edge class in its canonical direction."""
    t, e = sk.edge_classes[cls][0]
    a, b = EDGE_VERTICES[e]
    return sk.vertex_of[t][a], sk.vertex_of[t][b]


def spanning_tree_edges(sk):
    """Edge classes forming a spanning tree of the 1-skeleton."""
    nv = sk.num_vertices
    adj = [[] for _ in range(nv)]
    for cls in range(sk.num_edges):
        u, v = edge_endpoints(sk, cls)
        if u != v:
            adj[u].append((v, cls))
            adj[v].append((u, cls))
    seen = [False] * nv
    tree = []
    if nv:
        seen[0] = True
        stack = [0]
        while stack:
            u = stack.pop()
            for v, cls in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    tree.append(cls)
                    stack.append(v)
    return tree


def face_relation(sk, t, f):
    """Boundary of face f of tet t as a coefficient dict over edge classes."""
    a, b, c = [v for v in range(4) if v != f]
    rel = {}
    for x, y in ((a, b), (b, c), (c, a)):
        cls, s = _oriented_edge(sk, t, x, y)
        rel[cls] = rel.get(cls, 0) + s
    return rel


def homology_relations(tri):
    """Relation rows over edge classes: faces, then tree edges."""
    sk = tri.skeleton
    ne = sk.num_edges
    rows = []
    for fc in sk.face_classes:
        t, f = fc[0]
        rel = face_relation(sk, t, f)
        row = [0] * ne
        for k, v in rel.items():
            row[k] = v
        rows.append(row)
    for cls in spanning_tree_edges(sk):
        row = [0] * ne
        row[cls] = 1
        rows.append(row)
    return ne, rows


def first_homology(tri):
    """H1 of the underlying cell complex of ``tri``."""
    if not tri.is_connected():
        raise Disconnected("first_homology needs a connected triangulation")
    if tri.size == 0:
        return AbelianGroup()
    ne, rows = homology_relations(tri)
    return AbelianGroup.from_presentation(ne, rows)


def edge_classes_in_homology(tri):
    """Map each edge class to a coordinate vector in H1's free part.

    Returns ``(rank, vectors, torsion)`` where ``vectors[cls]`` is the image
    of the edge class (in its canonical direction) in the free quotient
    ``Z^rank`` of H1, with torsion discarded.
    """
    from .snf import smith_normal_form
    ne, rows = homology_relations(tri)
    if not rows:
        return ne, [[int(i == j) for j in range(ne)] for i in range(ne)], ()
    # H1 = Z^ne / rowspace(R).  With S = U R V, the row change x -> x V
    # carries rowspace(R) onto rowspace(S), which is diagonal.
    S, U, V = smith_normal_form(rows)
    diag = [S[i][i] if i < len(S) and i < ne else 0 for i in range(ne)]
    free = [i for i in range(ne) if diag[i] == 0]
    vectors = [[V[cls][i] for i in free] for cls in range(ne)]
    torsion = tuple(d for d in diag if d > 1)
    return len(free), vectors, torsion
