"""Local moves (2-3 and 3-2) and a bounded simplification search.

The search is used only as a certificate: reaching a triangulation with
fewer tetrahedra proves the input is not minimal.
"""
from collections import deque

from .perm import INDEX, INVERSE, S4
from .triangulation import EDGE_VERTICES, Triangulation


def _replace_region(tri, region, count, internal, faces):
    """Rebuild ``tri`` with the tetrahedra in ``region`` replaced.

    ``count`` new tetrahedra are appended after the surviving ones.
    ``internal`` lists gluings ``(i, g, j, perm)`` among new tetrahedra
    (both directions are added).  ``faces[(t, f)] = (i, g, sigma)`` says
    that new tetrahedron ``i`` face ``g`` realises the outer face ``(t, f)``
    of the region, with ``sigma`` (a tuple) sending new vertex labels to
    labels of ``t``.
    """
    region = set(region)
    keep = [t for t in range(tri.size) if t not in region]
    newidx = {t: i for i, t in enumerate(keep)}
    base = len(keep)
    table = [[None] * 4 for _ in range(base + count)]
    for t in keep:
        for f in range(4):
            g = tri.raw(t, f)
            if g is None:
                continue
            u, q = g
            if u not in region:
                table[newidx[t]][f] = (newidx[u], q)
    for (i, g, j, perm) in internal:
        pi = INDEX[tuple(perm)]
        table[base + i][g] = (base + j, pi)
        table[base + j][S4[pi][g]] = (base + i, INVERSE[pi])
    for (t, f), (i, g, sigma) in faces.items():
        adj = tri.raw(t, f)
        if adj is None:
            table[base + i][g] = None
            continue
        u, q = adj
        qp = S4[q]
        if u in region:
            j, h, tau = faces[(u, qp[f])]
            tau_inv = {tau[k]: k for k in range(4)}
            perm = tuple(tau_inv[qp[sigma[k]]] for k in range(4))
            table[base + i][g] = (base + j, INDEX[perm])
        else:
            perm = tuple(qp[sigma[k]] for k in range(4))
            pi = INDEX[perm]
            table[base + i][g] = (newidx[u], pi)
            table[newidx[u]][qp[f]] = (base + i, INVERSE[pi])
    return Triangulation(table)


def two_three(tri, t0, f0):
    """2-3 move on the face ``(t0, f0)``; None if not legal."""
    g = tri.raw(t0, f0)
    if g is None:
        return None
    t1, p = g
    if t1 == t0:
        return None
    pp = S4[p]
    f1 = pp[f0]
    tri_v = [v for v in range(4) if v != f0]
    # name -> label in t0 ('d' is f0) and in t1 ('e' is f1)
    faces = {}
    internal = []
    order = {z: i for i, z in enumerate(tri_v)}
    for i, z in enumerate(tri_v):
        x, y = [w for w in tri_v if w != z]
        # new tet i: 0 -> d, 1 -> e, 2 -> x, 3 -> y
        faces[(t0, z)] = (i, 1, (f0, z, x, y))
        faces[(t1, pp[z])] = (i, 0, (pp[z], f1, pp[x], pp[y]))
        names = {0: "d", 1: "e", 2: x, 3: y}
        # face opposite x (vertex 2) joins the tet omitting x
        for opp_label, opp in ((2, x), (3, y)):
            j = order[opp]
            if j < i:
                continue
            xj, yj = [w for w in tri_v if w != opp]
            target = {"d": 0, "e": 1, xj: 2, yj: 3}
            perm = []
            for k in range(4):
                nm = names[k]
                perm.append(target[z] if nm == opp else target[nm])
            internal.append((i, opp_label, j, tuple(perm)))
    return _replace_region(tri, (t0, t1), 3, internal, faces)


def three_two(tri, edge_class):
    """3-2 move on a degree-3 edge meeting three distinct tetrahedra."""
    sk = tri.skeleton
    members = sk.edge_classes[edge_class]
    if len(members) != 3 or not sk.edge_valid[edge_class] or sk.edge_boundary[edge_class]:
        return None
    tets = [t for t, _ in members]
    if len(set(tets)) != 3:
        return None
    t0, e0 = members[0]
    d0, e0v = EDGE_VERTICES[e0]
    a0, b0 = [v for v in range(4) if v not in (d0, e0v)]
    # walk: labels of names d, e, A, B, C in each tet
    lab = [{"d": d0, "e": e0v, "A": a0, "B": b0}]
    seq = [t0]
    # from t0 leave through the face opposite A
    cur, names = t0, lab[0]
    plan = (("A", "B", "C"), ("B", "C", "A"))
    for leave, keep_name, new_name in plan:
        g = tri.raw(cur, names[leave])
        if g is None:
            return None
        u, q = g
        qp = S4[q]
        nn = {"d": qp[names["d"]], "e": qp[names["e"]], keep_name: qp[names[keep_name]]}
        rest = [v for v in range(4) if v not in nn.values()]
        if len(rest) != 1:
            return None
        nn[new_name] = rest[0]
        seq.append(u)
        lab.append(nn)
        cur, names = u, nn
    if len(set(seq)) != 3:
        return None
    # t0 has d,e,A,B; t1 has d,e,B,C; t2 has d,e,C,A
    g = tri.raw(seq[2], lab[2]["C"])
    if g is None or g[0] != seq[0]:
        return None
    faces = {}
    for k, (t, names) in enumerate(zip(seq, lab)):
        missing = [nm for nm in ("A", "B", "C") if nm not in names][0]
        # new tet 0: d, A, B, C ; new tet 1: e, A, B, C
        for new, apex, other in ((0, "d", "e"), (1, "e", "d")):
            sigma = []
            for nm in (apex, "A", "B", "C"):
                sigma.append(names[other] if nm == missing else names[nm])
            faces[(t, names[other])] = (new, 1 + "ABC".index(missing), tuple(sigma))
    internal = [(0, 0, 1, (0, 1, 2, 3))]
    return _replace_region(tri, seq, 2, internal, faces)


def moves_up(tri):
    for t in range(tri.size):
        for f in range(4):
            g = tri.raw(t, f)
            # each face pair once; faces glued within one tetrahedron are skipped
            if g is not None and g[0] > t:
                yield two_three(tri, t, f)


def moves_down(tri):
    sk = tri.skeleton
    for c in range(sk.num_edges):
        if sk.edge_degrees[c] == 3:
            r = three_two(tri, c)
            if r is not None:
                yield r


def find_smaller(tri, budget=2000, slack=2):
    """Search 2-3 and 3-2 moves for a triangulation with fewer tetrahedra.

    States up to ``tri.size + slack`` tetrahedra are explored breadth first,
    smallest size first.  Returns a smaller triangulation, or ``None`` once
    ``budget`` distinct triangulations were seen.
    """
    import heapq
    from .isosig import canonical_signature
    n = tri.size
    seen = {canonical_signature(tri)}
    heap = [(n, 0, tri)]
    tick = 1
    while heap and len(seen) <= budget:
        size, _, cur = heapq.heappop(heap)
        nbrs = list(moves_down(cur))
        if size < n + slack:
            nbrs += [u for u in moves_up(cur) if u is not None]
        for nxt in nbrs:
            if nxt.size < n:
                return nxt
            sig = canonical_signature(nxt)
            if sig in seen:
                continue
            seen.add(sig)
            heapq.heappush(heap, (nxt.size, tick, nxt))
            tick += 1
    return None
