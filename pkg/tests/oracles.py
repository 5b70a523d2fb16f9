"""Independent brute-force oracles shared by the test modules.

Everything here is deliberately naive: plain recursion over all face
matchings and permutations, and minimisation over every relabelling.
"""
import random
from itertools import permutations, product

from norcensus.perm import FACE_MAPS, S4
from norcensus.triangulation import Triangulation


def face_matchings(n):
    """All perfect matchings of the 4n faces."""
    faces = [(t, f) for t in range(n) for f in range(4)]

    def rec(left):
        if not left:
            yield []
            return
        a = left[0]
        for i in range(1, len(left)):
            rest = left[1:i] + left[i + 1:]
            for m in rec(rest):
                yield [(a, left[i])] + m
    yield from rec(faces)


def _graph_key(m, n):
    adj = [[0] * n for _ in range(n)]
    for (t, _), (t2, _) in m:
        adj[t][t2] += 1
        if t != t2:
            adj[t2][t] += 1
    return min(tuple(tuple(adj[p[i]][p[j]] for j in range(n)) for i in range(n))
               for p in permutations(range(n)))


def matching_representatives(n):
    """One face matching per isomorphism class of connected multigraph.
    Any triangulation is isomorphic to one using a representative: relabel
    tetrahedra along the graph isomorphism, then permute vertices."""
    reps = {}
    for m in face_matchings(n):
        k = _graph_key(m, n)
        if k not in reps and _connected(m, n):
            reps[k] = m
    return list(reps.values())


def _connected(m, n):
    seen, stack = {0}, [0]
    while stack:
        t = stack.pop()
        for (a, _), (b, _) in m:
            for x, y in ((a, b), (b, a)):
                if x == t and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == n


def closed_and_valid(n, pairs, perms):
    """Edges not reversed onto themselves and every vertex link a sphere:
    for a closed pseudo-manifold with valid edges V - E + F - T sums
    1 - chi(link)/2 >= 0 over vertices, so it vanishes iff all links are
    spheres."""
    vpar = list(range(4 * n))
    epar = {}
    for t in range(n):
        for a in range(4):
            for b in range(4):
                if a != b:
                    epar[t, a, b] = (t, a, b)

    def vf(x):
        while vpar[x] != x:
            x = vpar[x]
        return x

    def ef(x):
        while epar[x] != x:
            x = epar[x]
        return x
    for ((t, f), (t2, _)), p in zip(pairs, perms):
        q = S4[p]
        vs = [v for v in range(4) if v != f]
        for v in vs:
            a, b = vf(4 * t + v), vf(4 * t2 + q[v])
            if a != b:
                vpar[a] = b
            for w in vs:
                if w != v:
                    a, b = ef((t, v, w)), ef((t2, q[v], q[w]))
                    if a != b:
                        epar[a] = b
    for t in range(n):
        for a in range(4):
            for b in range(a + 1, 4):
                if ef((t, a, b)) == ef((t, b, a)):
                    return False
    nv = len({vf(x) for x in range(4 * n)})
    # valid edges: each class of oriented edges pairs with its reverse
    ne = len({ef(k) for k in epar}) // 2
    return nv - ne + 2 * n - n == 0


def closed_triangulations(n):
    """Every closed connected valid triangulation with ``n`` tetrahedra up
    to isomorphism, as labelled objects (repeats allowed)."""
    for m in matching_representatives(n):
        for perms in product(*(FACE_MAPS[f][g] for (_, f), (_, g) in m)):
            if not closed_and_valid(n, m, perms):
                continue
            adj = [[None] * 4 for _ in range(n)]
            for ((t, f), (t2, f2)), p in zip(m, perms):
                adj[t][f] = (t2, p)
                adj[t2][f2] = (t, S4.index(tuple(S4[p].index(i) for i in range(4))))
            yield Triangulation(adj)


def relabel_key(tri, tet_perm, vperms):
    return tuple(tuple(row) for row in tri.relabel(tet_perm, vperms).gluing_table())


def brute_canonical(tri):
    """Least gluing table over every relabelling (n! * 24^n of them)."""
    n = tri.size
    best = None
    for tp in permutations(range(n)):
        for vps in product(S4, repeat=n):
            k = relabel_key(tri, tp, vps)
            if best is None or k < best:
                best = k
    return best


def random_relabel(tri, rng=random):
    n = tri.size
    tp = list(range(n))
    rng.shuffle(tp)
    return tri.relabel(tp, [rng.choice(S4) for _ in range(n)])


def disc_partition(code):
    """Vertex partition cut by disc ``code`` (0 none, 1+v triangle, 5+k quad
    separating {0, k+1} from the rest)."""
    if code == 0:
        return None
    if code <= 4:
        v = code - 1
        return frozenset({frozenset({v}), frozenset(set(range(4)) - {v})})
    a = code - 4
    return frozenset({frozenset({0, a}), frozenset(set(range(4)) - {0, a})})


def _face_trace(code, f):
    part = disc_partition(code)
    if part is None:
        return None
    sides = frozenset(frozenset(s - {f}) for s in part)
    if frozenset() in sides:
        return None          # the disc misses this face
    return sides


def choices_match(tri, choices):
    for t in range(tri.size):
        for f in range(4):
            g = tri.raw(t, f)
            if g is None:
                continue
            t2, p = g
            q = S4[p]
            a, b = _face_trace(choices[t], f), _face_trace(choices[t2], q[f])
            if a is None or b is None:
                if (a is None) != (b is None):
                    return False
                continue
            if frozenset(frozenset(q[v] for v in s) for s in a) != b:
                return False
    return True


def brute_central_surfaces(tri):
    """All non-empty choice vectors with matching arcs, over all 8^n."""
    return sorted(ch for ch in product(range(8), repeat=tri.size)
                  if any(ch) and choices_match(tri, ch))
