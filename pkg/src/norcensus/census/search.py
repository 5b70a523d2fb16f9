"""Backtracking over gluing permutations for one face pairing graph.

The kernel is compiled with numba.  Every search level keeps a full copy of
the union-find state (vertex and edge classes of at most 8 tetrahedra are a
few hundred integers), so backtracking is a row copy instead of an undo log.
"""
from dataclasses import dataclass

import numpy as np
from numba import njit

from ..perm import FACE_MAPS, S4, SIGN
from ..triangulation import EDGE_NUMBER, EDGE_VERTICES, Triangulation


@dataclass(frozen=True)
class PruningConfig:
    """Switches for the minimality rules applied during the search.

    The first three are the standard necessary conditions for a minimal
    triangulation.  The rest are stronger conditions for minimal
    triangulations of closed P^2-irreducible manifolds (one vertex, no
    3-2 move) and are also on by default.
    """

    forbid_low_degree_edges: bool = True
    forbid_triple_glued_pairs: bool = True
    forbid_identity_face_self_gluing: bool = True
    one_vertex: bool = True
    forbid_degree_three_distinct: bool = True
    orientable_links: bool = True

    @classmethod
    def none(cls):
        return cls(False, False, False, False, False, False)

    @classmethod
    def parse(cls, text):
        if text == "default":
            return cls()
        if text == "none":
            return cls.none()
        raise ValueError(f"unknown pruning preset {text!r}")

    def flags(self):
        return np.array([self.forbid_low_degree_edges, self.forbid_identity_face_self_gluing,
                         self.one_vertex, self.forbid_degree_three_distinct,
                         self.orientable_links], dtype=np.int64)


_S4 = np.array(S4, dtype=np.int64)
_SIGN = np.array(SIGN, dtype=np.int64)
_FACE_MAPS = np.array(FACE_MAPS, dtype=np.int64)
_EDGE_NUMBER = np.full((4, 4), -1, dtype=np.int64)
for (_a, _b), _e in EDGE_NUMBER.items():
    _EDGE_NUMBER[_a, _b] = _e
_EDGE_NUM_FLAT = _EDGE_NUMBER.reshape(16).copy()
_EV = np.array(EDGE_VERTICES, dtype=np.int64)


@njit(cache=True)
def _find(parent, parity, x):
    p = 0
    while parent[x] != x:
        p ^= parity[x]
        x = parent[x]
    return x, p


@njit(cache=True)
def _links_planar(n, k, pt1, pf1, pt2, pf2, ep, ef, vp, vf, vo, vsize, ev, seen, bpar, euler, bcount):
    """True iff every partial vertex link is a sphere with holes.

    Link vertices are the ends of edge classes; each component must satisfy
    chi + (boundary cycles) = 2.
    """
    ne = 6 * n
    nv = 4 * n
    for x in range(nv):
        euler[x] = 0
        bcount[x] = 0
    for x in range(2 * ne):
        seen[x] = 0
        bpar[x] = x
    # vertices of the links
    for z in range(ne):
        r, pz = _find(ep, ef, z)
        t = z // 6
        e = z - 6 * t
        for i in range(2):
            lid = 2 * r + (i ^ pz)
            if seen[lid] == 0:
                seen[lid] = 1
                c, _ = _find(vp, vf, 4 * t + ev[e, i])
                euler[c] += 1
    # faces minus edges: F - (3F + u) / 2
    for x in range(nv):
        if vp[x] == x:
            euler[x] += vsize[x] - (3 * vsize[x] + vo[x]) // 2
    # boundary cycles, from the sides of link triangles on unglued faces
    for j in range(k, 2 * n):
        for side in range(2):
            if side == 0:
                t = pt1[j]
                f = pf1[j]
            else:
                t = pt2[j]
                f = pf2[j]
            for v in range(4):
                if v == f:
                    continue
                a = -1
                b = -1
                for w in range(4):
                    if w != f and w != v:
                        if a < 0:
                            a = w
                        else:
                            b = w
                ids0 = 0
                ids1 = 0
                for q in range(2):
                    w = a if q == 0 else b
                    lo = v if v < w else w
                    hi = w if v < w else v
                    z = 6 * t + _EDGE_NUM_FLAT[lo * 4 + hi]
                    r, pz = _find(ep, ef, z)
                    end = (0 if v == lo else 1) ^ pz
                    if q == 0:
                        ids0 = 2 * r + end
                    else:
                        ids1 = 2 * r + end
                x = ids0
                while bpar[x] != x:
                    x = bpar[x]
                y = ids1
                while bpar[y] != y:
                    y = bpar[y]
                if x != y:
                    bpar[y] = x
                seen[ids0] = 2
                seen[ids1] = 2
    for x in range(2 * ne):
        if seen[x] == 2 and bpar[x] == x:
            # root of one boundary cycle: attribute to its link
            r = x // 2
            end = x - 2 * r
            t = r // 6
            e = r - 6 * t
            c, _ = _find(vp, vf, 4 * t + ev[e, end])
            bcount[c] += 1
    for x in range(nv):
        if vp[x] == x and euler[x] + bcount[x] != 2:
            return False
    return True


@njit(cache=True)
def _search(n, pt1, pf1, pt2, pf2, flags, s4, signs, face_maps, edge_number, ev, limit):
    m = 2 * n
    ne = 6 * n
    nv = 4 * n
    low_deg, fold, one_vertex, deg3, link_or = flags[0], flags[1], flags[2], flags[3], flags[4]
    # per-level state
    epar = np.empty((m + 1, ne), dtype=np.int64)
    eflip = np.empty((m + 1, ne), dtype=np.int64)
    edeg = np.empty((m + 1, ne), dtype=np.int64)
    eopen = np.empty((m + 1, ne), dtype=np.int64)
    vpar = np.empty((m + 1, nv), dtype=np.int64)
    vopen = np.empty((m + 1, nv), dtype=np.int64)
    vflip = np.empty((m + 1, nv), dtype=np.int64)
    vsize = np.empty((m + 1, nv), dtype=np.int64)
    seen = np.empty(2 * ne, dtype=np.int64)
    bpar = np.empty(2 * ne, dtype=np.int64)
    euler = np.empty(nv, dtype=np.int64)
    bcount = np.empty(nv, dtype=np.int64)
    counts = np.zeros((m + 1, 3), dtype=np.int64)  # edge classes, closed edges, vertex classes
    for x in range(ne):
        epar[0, x] = x
        eflip[0, x] = 0
        edeg[0, x] = 1
        eopen[0, x] = 2
    for x in range(nv):
        vpar[0, x] = x
        vopen[0, x] = 3
        vflip[0, x] = 0
        vsize[0, x] = 1
    counts[0, 0] = ne
    counts[0, 1] = 0
    counts[0, 2] = nv

    stats = np.zeros(m + 1, dtype=np.int64)
    out = np.empty((limit, m), dtype=np.int64)
    nout = 0
    choice = np.zeros(m + 1, dtype=np.int64)
    level = 0
    choice[0] = -1
    while level >= 0:
        choice[level] += 1
        if choice[level] >= 6:
            level -= 1
            continue
        k = level
        t1 = pt1[k]
        f1 = pf1[k]
        t2 = pt2[k]
        f2 = pf2[k]
        p = face_maps[f1, f2, choice[k]]
        if fold != 0 and t1 == t2:
            # two faces of one tetrahedron folded together about their common edge
            fixed = 0
            for v in range(4):
                if v != f1 and v != f2 and s4[p, v] == v:
                    fixed += 1
            if fixed == 2:
                continue
        # copy state
        for x in range(ne):
            epar[k + 1, x] = epar[k, x]
            eflip[k + 1, x] = eflip[k, x]
            edeg[k + 1, x] = edeg[k, x]
            eopen[k + 1, x] = eopen[k, x]
        for x in range(nv):
            vpar[k + 1, x] = vpar[k, x]
            vopen[k + 1, x] = vopen[k, x]
            vflip[k + 1, x] = vflip[k, x]
            vsize[k + 1, x] = vsize[k, x]
        counts[k + 1, 0] = counts[k, 0]
        counts[k + 1, 1] = counts[k, 1]
        counts[k + 1, 2] = counts[k, 2]
        ep = epar[k + 1]
        ef = eflip[k + 1]
        ed = edeg[k + 1]
        eo = eopen[k + 1]
        vp = vpar[k + 1]
        vo = vopen[k + 1]
        vf = vflip[k + 1]
        vs = vsize[k + 1]
        ok = True
        # vertex link triangles; the parity is an orientation of each link
        lflip = 1 if signs[p] > 0 else 0
        for v in range(4):
            if v == f1:
                continue
            x, px = _find(vp, vf, 4 * t1 + v)
            y, py = _find(vp, vf, 4 * t2 + s4[p, v])
            if x != y:
                if vo[x] < vo[y]:
                    x, y = y, x
                vp[y] = x
                vf[y] = px ^ py ^ lflip
                vo[x] += vo[y]
                vs[x] += vs[y]
                counts[k + 1, 2] -= 1
            elif link_or != 0 and (px ^ py) != lflip:
                ok = False
                break
            vo[x] -= 2
        if not ok:
            continue
        if one_vertex != 0:
            for v in range(4):
                if v == f1:
                    continue
                x = 4 * t1 + v
                while vp[x] != x:
                    x = vp[x]
                if vo[x] == 0 and counts[k + 1, 2] > 1:
                    ok = False
                    break
        if not ok:
            continue
        # edges
        for a in range(4):
            if a == f1 or not ok:
                continue
            for b in range(a + 1, 4):
                if b == f1:
                    continue
                pa = s4[p, a]
                pb = s4[p, b]
                flip = 0
                if pa > pb:
                    pa, pb = pb, pa
                    flip = 1
                x = 6 * t1 + edge_number[a, b]
                y = 6 * t2 + edge_number[pa, pb]
                rx, px = _find(ep, ef, x)
                ry, py = _find(ep, ef, y)
                if rx == ry:
                    if (px ^ py) != flip:
                        ok = False
                        break
                    r = rx
                else:
                    if ed[rx] < ed[ry]:
                        rx, ry = ry, rx
                    ep[ry] = rx
                    ef[ry] = px ^ py ^ flip
                    ed[rx] += ed[ry]
                    eo[rx] += eo[ry]
                    counts[k + 1, 0] -= 1
                    r = rx
                eo[r] -= 2
                if eo[r] == 0:
                    counts[k + 1, 1] += 1
                    d = ed[r]
                    if low_deg != 0 and d <= 2:
                        ok = False
                        break
                    if deg3 != 0 and d == 3:
                        # tetrahedra of the three edge slots
                        ta = -1
                        tb = -1
                        distinct = True
                        for z in range(ne):
                            rz, pz = _find(ep, ef, z)
                            if rz == r:
                                tz = z // 6
                                if tz == ta or tz == tb:
                                    distinct = False
                                elif ta < 0:
                                    ta = tz
                                else:
                                    tb = tz
                        if distinct:
                            ok = False
                            break
        if not ok:
            continue
        if one_vertex != 0:
            if counts[k + 1, 0] < n + 1 or counts[k + 1, 1] > n + 1:
                continue
        if link_or != 0 and not _links_planar(n, k + 1, pt1, pf1, pt2, pf2, ep, ef, vp, vf, vo,
                                              vs, ev, seen, bpar, euler, bcount):
            continue
        stats[k + 1] += 1
        if k + 1 == m:
            if counts[k + 1, 2] == 1 or one_vertex == 0:
                if nout < limit:
                    for j in range(m):
                        out[nout, j] = face_maps[pf1[j], pf2[j], choice[j]]
                nout += 1
            continue
        level += 1
        choice[level] = -1
    return out, nout, stats


def _pair_arrays(pairs):
    pt1 = np.array([a[0] for a, b in pairs], dtype=np.int64)
    pf1 = np.array([a[1] for a, b in pairs], dtype=np.int64)
    pt2 = np.array([b[0] for a, b in pairs], dtype=np.int64)
    pf2 = np.array([b[1] for a, b in pairs], dtype=np.int64)
    return pt1, pf1, pt2, pf2


LAST_STATS = []


def raw_gluings(graph, cfg=PruningConfig(), limit=1 << 20):
    """Perm-index vectors (one per face pair) accepted by the search."""
    pairs = graph.face_pairs
    arrays = _pair_arrays(pairs)
    while True:
        out, count, stats = _search(graph.size, *arrays, cfg.flags(), _S4, _SIGN, _FACE_MAPS,
                             _EDGE_NUMBER, _EV, limit)
        if count <= limit:
            LAST_STATS[:] = list(stats)
            return pairs, out[:count]
        limit = count


def gluings_to_triangulation(n, pairs, perms):
    table = [[None] * 4 for _ in range(n)]
    inv = {p: i for i, p in enumerate(S4)}
    for ((t1, f1), (t2, f2)), p in zip(pairs, perms):
        p = int(p)
        table[t1][f1] = (t2, p)
        q = inv[tuple(S4[p].index(i) for i in range(4))]
        table[t2][f2] = (t1, q)
    return Triangulation(table)
