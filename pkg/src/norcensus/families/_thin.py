"""Compiled search for thin I-bundle complexes.

Each level of the depth-first search keeps a full copy of the union-find
state for edges and vertices, so backtracking is a row copy.  Leaves are
kept only when their breadth-first labelling is the least among all
labellings the search could have produced, so every complex (with its disc
choice) is reported once.
"""
import numpy as np
from numba import njit

from ..perm import INDEX, INVERSE, S4
from ..surfaces import ARC, CORNERS, QUADS
from ..triangulation import EDGE_NUMBER

_S4 = np.array(S4, dtype=np.int64)
_INV = np.array(INVERSE, dtype=np.int64)
_INDEX = np.full(256, -1, dtype=np.int64)
for _p, _i in INDEX.items():
    _INDEX[_p[0] * 64 + _p[1] * 16 + _p[2] * 4 + _p[3]] = _i
_ARC = np.array([[-1 if a is None else a for a in row] for row in ARC], dtype=np.int64)
_CROSSED = np.zeros((8, 6), dtype=np.int64)
for _c in range(8):
    for _e in CORNERS[_c]:
        _CROSSED[_c, _e] = 1
_EN = np.full(16, -1, dtype=np.int64)
for (_a, _b), _e in EDGE_NUMBER.items():
    _EN[4 * _a + _b] = _e
    _EN[4 * _b + _a] = _e
_QUADK = np.full(16, -1, dtype=np.int64)
for _k, (_a, _b) in enumerate(QUADS):
    _rest = [v for v in range(4) if v not in (_a, _b)]
    for x, y in ((_a, _b), (_rest[0], _rest[1])):
        _QUADK[4 * x + y] = _k
        _QUADK[4 * y + x] = _k
# which side of the disc a cut-off vertex lies on (apex side / first pair = 0)
_SIDE = np.zeros((8, 4), dtype=np.int64)
for _k, (_a, _b) in enumerate(QUADS):
    for _v in range(4):
        _SIDE[5 + _k, _v] = 0 if _v in (_a, _b) else 1


@njit(cache=True)
def _find(parent, rel, x):
    p = 0
    while parent[x] != x:
        p ^= rel[x]
        x = parent[x]
    return x, p


@njit(cache=True)
def _disc_image(c, sigma, quadk):
    if c <= 4:
        return 1 + sigma[c - 1]
    k = c - 5
    return 5 + quadk[4 * sigma[0] + sigma[k + 1]]


@njit(cache=True)
def _code(n, ch, adjt, adjp, s, sigma, s4, index, quadk, ref, compare):
    """Breadth-first code from tetrahedron ``s`` relabelled by ``sigma``.

    With ``compare`` the code is checked against ``ref``: returns -1 as soon
    as it is smaller, +1 as soon as it is larger, 0 if equal.  Otherwise the
    code is written into ``ref`` and 0 is returned.
    """
    newid = np.full(n, -1, dtype=np.int64)
    order = np.zeros(n, dtype=np.int64)
    rho = np.zeros((n, 4), dtype=np.int64)
    rinv = np.zeros((n, 4), dtype=np.int64)
    newid[s] = 0
    order[0] = s
    for v in range(4):
        rho[0, v] = sigma[v]
        rinv[0, sigma[v]] = v
    seen = 1
    pos = 0
    q = np.zeros(4, dtype=np.int64)
    for j in range(n):
        if j >= seen:
            return 1  # disconnected; never smaller
        o = order[j]
        val = _disc_image(ch[o], rho[j], quadk)
        if compare:
            if val < ref[pos]:
                return -1
            if val > ref[pos]:
                return 1
        else:
            ref[pos] = val
        pos += 1
        for nf in range(4):
            of = rinv[j, nf]
            u = adjt[o, of]
            if u < 0:
                val = 0
            else:
                p = adjp[o, of]
                if newid[u] < 0:
                    newid[u] = seen
                    order[seen] = u
                    for x in range(4):
                        y = s4[p, x]
                        rho[seen, y] = rho[j, x]
                        rinv[seen, rho[j, x]] = y
                    seen += 1
                k = newid[u]
                for x in range(4):
                    q[rho[j, x]] = rho[k, s4[p, x]]
                qi = index[q[0] * 64 + q[1] * 16 + q[2] * 4 + q[3]]
                val = 1 + k * 24 + qi
            if compare:
                if val < ref[pos]:
                    return -1
                if val > ref[pos]:
                    return 1
            else:
                ref[pos] = val
            pos += 1
    return 0


@njit(cache=True)
def _is_canonical(n, ch, adjt, adjp, s4, index, quadk, triangles, quads):
    ref = np.zeros(5 * n, dtype=np.int64)
    ident = np.array([0, 1, 2, 3], dtype=np.int64)
    _code(n, ch, adjt, adjp, 0, ident, s4, index, quadk, ref, False)
    for s in range(n):
        c = ch[s]
        for pi in range(24):
            sigma = s4[pi]
            img = _disc_image(c, sigma, quadk)
            if img != 1 and img != 5:
                continue
            if s == 0 and pi == 0:
                continue
            if _code(n, ch, adjt, adjp, s, sigma, s4, index, quadk, ref, True) < 0:
                return False
    return True


@njit(cache=True)
def _open_tet(L, t, c, epar, erel, esize, etw, eopen, ebd, eflag, vpar, vsize, vopen,
              vbd, ch, crossed, en):
    ch[L, t] = c
    for e in range(6):
        x = 6 * t + e
        epar[L, x] = x
        erel[L, x] = 0
        esize[L, x] = 1
        etw[L, x] = 0
        o = 0
        for f in range(4):
            # edge e lies on face f unless f is one of its endpoints
            on = True
            for w in range(4):
                if w != f and en[4 * f + w] == e:
                    on = False
            if on and not (c <= 4 and f == c - 1):
                o += 1
        eopen[L, x] = o
        ebd[L, x] = 2 - o
        eflag[L, x] = 1 - crossed[c, e]
    for v in range(4):
        x = 4 * t + v
        vpar[L, x] = x
        vsize[L, x] = 1
        o = 0
        for f in range(4):
            if f != v and not (c <= 4 and f == c - 1):
                o += 1
        vopen[L, x] = o
        vbd[L, x] = 3 - o


@njit(cache=True)
def _search(n, triangles, s4, index, inverse, arc, crossed, en, quadk, limit, side, two_sided):
    quads = n - triangles
    ne, nv = 6 * n, 4 * n
    depth = (4 * n - triangles) // 2 + 2
    internal = (4 * n - triangles) // 2
    lim_s = internal - n
    lim_b = 3 * triangles // 2
    lim_v = max(triangles // 2, 1)
    # per-level state
    epar = np.zeros((depth, ne), dtype=np.int64)
    erel = np.zeros((depth, ne), dtype=np.int64)
    esize = np.zeros((depth, ne), dtype=np.int64)
    etw = np.zeros((depth, ne), dtype=np.int64)
    eopen = np.zeros((depth, ne), dtype=np.int64)
    ebd = np.zeros((depth, ne), dtype=np.int64)
    eflag = np.zeros((depth, ne), dtype=np.int64)
    vpar = np.zeros((depth, nv), dtype=np.int64)
    vsize = np.zeros((depth, nv), dtype=np.int64)
    vopen = np.zeros((depth, nv), dtype=np.int64)
    vbd = np.zeros((depth, nv), dtype=np.int64)
    ch = np.zeros((depth, n), dtype=np.int64)
    # disc sidedness: spar/srel is a parity union-find over tetrahedra
    spar = np.zeros((depth, n), dtype=np.int64)
    srel = np.zeros((depth, n), dtype=np.int64)
    adjt = np.full((depth, n, 4), -1, dtype=np.int64)
    adjp = np.zeros((depth, n, 4), dtype=np.int64)
    cnt = np.zeros((depth, 5), dtype=np.int64)  # tets, tri, sverts, bedges, verts
    slot = np.zeros((depth, 2), dtype=np.int64)
    maxopt = 2 + 8 * n
    opt_t2 = np.zeros((depth, maxopt), dtype=np.int64)
    opt_p = np.zeros((depth, maxopt), dtype=np.int64)
    opt_c = np.zeros((depth, maxopt), dtype=np.int64)
    nopt = np.zeros(depth, dtype=np.int64)
    optpos = np.zeros(depth, dtype=np.int64)
    out_ch = np.zeros((limit, n), dtype=np.int64)
    out_t = np.zeros((limit, n, 4), dtype=np.int64)
    out_p = np.zeros((limit, n, 4), dtype=np.int64)
    nout = 0
    leaves = 0
    overflow = False
    rest = np.zeros(2, dtype=np.int64)
    rest2 = np.zeros(2, dtype=np.int64)
    perm = np.zeros(4, dtype=np.int64)
    ident = index[0 * 64 + 1 * 16 + 2 * 4 + 3]

    for start in range(2):
        c0 = 1 if start == 0 else 5
        if (start == 0 and triangles == 0) or (start == 1 and quads == 0):
            continue
        # level 0: tetrahedron 0 alone
        d = 0
        cnt[0, :] = 0
        adjt[0, :, :] = -1
        ch[0, :] = 0
        _open_tet(0, 0, c0, epar, erel, esize, etw, eopen, ebd, eflag, vpar, vsize, vopen,
                  vbd, ch, crossed, en)
        cnt[0, 0] = 1
        cnt[0, 1] = 1 if c0 <= 4 else 0
        for i in range(n):
            spar[0, i] = i
            srel[0, i] = 0
        slot[0, 0] = 0
        slot[0, 1] = 0
        # find first slot
        found = False
        tt, ff = 0, 0
        while tt < cnt[0, 0] and not found:
            while ff < 4:
                cc = ch[0, tt]
                if adjt[0, tt, ff] < 0 and not (cc <= 4 and ff == cc - 1):
                    found = True
                    break
                ff += 1
            if not found:
                tt += 1
                ff = 0
        if not found:
            continue
        slot[0, 0] = tt
        slot[0, 1] = ff
        build = True
        while d >= 0:
            if build:
                # options for slot at level d
                t = slot[d, 0]
                f = slot[d, 1]
                c = ch[d, t]
                u = arc[c, f]
                k = 0
                if cnt[d, 0] < n:
                    if cnt[d, 1] < triangles:
                        opt_t2[d, k] = cnt[d, 0]
                        opt_p[d, k] = ident
                        opt_c[d, k] = 1 + u
                        k += 1
                    if cnt[d, 0] - cnt[d, 1] < quads:
                        opt_t2[d, k] = cnt[d, 0]
                        opt_p[d, k] = ident
                        opt_c[d, k] = 5 + quadk[4 * f + u]
                        k += 1
                j = 0
                for v in range(4):
                    if v != f and v != u:
                        rest[j] = v
                        j += 1
                for t2 in range(t, cnt[d, 0]):
                    c2 = ch[d, t2]
                    for g in range(4):
                        if t2 == t and g <= f:
                            continue
                        if adjt[d, t2, g] >= 0:
                            continue
                        if c2 <= 4 and g == c2 - 1:
                            continue
                        u2 = arc[c2, g]
                        j = 0
                        for v in range(4):
                            if v != g and v != u2:
                                rest2[j] = v
                                j += 1
                        for flip in range(2):
                            perm[f] = g
                            perm[u] = u2
                            perm[rest[0]] = rest2[flip]
                            perm[rest[1]] = rest2[1 - flip]
                            opt_t2[d, k] = t2
                            opt_p[d, k] = index[perm[0] * 64 + perm[1] * 16 + perm[2] * 4 + perm[3]]
                            opt_c[d, k] = -1
                            k += 1
                nopt[d] = k
                optpos[d] = 0
                build = False
            if optpos[d] >= nopt[d]:
                d -= 1
                continue
            k = optpos[d]
            optpos[d] += 1
            e1 = d + 1
            epar[e1] = epar[d]
            erel[e1] = erel[d]
            esize[e1] = esize[d]
            etw[e1] = etw[d]
            eopen[e1] = eopen[d]
            ebd[e1] = ebd[d]
            eflag[e1] = eflag[d]
            vpar[e1] = vpar[d]
            vsize[e1] = vsize[d]
            vopen[e1] = vopen[d]
            vbd[e1] = vbd[d]
            ch[e1] = ch[d]
            spar[e1] = spar[d]
            srel[e1] = srel[d]
            adjt[e1] = adjt[d]
            adjp[e1] = adjp[d]
            cnt[e1] = cnt[d]
            t = slot[d, 0]
            f = slot[d, 1]
            t2 = opt_t2[d, k]
            p = opt_p[d, k]
            c2 = opt_c[d, k]
            if c2 >= 0:
                _open_tet(e1, t2, c2, epar, erel, esize, etw, eopen, ebd, eflag, vpar, vsize,
                          vopen, vbd, ch, crossed, en)
                cnt[e1, 0] += 1
                if c2 <= 4:
                    cnt[e1, 1] += 1
            # glue (t, f) to t2 by p
            f2 = s4[p, f]
            adjt[e1, t, f] = t2
            adjp[e1, t, f] = p
            adjt[e1, t2, f2] = t
            adjp[e1, t2, f2] = inverse[p]
            ok = True
            if two_sided:
                # the cut-off vertex lies on the same side of both discs
                want = side[ch[e1, t], arc[ch[e1, t], f]] ^ side[ch[e1, t2], arc[ch[e1, t2], f2]]
                rx, px = _find(spar[e1], srel[e1], t)
                ry, py = _find(spar[e1], srel[e1], t2)
                if rx == ry:
                    if (px ^ py) != want:
                        continue
                else:
                    spar[e1, ry] = rx
                    srel[e1, ry] = px ^ py ^ want
            for a in range(4):
                if a == f:
                    continue
                for b in range(a + 1, 4):
                    if b == f:
                        continue
                    e = en[4 * a + b]
                    xa = s4[p, a]
                    xb = s4[p, b]
                    e2 = en[4 * xa + xb]
                    flip = 1 if xa > xb else 0
                    rx, px = _find(epar[e1], erel[e1], 6 * t + e)
                    ry, py = _find(epar[e1], erel[e1], 6 * t2 + e2)
                    if rx == ry:
                        if (px ^ py) != flip:
                            etw[e1, rx] = 1
                        r = rx
                    else:
                        if esize[e1, rx] < esize[e1, ry]:
                            rx, ry = ry, rx
                            px, py = py, px
                        epar[e1, ry] = rx
                        erel[e1, ry] = px ^ py ^ flip
                        esize[e1, rx] += esize[e1, ry]
                        etw[e1, rx] = etw[e1, rx] | etw[e1, ry]
                        eopen[e1, rx] += eopen[e1, ry]
                        ebd[e1, rx] += ebd[e1, ry]
                        eflag[e1, rx] += eflag[e1, ry]
                        r = rx
                    eopen[e1, r] -= 2
                    if etw[e1, r] or ebd[e1, r] > 2:
                        ok = False
                    elif eopen[e1, r] == 0:
                        if ebd[e1, r] == 1 or (ebd[e1, r] == 0 and eflag[e1, r] > 0):
                            ok = False
                        elif eflag[e1, r] > 0:
                            cnt[e1, 3] += 1
                        else:
                            cnt[e1, 2] += 1
            for v in range(4):
                if v == f:
                    continue
                x = 4 * t + v
                while vpar[e1, x] != x:
                    x = vpar[e1, x]
                y = 4 * t2 + s4[p, v]
                while vpar[e1, y] != y:
                    y = vpar[e1, y]
                if x != y:
                    if vsize[e1, x] < vsize[e1, y]:
                        x, y = y, x
                    vpar[e1, y] = x
                    vsize[e1, x] += vsize[e1, y]
                    vopen[e1, x] += vopen[e1, y]
                    vbd[e1, x] += vbd[e1, y]
                vopen[e1, x] -= 2
                if vopen[e1, x] == 0:
                    if vbd[e1, x] == 0:
                        ok = False
                    cnt[e1, 4] += 1
            if cnt[e1, 2] > lim_s or cnt[e1, 3] > lim_b or cnt[e1, 4] > lim_v:
                ok = False
            if not ok:
                continue
            # next slot
            found = False
            tt = t
            ff = f + 1
            while tt < cnt[e1, 0] and not found:
                while ff < 4:
                    cc = ch[e1, tt]
                    if adjt[e1, tt, ff] < 0 and not (cc <= 4 and ff == cc - 1):
                        found = True
                        break
                    ff += 1
                if not found:
                    tt += 1
                    ff = 0
            if not found:
                if cnt[e1, 0] == n and cnt[e1, 1] == triangles and cnt[e1, 2] == lim_s \
                        and cnt[e1, 3] == lim_b and cnt[e1, 4] == lim_v:
                    leaves += 1
                    if _is_canonical(n, ch[e1], adjt[e1], adjp[e1], s4, index, quadk,
                                     triangles, quads):
                        if nout < limit:
                            out_ch[nout] = ch[e1]
                            out_t[nout] = adjt[e1]
                            out_p[nout] = adjp[e1]
                            nout += 1
                        else:
                            overflow = True
                continue
            slot[e1, 0] = tt
            slot[e1, 1] = ff
            d = e1
            build = True
    return out_ch[:nout], out_t[:nout], out_p[:nout], leaves, overflow


def raw_thin_complexes(n, triangles, limit=1 << 16, two_sided=False):
    """Canonically labelled arc-matching complexes with ``n`` tetrahedra of
    which ``triangles`` carry triangles.  ``two_sided`` prunes complexes
    whose central surface is one-sided.

    Returns ``(choices, adjacency)`` pairs, adjacency as lists of
    ``(tet, perm index)`` or ``None``.
    """
    if not 0 <= triangles <= n or (4 * n - triangles) % 2:
        return []
    chs, ts, ps, _, overflow = _search(n, triangles, _S4, _INDEX, _INV, _ARC, _CROSSED,
                                       _EN, _QUADK, limit, _SIDE, two_sided)
    if overflow:
        raise RuntimeError("thin I-bundle search exceeded its output limit")
    out = []
    for c, t, p in zip(chs, ts, ps):
        adj = [[None if t[i, f] < 0 else (int(t[i, f]), int(p[i, f])) for f in range(4)]
               for i in range(n)]
        out.append(([int(x) for x in c], adj))
    return out
