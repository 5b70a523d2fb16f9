"""Isomorphism signatures.

A signature is the lexicographically least encoding over every choice of
starting tetrahedron and starting vertex labelling of a breadth-first
relabelling.  Orientation-reversing labellings are included, so signatures
are unoriented.

Layout: one width character ``w`` followed by ``w`` base-64 digits of the
tetrahedron count, then one token per face visited in canonical order whose
partner face has not yet been visited:

* ``a`` boundary face,
* ``b`` glued to the next unvisited tetrahedron by the identity,
* ``c`` followed by ``w`` digits (partner tetrahedron) and one digit
  (gluing permutation index).
"""
from .perm import COMPOSE, INVERSE, S4
from .triangulation import Triangulation, TriangulationError

ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-"
_DIGIT = {c: i for i, c in enumerate(ALPHABET)}

EMPTY_SIGNATURE = ALPHABET[0]

_BOUNDARY, _NEW, _OLD = 0, 1, 2


class Disconnected(TriangulationError):
    pass


class MalformedSignature(ValueError):
    pass


def _width(n):
    w = 1
    while n >= 64 ** w:
        w += 1
    return w


def _digits(x, w):
    out = []
    for _ in range(w):
        out.append(ALPHABET[x % 64])
        x //= 64
    return "".join(reversed(out))


def _bfs_code(adj, n, start, perm, best):
    """Token list for one starting choice, or None once it exceeds ``best``.

    ``perm`` maps old vertex labels of ``start`` to new labels.
    """
    label = [-1] * n
    vmap = [0] * n
    order = [start]
    label[start] = 0
    vmap[start] = perm
    code = []
    pos = 0  # first index where code may still differ from best
    tight = best is not None
    for i in range(n):
        if i >= len(order):
            return None  # disconnected
        t = order[i]
        vt = vmap[t]
        inv = INVERSE[vt]
        for j in range(4):
            f = S4[inv][j]
            g = adj[t][f]
            if g is None:
                toks = (_BOUNDARY,)
            else:
                t2, p = g
                if label[t2] < 0:
                    label[t2] = len(order)
                    order.append(t2)
                    vmap[t2] = COMPOSE[vt][INVERSE[p]]
                    toks = (_NEW,)
                else:
                    q = COMPOSE[COMPOSE[vmap[t2]][p]][inv]
                    k2 = label[t2]
                    j2 = S4[q][j]
                    if k2 < i or (k2 == i and j2 < j):
                        continue
                    toks = (_OLD, k2, q)
            for x in toks:
                if tight:
                    y = best[pos]
                    if x > y:
                        return None
                    if x < y:
                        tight = False
                pos += 1
                code.append(x)
    return code


def _encode(n, code):
    w = _width(n)
    out = [ALPHABET[w], _digits(n, w)]
    k = 0
    while k < len(code):
        x = code[k]
        if x == _OLD:
            out.append("c" + _digits(code[k + 1], w) + ALPHABET[code[k + 2]])
            k += 3
        else:
            out.append("ab"[x])
            k += 1
    return "".join(out)


def canonical_code(tri):
    n = tri.size
    adj = tri._adj
    best = None
    for start in range(n):
        for perm in range(24):
            code = _bfs_code(adj, n, start, perm, best)
            if code is None:
                if best is None:
                    raise Disconnected("signatures need a connected triangulation")
                continue
            if best is None or code < best:
                best = code
    return best


def canonical_signature(tri):
    """Canonical signature string of a connected triangulation."""
    if tri.size == 0:
        return EMPTY_SIGNATURE
    return _encode(tri.size, canonical_code(tri))


def canonical_isomorphism(tri):
    """Return ``(tet_perm, vertex_perms)`` realising the canonical labelling."""
    n = tri.size
    adj = tri._adj
    best, arg = None, None
    for start in range(n):
        for perm in range(24):
            code = _bfs_code(adj, n, start, perm, best)
            if code is not None and (best is None or code < best):
                best, arg = code, (start, perm)
    if arg is None:
        raise Disconnected("signatures need a connected triangulation")
    start, perm = arg
    label = [-1] * n
    vmap = [0] * n
    order = [start]
    label[start] = 0
    vmap[start] = perm
    for i in range(n):
        t = order[i]
        inv = INVERSE[vmap[t]]
        # faces in the order of their new labels, as in _bfs_code
        for j in range(4):
            f = S4[inv][j]
            g = adj[t][f]
            if g is not None and label[g[0]] < 0:
                label[g[0]] = len(order)
                order.append(g[0])
                vmap[g[0]] = COMPOSE[vmap[t]][INVERSE[g[1]]]
    return label, [S4[v] for v in vmap]


def _read(sig, k, w):
    if k + w > len(sig):
        raise MalformedSignature("signature truncated")
    x = 0
    for c in sig[k:k + w]:
        if c not in _DIGIT:
            raise MalformedSignature(f"bad character {c!r}")
        x = 64 * x + _DIGIT[c]
    return x, k + w


def from_signature(sig):
    """Rebuild a triangulation from its signature."""
    if not isinstance(sig, str) or not sig:
        raise MalformedSignature("empty signature")
    if sig[0] not in _DIGIT:
        raise MalformedSignature(f"bad character {sig[0]!r}")
    w = _DIGIT[sig[0]]
    if w == 0:
        if len(sig) != 1:
            raise MalformedSignature("trailing characters")
        return Triangulation([])
    n, k = _read(sig, 1, w)
    if n == 0:
        raise MalformedSignature("zero size with nonzero width")
    # every code character settles at most two faces
    if 2 * n > len(sig) - k:
        raise MalformedSignature("signature truncated")
    adj = [[None] * 4 for _ in range(n)]
    done = [[False] * 4 for _ in range(n)]
    used = 1
    for i in range(n):
        if i >= used:
            raise MalformedSignature("signature describes a disconnected complex")
        for j in range(4):
            if done[i][j]:
                continue
            if k >= len(sig):
                raise MalformedSignature("signature truncated")
            c = sig[k]
            k += 1
            done[i][j] = True
            if c == "a":
                continue
            if c == "b":
                if used >= n:
                    raise MalformedSignature("too many tetrahedra")
                t2, q = used, 0
                used += 1
            elif c == "c":
                t2, k = _read(sig, k, w)
                q, k = _read(sig, k, 1)
                if t2 >= used or q >= 24:
                    raise MalformedSignature("gluing index out of range")
            else:
                raise MalformedSignature(f"bad token {c!r}")
            j2 = S4[q][j]
            if done[t2][j2]:
                raise MalformedSignature("face glued twice")
            done[t2][j2] = True
            adj[i][j] = (t2, q)
            adj[t2][j2] = (i, INVERSE[q])
    if k != len(sig):
        raise MalformedSignature("trailing characters")
    try:
        return Triangulation(adj)
    except TriangulationError as exc:
        raise MalformedSignature(str(exc)) from exc


def are_isomorphic(a, b):
    if a.size != b.size:
        return False
    return canonical_signature(a) == canonical_signature(b)
