"""Face pairing graphs: connected 4-regular multigraphs with loops."""
from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True, order=True)
class FacePairingGraph:
    """A face pairing graph stored as its canonical adjacency matrix.

    ``matrix[i][j]`` counts edges between nodes i and j; a loop contributes 1
    to ``matrix[i][i]`` and 2 to the degree.
    """

    matrix: tuple

    @property
    def size(self):
        return len(self.matrix)

    @property
    def canonical_form(self):
        return ";".join("".join(str(x) for x in row[i:]) for i, row in enumerate(self.matrix))

    def __str__(self):
        return self.canonical_form

    @cached_property
    def face_pairs(self):
        """Face pairs ``((t, f), (t2, f2))`` assigning graph edges to faces.

        Faces of each tetrahedron are used in increasing order and pairs are
        listed in the order their first face is reached.
        """
        n = self.size
        nxt = [0] * n
        pairs = []
        for i in range(n):
            for j in range(i, n):
                for _ in range(self.matrix[i][j]):
                    a = (i, nxt[i])
                    nxt[i] += 1
                    b = (j, nxt[j])
                    nxt[j] += 1
                    pairs.append((a, b))
        return tuple(sorted(pairs))

    def is_valid(self):
        m = self.matrix
        n = len(m)
        for i in range(n):
            if sum(m[i]) + m[i][i] != 4:
                return False
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in range(n):
                if m[u][v] and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == n

    def has_triple_edge(self):
        n = self.size
        return any(self.matrix[i][j] >= 3 for i in range(n) for j in range(i + 1, n))


def canonical_matrix(m):
    """Lexicographically least relabelled adjacency matrix (loops first)."""
    n = len(m)
    # Rows are compared in the order (diagonal, then each earlier column).
    best = [None]
    perm = []
    used = [False] * n

    def key_row(k):
        # Entries revealed when the k-th new node is placed.
        u = perm[k]
        return (m[u][u],) + tuple(-m[u][perm[j]] for j in range(k))

    def rec(prefix):
        k = len(perm)
        if k == n:
            if best[0] is None or prefix < best[0]:
                best[0] = list(prefix)
            return
        for u in range(n):
            if used[u]:
                continue
            perm.append(u)
            used[u] = True
            row = key_row(k)
            cand = prefix + [row]
            b = best[0]
            if b is None or cand <= b[:k + 1]:
                rec(cand)
            perm.pop()
            used[u] = False

    rec([])
    # rebuild matrix from an optimal ordering
    order = _order_from_key(m, best[0])
    return tuple(tuple(m[order[i]][order[j]] for j in range(n)) for i in range(n))


def _order_from_key(m, key):
    n = len(m)
    perm = []
    used = [False] * n

    def rec():
        k = len(perm)
        if k == n:
            return True
        for u in range(n):
            if used[u]:
                continue
            row = (m[u][u],) + tuple(-m[u][perm[j]] for j in range(k))
            if row != key[k]:
                continue
            perm.append(u)
            used[u] = True
            if rec():
                return True
            perm.pop()
            used[u] = False
        return False

    rec()
    return perm


def _labelled_graphs(n):
    m = [[0] * n for _ in range(n)]
    deficit = [4] * n

    def rec(maxused):
        u = next((i for i in range(n) if deficit[i]), None)
        if u is None:
            if maxused == n - 1:
                yield tuple(tuple(r) for r in m)
            return
        if u > maxused:
            return
        for v in range(u, min(maxused + 2, n)):
            if v == u:
                if deficit[u] < 2:
                    continue
                m[u][u] += 1
                deficit[u] -= 2
                yield from rec(maxused)
                deficit[u] += 2
                m[u][u] -= 1
            elif deficit[v]:
                m[u][v] += 1
                m[v][u] += 1
                deficit[u] -= 1
                deficit[v] -= 1
                yield from rec(max(maxused, v))
                deficit[u] += 1
                deficit[v] += 1
                m[u][v] -= 1
                m[v][u] -= 1

    yield from rec(0)


def enumerate_face_pairings(n):
    """All connected 4-regular multigraphs on ``n`` nodes up to isomorphism."""
    if n < 1:
        raise ValueError("need at least one node")
    seen = set()
    for m in _labelled_graphs(n):
        seen.add(canonical_matrix(m))
    graphs = [FacePairingGraph(m) for m in seen]
    assert all(g.is_valid() for g in graphs)
    return sorted(graphs, key=lambda g: g.canonical_form)
