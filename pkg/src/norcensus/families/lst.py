"""Layered solid tori.

A layered solid torus has one vertex, two boundary faces and three boundary
edges; its parameters ``(a, b, c)`` are the numbers of times the meridian
disc meets those edges.  ``LST(1,2,3)`` is the one-tetrahedron solid torus
and every other one is reached from it by layerings.  ``(1,1,2)`` is the
degenerate Mobius band plug with no tetrahedra.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from ..algebra.homology import _oriented_edge, edge_classes_in_homology
from ..triangulation import EDGE_NUMBER, Triangulation, TriangulationBuilder, layer_on_edge


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LstParams:
    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if not (1 <= a <= b <= c) or a + b != c or gcd(a, b) != 1:
            raise InvalidParams(f"({a},{b},{c}) is not a valid layered solid torus")

    @classmethod
    def of(cls, *weights):
        """Parameters from three weights in any order."""
        if len(weights) == 1:
            weights = tuple(weights[0])
        return cls(*sorted(int(w) for w in weights))

    @property
    def degenerate(self):
        return (self.a, self.b, self.c) == (1, 1, 2)

    @property
    def size(self):
        """Number of tetrahedra."""
        if self.degenerate:
            return 0
        a, b, n = self.a, self.b, 1
        while (a, b) != (1, 2):
            a, b = sorted((b - a, a))
            n += 1
        return n

    def __str__(self):
        return f"LST({self.a},{self.b},{self.c})"


DEGENERATE = LstParams(1, 1, 2)


@dataclass(frozen=True)
class LayeredSolidTorus:
    """A built layered solid torus.

    ``edges`` lists the three boundary edges as ``(tet, u, v)`` triples and
    ``weights`` their meridian weights, in the same order.  The degenerate
    plug has ``tri = None``.
    """
    params: LstParams
    tri: Triangulation
    edges: tuple
    weights: tuple

    @property
    def size(self):
        return 0 if self.tri is None else self.tri.size

    def weight_of_class(self, cls):
        sk = self.tri.skeleton
        for (t, u, v), w in zip(self.edges, self.weights):
            if sk.edge_of[t][EDGE_NUMBER[u, v]] == cls:
                return w
        raise KeyError(cls)


def boundary_edge_weights(tri):
    """``[((tet, u, v), weight)]`` for each boundary edge class of a solid
    torus, the weight being the image of the edge in H_1 = Z."""
    rank, vectors, _ = edge_classes_in_homology(tri)
    if rank != 1:
        raise InvalidParams("not a solid torus: H_1 has rank %d" % rank)
    sk = tri.skeleton
    out = {}
    for t in range(tri.size):
        for f in range(4):
            if tri.raw(t, f) is not None:
                continue
            vs = [v for v in range(4) if v != f]
            for i in range(3):
                for j in range(i + 1, 3):
                    u, v = vs[i], vs[j]
                    cls, _ = _oriented_edge(sk, t, u, v)
                    if cls not in out:
                        out[cls] = ((t, u, v), abs(vectors[cls][0]))
    return [out[c] for c in sorted(out)]


def _base():
    # face 012 onto face 123 by 0->1, 1->2, 2->3, 3->0
    bld = TriangulationBuilder()
    t = bld.new_tet()
    bld.join(t, 3, t, (1, 2, 3, 0))
    return bld.freeze()


@lru_cache(maxsize=None)
def build_layered_solid_torus(params):
    """Build ``LST(a,b,c)`` by descending to ``(1,2,3)`` and layering back."""
    if not isinstance(params, LstParams):
        params = LstParams.of(params)
    if params.degenerate:
        return LayeredSolidTorus(params, None, (), (1, 1, 2))
    chain = []
    a, b = params.a, params.b
    while (a, b) != (1, 2):
        # (a, b, a+b) comes from (b-a, a, b) by layering on the b-a edge
        chain.append(b - a)
        a, b = sorted((b - a, a))
    tri = _base()
    for w in reversed(chain):
        edges = boundary_edge_weights(tri)
        target = [e for e, x in edges if x == w]
        if len(target) != 1:
            raise InvalidParams(f"no unique boundary edge of weight {w}")
        tri = layer_on_edge(tri, target[0])
    edges = boundary_edge_weights(tri)
    weights = tuple(w for _, w in edges)
    if tuple(sorted(weights)) != (params.a, params.b, params.c):
        raise AssertionError(f"built weights {weights} for {params}")
    return LayeredSolidTorus(params, tri, tuple(e for e, _ in edges), weights)


def lst_params_up_to(max_tets):
    """All parameters (degenerate included) with at most ``max_tets`` tetrahedra."""
    out = [DEGENERATE]
    frontier = [LstParams(1, 2, 3)]
    while frontier:
        nxt = []
        for p in frontier:
            if p.size > max_tets:
                continue
            out.append(p)
            b, c = p.b, p.c
            nxt.append(LstParams.of(b, c, b + c))
            nxt.append(LstParams.of(p.a, c, p.a + c))
        frontier = sorted(set(nxt))
    return sorted(set(out))
