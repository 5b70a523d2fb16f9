import random

import pytest

from norcensus import Perm4, Triangulation, TriangulationBuilder, from_text, layer_on_edge, to_text
from norcensus.algebra import first_homology
from norcensus.families.lst import LstParams, boundary_edge_weights, build_layered_solid_torus
from norcensus.perm import COMPOSE, INVERSE, S4
from norcensus.triangulation import (EdgeNotSharedByTwoBoundaryFaces, FormatError,
                                     InconsistentGluing, IndexOutOfRange, NotBoundaryEdge,
                                     SelfGluing, read_triangulations)

from oracles import closed_triangulations, random_relabel


def test_perm4_basics():
    p = Perm4((1, 2, 3, 0))
    assert p(0) == 1 and p.inverse()(1) == 0
    assert Perm4.from_string("1230") == p
    assert Perm4.from_index(p.index) == p
    assert p.sign() == -1
    with pytest.raises(ValueError):
        Perm4((0, 0, 1, 2))
    for a in range(24):
        assert COMPOSE[a][INVERSE[a]] == COMPOSE[0][0] == 0


def test_single_tetrahedron():
    tri = Triangulation([[None] * 4])
    assert len(tri.boundary_faces()) == 4
    sk = tri.skeleton
    assert (sk.num_vertices, sk.num_edges, sk.num_faces) == (4, 6, 4)
    assert all(chi == 1 for chi in sk.vertex_link_euler)
    assert not tri.is_closed()
    assert tri.is_valid() and tri.is_orientable()


def test_inconsistent_gluing():
    with pytest.raises(InconsistentGluing):
        Triangulation([[(1, (0, 1, 2, 3)), None, None, None],
                       [(0, (1, 0, 2, 3)), None, None, None]])


def test_bad_tables():
    with pytest.raises(SelfGluing):
        Triangulation([[(0, (0, 1, 2, 3)), None, None, None]])
    with pytest.raises(IndexOutOfRange):
        Triangulation([[(3, (0, 1, 2, 3)), None, None, None]])
    with pytest.raises(IndexOutOfRange):
        Triangulation([[None] * 3])
    bld = TriangulationBuilder()
    t = bld.new_tet()
    with pytest.raises(SelfGluing):
        bld.join(t, 0, t, (0, 1, 2, 3))


def test_closed_invariants_small():
    for n in (1, 2):
        for tri in closed_triangulations(n):
            sk = tri.skeleton
            assert sk.euler_characteristic(n) == 0
            assert sk.num_faces == 2 * n
            assert all(chi == 2 for chi in sk.vertex_link_euler)
            assert all(sk.vertex_link_closed)
            # involution: following a gluing and back is the identity
            for t in range(n):
                for f in range(4):
                    t2, p = tri.raw(t, f)
                    t3, q = tri.raw(t2, S4[p][f])
                    assert t3 == t and COMPOSE[q][p] == 0


def _orientable_oracle(tri):
    # try every sign labelling; a gluing preserves orientation iff its
    # permutation is odd after the labels are applied
    from itertools import product
    n = tri.size
    for signs in product((1, -1), repeat=n):
        ok = True
        for t in range(n):
            for f in range(4):
                g = tri.raw(t, f)
                if g is None:
                    continue
                t2, p = g
                if signs[t] * signs[t2] * Perm4.from_index(p).sign() != -1:
                    ok = False
        if ok:
            return True
    return False


def test_orientability_matches_labelling_oracle():
    for n in (1, 2):
        for tri in closed_triangulations(n):
            assert tri.is_orientable() == _orientable_oracle(tri)
    seen = {tri.is_orientable() for tri in closed_triangulations(2)}
    assert seen == {True, False}


def test_text_round_trip():
    rng = random.Random(1)
    for tri in list(closed_triangulations(2))[:20]:
        t2 = random_relabel(tri, rng)
        assert from_text(to_text(t2)).gluing_table() == t2.gluing_table()
    lst = build_layered_solid_torus(LstParams(2, 3, 5)).tri
    text = to_text(lst)
    assert "bdry" in text
    assert [x.gluing_table() for x in read_triangulations(text + "\n" + text)] == \
        [lst.gluing_table()] * 2
    with pytest.raises(FormatError):
        from_text("tets 2\n0:1023 bdry bdry bdry\n")
    with pytest.raises(FormatError):
        from_text("hello")


def _lst_edges(tri):
    sk = tri.skeleton
    return [e for e in range(sk.num_edges) if sk.edge_boundary[e]]


def test_layer_on_lst123():
    base = build_layered_solid_torus(LstParams(1, 2, 3)).tri
    assert base.size == 1 and len(base.boundary_faces()) == 2
    results = set()
    for e in _lst_edges(base):
        out = layer_on_edge(base, e)
        assert out.size == 2
        assert len(out.boundary_faces()) == 2
        assert first_homology(out) == first_homology(base)
        results.add(tuple(sorted(w for _, w in boundary_edge_weights(out))))
    assert (2, 3, 5) in results and (1, 3, 4) in results


def test_layering_errors():
    tri = Triangulation([[None] * 4])
    with pytest.raises(IndexOutOfRange):
        layer_on_edge(tri, 99)
    closed = next(iter(closed_triangulations(1)))
    with pytest.raises(NotBoundaryEdge):
        layer_on_edge(closed, 0)
    # faces 2 and 3 folded together: the edges joining the fold line to the
    # boundary meet the boundary faces more than twice
    folded = Triangulation([[None, None, (0, (0, 1, 3, 2)), (0, (0, 1, 3, 2))]])
    with pytest.raises(EdgeNotSharedByTwoBoundaryFaces):
        layer_on_edge(folded, 1)


def test_relabel_preserves_structure():
    rng = random.Random(5)
    for tri in list(closed_triangulations(2))[:10]:
        t2 = random_relabel(tri, rng)
        assert t2.is_orientable() == tri.is_orientable()
        assert first_homology(t2) == first_homology(tri)
