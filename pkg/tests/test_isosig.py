import random

import pytest

from norcensus.families.lst import LstParams, build_layered_solid_torus
from norcensus.isosig import (MalformedSignature, are_isomorphic, canonical_isomorphism,
                              canonical_signature, from_signature)
from norcensus.triangulation import Triangulation

from oracles import brute_canonical, closed_triangulations, random_relabel


def small_closed(n):
    return list(closed_triangulations(n))


def test_empty_signature_is_fixed():
    s = canonical_signature(Triangulation([]))
    assert s == canonical_signature(Triangulation([]))
    assert from_signature(s).size == 0


def test_round_trip_and_relabel_invariance():
    rng = random.Random(11)
    for n in (1, 2, 3):
        for tri in small_closed(n)[::7]:
            s = canonical_signature(tri)
            assert canonical_signature(from_signature(s)) == s
            for _ in range(5):
                assert canonical_signature(random_relabel(tri, rng)) == s


def test_signature_equality_is_isomorphism():
    # brute-force canonical forms over all relabellings
    for n in (1, 2):
        tris = small_closed(n)
        sig_classes, brute_classes = {}, {}
        for k, tri in enumerate(tris):
            sig_classes.setdefault(canonical_signature(tri), set()).add(k)
            brute_classes.setdefault(brute_canonical(tri), set()).add(k)
        assert sorted(map(sorted, sig_classes.values())) == \
            sorted(map(sorted, brute_classes.values()))


def test_canonical_isomorphism_lands_on_signature():
    rng = random.Random(2)
    tri = random_relabel(small_closed(2)[3], rng)
    tet_perm, vperms = canonical_isomorphism(tri)
    canon = tri.relabel(tet_perm, vperms)
    assert canon.gluing_table() == from_signature(canonical_signature(tri)).gluing_table()


def test_lst_signature():
    lst = build_layered_solid_torus(LstParams(1, 2, 3)).tri
    back = from_signature(canonical_signature(lst))
    assert back.size == 1 and len(back.boundary_faces()) == 2
    assert are_isomorphic(lst, back)


def test_malformed():
    s = canonical_signature(small_closed(2)[0])
    with pytest.raises(MalformedSignature):
        from_signature(s[:-1])
    with pytest.raises(MalformedSignature):
        from_signature("!!")
    # a huge declared size must fail before allocating anything
    with pytest.raises(MalformedSignature):
        from_signature("not-a-signature!")


def test_are_isomorphic_distinguishes():
    tris = small_closed(2)
    sigs = sorted({canonical_signature(t) for t in tris})
    a, b = from_signature(sigs[0]), from_signature(sigs[1])
    assert are_isomorphic(a, a)
    assert not are_isomorphic(a, b)
