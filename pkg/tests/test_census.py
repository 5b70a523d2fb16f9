import random

import pytest

from norcensus.algebra import first_homology
from norcensus.census import (FacePairingGraph, PruningConfig, Quarantined, classify_record,
                              enumerate_closed_triangulations, enumerate_face_pairings,
                              run_census, run_census_report)
from norcensus.census.pipeline import survivors
from norcensus.isosig import canonical_signature
from norcensus.moves import find_smaller, moves_down, moves_up, three_two, two_three

from oracles import closed_triangulations, matching_representatives


def brute_nonorientable(n):
    return {canonical_signature(t) for t in closed_triangulations(n) if not t.is_orientable()}


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 10), (5, 28)])
def test_face_pairing_counts(n, count):
    graphs = enumerate_face_pairings(n)
    assert len(graphs) == count
    assert all(g.is_valid() for g in graphs)
    assert len({g.canonical_form for g in graphs}) == count
    if n <= 3:
        assert len(matching_representatives(n)) == count


def test_face_pairing_graph_shape():
    g = enumerate_face_pairings(1)[0]
    assert g.size == 1
    assert len(g.face_pairs) == 2
    with pytest.raises(ValueError):
        enumerate_face_pairings(0)


def test_unpruned_search_matches_brute_force():
    for n in (1, 2):
        assert set(survivors(n, PruningConfig.none())) == brute_nonorientable(n)


def test_pruning_only_removes():
    for n in (2, 3):
        assert set(survivors(n)) <= set(survivors(n, PruningConfig.none()))


def test_pruning_config_parse():
    assert PruningConfig.parse("default") == PruningConfig()
    assert PruningConfig.parse("none") == PruningConfig.none()
    with pytest.raises(ValueError):
        PruningConfig.parse("aggressive")


def test_enumerate_closed_triangulations():
    for g in enumerate_face_pairings(2):
        for tri in enumerate_closed_triangulations(g, PruningConfig.none()):
            assert tri.is_closed() and not tri.is_orientable()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_low_census_is_empty(n):
    assert run_census(n) == []


def test_quarantine_without_registry():
    tri = next(t for t in closed_triangulations(2) if not t.is_orientable())
    q = classify_record(tri, {})
    assert isinstance(q, Quarantined)
    assert q.homology == str(first_homology(tri))


def test_report_excludes_with_reasons():
    rep = run_census_report(4, registry={})
    assert rep.records == []
    assert rep.survivors == len(rep.excluded)
    assert all(reason.startswith(("non-minimal", "not P2-irreducible"))
               for _, reason in rep.excluded)


def test_two_three_round_trip():
    rng = random.Random(4)
    tris = [t for t in closed_triangulations(2)][:15]
    for tri in tris:
        h = first_homology(tri)
        for up in moves_up(tri):
            if up is None:
                continue
            assert up.size == 3
            assert first_homology(up) == h
            assert up.is_closed() and up.is_orientable() == tri.is_orientable()
            downs = list(moves_down(up))
            assert canonical_signature(tri) in {canonical_signature(d) for d in downs}
    t = rng.choice(tris)
    assert two_three(t, 0, 0) is None or two_three(t, 0, 0).size == 3
    assert three_two(t, 0) is None or three_two(t, 0).size == 1


def test_find_smaller_certifies_non_minimal():
    up = next(u for u in moves_up(next(iter(closed_triangulations(2)))) if u is not None)
    smaller = find_smaller(up, budget=500)
    assert smaller is not None and smaller.size < up.size
    assert first_homology(smaller) == first_homology(up)
