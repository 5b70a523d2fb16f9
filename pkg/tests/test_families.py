from collections import Counter

import pytest

from norcensus.algebra import first_homology, sfs
from norcensus.families import (Cellulation, LayeredBundleSpec, LstParams, NotAllowableBoundary,
                                build, build_layered_solid_torus, bundle_from_cellulation,
                                cellulation_of, detect_allowable_boundary,
                                enumerate_thin_ibundles, layered_bundles,
                                manifold_of_layered_bundle, manifold_of_spec, parse_spec,
                                prepare_core, thick_cores)
from norcensus.families.cellulation import NonThickenable, signature_of_cellulation
from norcensus.families.ibundles import _raw_bundles, classify_bundle
from norcensus.families._thin import raw_thin_complexes
from norcensus.families.lsb import BoundaryMismatch, FLAT_BY_HOMOLOGY, identifications
from norcensus.families.lst import InvalidParams, boundary_edge_weights, lst_params_up_to
from norcensus.families.registry import (E63, E63_NAME, ExceptionalSpec, PluggedSpec,
                                         SpecSyntaxError, family_counts, minimal_records,
                                         thin_cores, untwisted_bundles)
from norcensus.isosig import canonical_signature, from_signature
from norcensus.perm import FACE_MAPS, INVERSE
from norcensus.triangulation import Triangulation


# -- layered solid tori ---------------------------------------------------------

def test_lst_parameters():
    assert LstParams(1, 1, 2).degenerate and LstParams(1, 1, 2).size == 0
    assert LstParams(1, 2, 3).size == 1
    assert LstParams(2, 3, 5).size == 2
    assert LstParams.of(5, 2, 3) == LstParams(2, 3, 5)
    for bad in ((1, 2, 4), (2, 4, 6), (0, 1, 1)):
        with pytest.raises(InvalidParams):
            LstParams(*bad)


def test_lst_built_weights_and_homology():
    for p in lst_params_up_to(3):
        lst = build_layered_solid_torus(p)
        if p.degenerate:
            assert lst.tri is None
            continue
        assert lst.size == p.size
        assert str(first_homology(lst.tri)) == "Z"
        assert sorted(lst.weights) == [p.a, p.b, p.c]
        assert len(lst.tri.boundary_faces()) == 2


def test_lst123_is_the_unique_one_tet_solid_torus():
    # brute force over every one-tetrahedron complex with a single gluing
    found = set()
    for f, g in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
        for p in FACE_MAPS[f][g]:
            adj = [[None] * 4]
            adj[0][f] = (0, p)
            adj[0][g] = (0, INVERSE[p])
            try:
                tri = Triangulation(adj)
            except ValueError:
                continue
            if not tri.is_valid() or str(first_homology(tri)) != "Z":
                continue
            try:
                w = sorted(x for _, x in boundary_edge_weights(tri))
            except InvalidParams:
                continue
            if w == [1, 2, 3]:
                found.add(canonical_signature(tri))
    lst = build_layered_solid_torus(LstParams(1, 2, 3)).tri
    assert found == {canonical_signature(lst)}


# -- thin I-bundles and cellulations ----------------------------------------------

def test_small_thin_bundles():
    assert enumerate_thin_ibundles(2) == []
    (b3,) = enumerate_thin_ibundles(3)
    assert b3.kind == "twisted" and b3.boundary_faces == (2,)
    counts = Counter((b.kind, b.boundary_faces) for b in enumerate_thin_ibundles(5))
    assert counts == {("twisted", (2,)): 8, ("twisted", (4,)): 7}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_compiled_search_matches_python_oracle(n):
    for t in range(n + 1):
        fast = {canonical_signature(Triangulation(adj)) for c, adj in raw_thin_complexes(n, t)
                if classify_bundle(Triangulation(adj), c) is not None}
        slow = {canonical_signature(Triangulation(adj)) for c, adj in _raw_bundles(n, t)
                if classify_bundle(Triangulation(adj), c) is not None}
        assert fast == slow


def test_two_sided_prune_keeps_untwisted():
    full = {b.sig for b in enumerate_thin_ibundles(6, kind="untwisted")}
    pruned = {b.sig for b in untwisted_bundles(6) if b.size == 6}
    assert pruned == full
    counts = Counter(b.surface for b in untwisted_bundles(6) if b.size == 6)
    assert counts == {"torus": 2, "klein": 4}


def test_cellulation_round_trip():
    for n in (3, 4, 5):
        for b in enumerate_thin_ibundles(n):
            c = cellulation_of(b.tri, b.central)
            assert c.euler == 0
            assert signature_of_cellulation(c) == b.sig
            again = bundle_from_cellulation(c)
            assert again.kind == b.kind and again.boundary_faces == b.boundary_faces


def test_cellulation_validation():
    with pytest.raises(NonThickenable):
        Cellulation(((1, ("a", "b", "c")),))
    with pytest.raises(NonThickenable):
        Cellulation(((5, ("a", "a", "b")),))


def test_central_cellulation_shapes():
    # twisted cores: four triangles and two quadrilaterals on six cells
    for sig, core in thin_cores():
        b = from_signature(sig)
        assert core.base in ("RP2", "Dbar")
        assert len(b.boundary_faces()) == 4


# -- layered surface bundles -------------------------------------------------------

@pytest.fixture(scope="module")
def bundles6():
    return [b for b in untwisted_bundles(6) if b.size == 6]


def test_identification_candidates(bundles6):
    from norcensus.families.lsb import layered_product
    tri, lower, upper = layered_product(from_signature(bundles6[0].sig), ())
    assert len(identifications(lower, upper)) == 72


def test_layered_bundles_names(bundles6):
    names = Counter()
    for b in bundles6:
        for spec, tri in layered_bundles(b, 6):
            assert tri.is_closed() and not tri.is_orientable()
            name = manifold_of_layered_bundle(spec, tri)
            assert name.homology() == first_homology(tri)
            assert parse_spec(str(spec)) == spec
            names[str(name)] += 1
    assert set(names) == {"T2xI/[1 1;1 0]", "T2xI/[0 1;1 0]", "T2xI/[1 0;0 -1]",
                          "SFS(RP2: (2,1)(2,1))", "SFS(Dbar: (2,1)(2,1))"}


def test_flat_dictionary_homologies():
    for h, make in FLAT_BY_HOMOLOGY.items():
        assert str(make().homology()) == h


def test_lsb_bad_layer(bundles6):
    spec = LayeredBundleSpec(bundles6[0].sig, (7,), (0, 0, 0))
    with pytest.raises(BoundaryMismatch):
        build(spec)


# -- plugged bundles -----------------------------------------------------------------

def test_allowable_detection():
    cores = thin_cores()
    assert len(cores) == 4
    twisted6 = enumerate_thin_ibundles(6, kind="twisted", boundary_faces=4)
    rejected = [b for b in twisted6 if b.sig not in {s for s, _ in cores}]
    assert rejected
    for b in rejected[:5]:
        with pytest.raises(NotAllowableBoundary):
            prepare_core(b.tri)
    lst = build_layered_solid_torus(LstParams(2, 3, 5)).tri
    assert detect_allowable_boundary(lst) is None


def test_thick_cores():
    cores = thick_cores()
    assert len(cores) == 4
    assert Counter(c.base for _, c in cores) == {"RP2": 3, "Dbar": 1}
    for spec, core in cores:
        assert core.tri.size == 6
        assert str(first_homology(core.tri)) == "Z + Z"


def test_plugged_rp2_21_21(family_census_6):
    rec = next(r for r in family_census_6 if str(r.name) == "SFS(RP2: (2,1)(2,1))"
               and isinstance(r.spec, PluggedSpec))
    tri = build(rec.spec)
    assert str(first_homology(tri)) == "Z + Z_4"
    assert manifold_of_spec(rec.spec, tri) == sfs("RP2", (2, 1), (2, 1))


# -- registry --------------------------------------------------------------------

def test_spec_literals_round_trip(family_census_8):
    for r in family_census_8:
        spec = parse_spec(str(r.spec)) if not isinstance(r.spec, ExceptionalSpec) else r.spec
        assert spec == r.spec
    # rebuilding reproduces the signature for a sample of every family
    seen = Counter()
    for r in family_census_8:
        if seen[r.family] >= 15:
            continue
        seen[r.family] += 1
        assert canonical_signature(build(r.spec)) == r.sig
        assert str(manifold_of_spec(r.spec)) == str(r.name)


def test_spec_syntax_errors():
    for bad in ("", "lst 1,2", "torus bundle", "lsb layer=e1", "exceptional E99",
                "plugged-thin lst1=1,2,3"):
        with pytest.raises(SpecSyntaxError):
            parse_spec(bad)


def test_exceptional_literal():
    tri = from_signature(E63)
    assert tri.size == 6 and tri.is_closed() and not tri.is_orientable()
    assert str(first_homology(tri)) == "Z + Z"
    assert E63_NAME == "T2xI/[0 1;1 0]"


def test_family_counts_at_six(family_census_6):
    counts = family_counts(minimal_records(family_census_6))
    assert counts[("lsb", 6)] == (15, 5)
    assert counts[("thin", 6)] == (4, 2)
    assert counts[("thick", 6)] == (4, 2)
    assert counts[("exceptional", 6)] == (1, 1)
    assert len({r.sig for r in family_census_6}) == 24
