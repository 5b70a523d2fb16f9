import random
from itertools import combinations
from math import gcd

import pytest

from norcensus.algebra import (AbelianGroup, canonical_monodromy, parse_name, sfs,
                               smith_normal_form, torus_bundle_homology)
from norcensus.algebra.names import SfsDescriptor, TorusBundle, monodromy_invariants
from norcensus.algebra.presentation import cyclic_reduce, free_reduce
from norcensus.algebra.snf import determinant, invariant_factors, matmul


def minors_oracle(M):
    """Invariant factors from gcds of k x k minors (determinantal divisors)."""
    m, n = len(M), len(M[0])
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, determinant([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        divisors.append(g)
    out = [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]
    return out + [0] * (min(m, n) - len(out))


def is_unimodular(A):
    return abs(determinant(A)) == 1


def test_snf_decomposition_random():
    rng = random.Random(7)
    for _ in range(300):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        S, U, V = smith_normal_form(M)
        assert matmul(matmul(U, M), V) == S
        assert is_unimodular(U) and is_unimodular(V)
        d = [S[i][i] for i in range(min(m, n))]
        assert all(S[i][j] == 0 for i in range(m) for j in range(n) if i != j)
        assert all(x >= 0 for x in d)
        nz = [x for x in d if x]
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
        assert d == minors_oracle(M)


def test_snf_known():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert invariant_factors([[0, 0], [0, 0]]) == [0, 0]
    S, U, V = smith_normal_form([])
    assert S == []


def test_abelian_group_parse_and_str():
    for text in ("Z", "Z + Z", "Z + Z + Z_2", "Z + Z_4", "Z + Z_2 + Z_2", "0"):
        assert str(AbelianGroup.parse(text)) == text
    # Z_2 + Z_3 is cyclic of order 6
    assert str(AbelianGroup.from_factors(1, [2, 3])) == "Z + Z_6"
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 2))


def test_from_presentation():
    # <a, b | 2a, 4b> = Z_2 + Z_4; zero rows ignored
    assert str(AbelianGroup.from_presentation(2, [[2, 0], [0, 4], [0, 0]])) == "Z_2 + Z_4"
    assert str(AbelianGroup.from_presentation(3, [[1, 1, 0]])) == "Z + Z"


@pytest.mark.parametrize("matrix,h", [
    ((1, 1, 1, 0), "Z"),
    ((0, 1, 1, 0), "Z + Z"),
    ((1, 0, 0, -1), "Z + Z + Z_2"),
    ((2, 1, 1, 0), "Z + Z_2"),
    ((3, 1, 1, 0), "Z + Z_3"),
    ((3, 2, 2, 1), "Z + Z_2 + Z_2"),
])
def test_torus_bundle_homology_table(matrix, h):
    assert str(torus_bundle_homology(matrix)) == h


@pytest.mark.parametrize("base,fibres,h", [
    ("RP2", ((2, 1), (2, 1)), "Z + Z_4"),
    ("Dbar", ((2, 1), (2, 1)), "Z + Z_2 + Z_2"),
    ("RP2", ((2, 1), (3, 1)), "Z"),
    ("Dbar", ((2, 1), (3, 1)), "Z + Z_2"),
    ("RP2", ((2, 1), (4, 1)), "Z + Z_2"),
    ("RP2", ((2, 1), (5, 2)), "Z"),
    ("RP2", ((3, 1), (3, 1)), "Z + Z_6"),
    ("RP2", ((3, 1), (3, 2)), "Z + Z_3"),
    ("Dbar", ((2, 1), (4, 1)), "Z + Z_2 + Z_2"),
    ("Dbar", ((2, 1), (5, 2)), "Z + Z_2"),
    ("Dbar", ((3, 1), (3, 1)), "Z + Z_3"),
    ("Dbar", ((3, 1), (3, 2)), "Z + Z_3"),
])
def test_sfs_homology_table(base, fibres, h):
    assert str(sfs(base, *fibres).homology()) == h


def test_sfs_homology_matches_presentation():
    for base in ("RP2", "Dbar"):
        for fibres in (((2, 1), (3, 1)), ((3, 1), (3, 2)), ((2, 1), (5, 2))):
            m = sfs(base, *fibres)
            assert m.presentation().abelianization() == m.homology()


def test_sfs_normalisation():
    assert str(sfs("RP2", (2, 3), (3, 4))) == "SFS(RP2: (2,1)(3,1))"
    # simultaneous reflection b -> a - b gives the same space
    assert sfs("RP2", (3, 2), (3, 2)) == sfs("RP2", (3, 1), (3, 1))
    assert sfs("RP2", (3, 1), (3, 2)) != sfs("RP2", (3, 1), (3, 1))
    # a = 1 fibres are absorbed
    assert sfs("Dbar", (1, 0), (2, 1), (2, 1)) == sfs("Dbar", (2, 1), (2, 1))
    with pytest.raises(ValueError):
        sfs("RP2", (4, 2), (3, 1))
    with pytest.raises(ValueError):
        SfsDescriptor("RP2", ((0, 1),))


def test_canonical_monodromy_conjugation_invariant():
    rng = random.Random(3)
    conj = [(1, 1, 0, 1), (0, 1, 1, 0), (1, 0, 1, 1), (2, 1, 1, 1), (1, 0, 0, -1)]
    for a in ((1, 1, 1, 0), (2, 1, 1, 0), (3, 1, 1, 0), (3, 2, 2, 1), (0, 1, 1, 0), (1, 0, 0, -1)):
        base = canonical_monodromy(a)
        assert base == a
        for _ in range(5):
            p, q, r, s = rng.choice(conj)
            dt = p * s - q * r
            pinv = (s * dt, -q * dt, -r * dt, p * dt)
            m = _mul(_mul((p, q, r, s), a), pinv)
            assert canonical_monodromy(m) == base
            assert monodromy_invariants(m) == monodromy_invariants(a)


def _mul(a, b):
    return (a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3])


def test_canonical_monodromy_rejects_singular():
    with pytest.raises(ValueError):
        canonical_monodromy((2, 0, 0, 1))


def test_names_round_trip():
    for m in (TorusBundle((3, 2, 2, 1)), TorusBundle((0, 1, 1, 0)),
              sfs("RP2", (2, 1), (5, 2)), sfs("Dbar", (3, 1), (3, 2))):
        assert parse_name(str(m)) == m
    with pytest.raises(ValueError):
        parse_name("lens space")


def test_word_reduction():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((-1, 2, 3, 1)) == (2, 3)
