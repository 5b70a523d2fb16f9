"""Build one triangulation from each family and print its manifold and homology."""
from norcensus.algebra import first_homology
from norcensus.families import build, manifold_of_spec, parse_spec
from norcensus.isosig import canonical_signature

SPECS = [
    "lst 2,3,5",
    "exceptional E63",
]


def main():
    from norcensus.families.registry import generate_family_census

    for text in SPECS:
        spec = parse_spec(text)
        tri = build(spec)
        print(f"{text:24s} tets={tri.size} H1={first_homology(tri)}")

    # one closed example from each family at six tetrahedra
    seen = set()
    for rec in generate_family_census(6):
        if rec.family in seen:
            continue
        seen.add(rec.family)
        tri = build(rec.spec)
        assert canonical_signature(tri) == rec.sig
        print(f"{rec.family:12s} {manifold_of_spec(rec.spec, tri)!s:24s} H1={first_homology(tri)}")
        print(f"    {rec.spec}")


if __name__ == "__main__":
    main()
