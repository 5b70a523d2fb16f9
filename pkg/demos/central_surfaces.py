"""List the central surfaces of the exceptional six-tetrahedron triangulation."""
from norcensus.families.registry import E63
from norcensus.isosig import from_signature
from norcensus.surfaces import enumerate_central_surfaces

tri = from_signature(E63)
for s in enumerate_central_surfaces(tri):
    print(s)
