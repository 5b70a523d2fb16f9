"""Census of closed non-orientable P2-irreducible 3-manifold triangulations."""
from .perm import Perm4
from .triangulation import (Triangulation, TriangulationBuilder, build_triangulation,
                            from_text, layer_on_edge, to_text)

__all__ = ["Perm4", "Triangulation", "TriangulationBuilder", "build_triangulation",
           "from_text", "layer_on_edge", "to_text"]
