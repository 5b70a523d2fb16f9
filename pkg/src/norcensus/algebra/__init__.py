"""Exact integer algebra: Smith normal form, abelian groups, H_1,
fundamental group presentations and manifold names."""
from .groups import AbelianGroup
from .homology import first_homology
from .names import (Sfs, SfsDescriptor, TorusBundle, Unknown, canonical_monodromy, parse_name,
                    sfs, torus_bundle_homology)
from .presentation import Presentation, fundamental_group, reducibility_certificate
from .snf import smith_normal_form

__all__ = ["AbelianGroup", "Presentation", "Sfs", "SfsDescriptor", "TorusBundle", "Unknown",
           "canonical_monodromy", "first_homology", "fundamental_group", "parse_name",
           "reducibility_certificate", "sfs", "smith_normal_form", "torus_bundle_homology"]
