"""Triangulation families: layered solid tori, thin I-bundles, layered
surface bundles and plugged thin and thick I-bundles."""
from .cellulation import Cellulation, bundle_from_cellulation, cellulation_of
from .ibundles import ThinIBundle, classify_bundle, enumerate_thin_ibundles
from .lsb import (BoundaryMismatch, LayeredBundleSpec, build_layered_surface_bundle,
                  layered_bundles, manifold_of_layered_bundle)
from .lst import (InvalidParams, LayeredSolidTorus, LstParams, boundary_edge_weights,
                  build_layered_solid_torus)
from .plugs import (NameInconsistent, NotAllowableBoundary, PlugCore, detect_allowable_boundary,
                    plug_core, plugged_fillings, prepare_core)
from .registry import (ExceptionalSpec, FamilyRecord, PluggedSpec, SpecSyntaxError, build,
                       family_counts, generate_family_census, manifold_of_spec, minimal_records,
                       parse_spec)
from .thick import ThickCoreSpec, build_thick_core, thick_cores

__all__ = [
    "BoundaryMismatch", "Cellulation", "ExceptionalSpec", "FamilyRecord", "InvalidParams",
    "LayeredBundleSpec", "LayeredSolidTorus", "LstParams", "NameInconsistent",
    "NotAllowableBoundary", "PlugCore", "PluggedSpec", "SpecSyntaxError", "ThickCoreSpec",
    "ThinIBundle", "boundary_edge_weights", "build", "build_layered_solid_torus",
    "build_layered_surface_bundle", "build_thick_core", "bundle_from_cellulation",
    "cellulation_of", "classify_bundle", "detect_allowable_boundary", "enumerate_thin_ibundles",
    "family_counts", "generate_family_census", "layered_bundles", "manifold_of_layered_bundle",
    "manifold_of_spec", "minimal_records", "parse_spec", "plug_core", "plugged_fillings",
    "prepare_core", "thick_cores",
]
