"""Exhaustive census of closed non-orientable triangulations."""
from .graphs import FacePairingGraph, enumerate_face_pairings
from .pipeline import (CensusRecord, CensusReport, Quarantined, classify_record,
                       enumerate_closed_triangulations, run_census, run_census_report)
from .search import PruningConfig

__all__ = ["CensusRecord", "CensusReport", "FacePairingGraph", "PruningConfig", "Quarantined",
           "classify_record", "enumerate_closed_triangulations", "enumerate_face_pairings",
           "run_census", "run_census_report"]
