"""Command workflows."""

from src.workflows.runner import AnalysisRunner, ConjugationResult, GalleryListing, LoadedRelation

__all__ = ["AnalysisRunner", "ConjugationResult", "GalleryListing", "LoadedRelation"]
