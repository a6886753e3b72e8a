"""Exact relations from the literature with their known properties."""

from src.gallery.builders import (
    ExpectedProperties,
    GalleryEntry,
    check_surjectivity_window,
    gallery,
    gallery_entry,
    gallery_names,
)

__all__ = [
    "ExpectedProperties",
    "GalleryEntry",
    "check_surjectivity_window",
    "gallery",
    "gallery_entry",
    "gallery_names",
]
