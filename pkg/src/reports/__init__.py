"""Rendering of results as JSON, CSV and SVG."""

from src.reports.export import census_csv, entropy_csv, to_json, write_output
from src.reports.svg import prefix_svg, relation_svg

__all__ = ["census_csv", "entropy_csv", "to_json", "write_output", "prefix_svg", "relation_svg"]
