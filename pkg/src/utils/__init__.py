"""Utility functions and helpers."""

from src.utils.helpers import get_timestamp, hash_content, parse_param_overrides
from src.utils.logger import setup_logger

__all__ = ["setup_logger", "hash_content", "get_timestamp", "parse_param_overrides"]
