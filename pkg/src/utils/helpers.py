"""Utility helper functions."""

import hashlib
from datetime import datetime, timezone
from typing import Dict, Iterable


def hash_content(content: str) -> str:
    """
    Generate a SHA-256 hash of content.

    Args:
        content: Text content to hash

    Returns:
        Hexadecimal hash string
    """
    return hashlib.sha256(content.encode("utf-8")).hexdigest()


def get_timestamp() -> datetime:
    """Get current UTC timestamp."""
    return datetime.now(timezone.utc)


def parse_param_overrides(items: Iterable[str]) -> Dict[str, str]:
    """
    Split "name=value" strings such as "a=1+1*sqrt(2)" or "b=1/3".

    Args:
        items: Override strings from the command line

    Returns:
        Mapping of parameter name to the unparsed value

    Raises:
        ValueError: If an item has no '=' or an empty name or value
    """
    overrides: Dict[str, str] = {}
    for item in items:
        name, sep, value = item.partition("=")
        name, value = name.strip(), value.strip()
        if not sep or not name or not value:
            raise ValueError(f"Parameter override must look like name=value, got {item!r}")
        overrides[name] = value
    return overrides
