"""Exact entropy, periodic orbits and well-alignedness of closed relations on intervals."""

__version__ = "1.0.0"
