"""Tile-built 2-crossing-critical graphs: construction, domination and independence."""

__version__ = "0.1.0"
