"""Exact-arithmetic cellular homology, shaped homology and E2-page assembly."""

__version__ = "0.1.0"
