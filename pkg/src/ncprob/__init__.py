"""Exact-arithmetic kernel for amalgamated free probability on towers of algebras."""

__version__ = "0.1.0"
