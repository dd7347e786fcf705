"""Exact construction and verification of elliptic extended affine Lie algebras of type A1."""

__version__ = "0.1.0"
