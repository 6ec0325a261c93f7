"""Exact verification and construction of (Bi)Hom-Leibniz and dendriform algebras."""

__version__ = "0.1.0"
