"""Exact Temperley-Lieb calculus, p-Jones-Wenzl projectors and the
zigzag-like quiver algebra presenting SL2 tilting morphisms."""

__version__ = "0.1.0"
