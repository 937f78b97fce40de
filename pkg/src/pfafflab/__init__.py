"""Exact arithmetic toolkit for equivariant skew families of linear forms:
group representations, pfaffians, smoothness certification and finite-field
point censuses, with a verification suite over the built-in instances."""

__version__ = "0.1.0"
