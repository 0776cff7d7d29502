"""Exact-arithmetic toolkit for finite orthomodular lattices and the
bivariate probability maps (s-, j-, d-, G-maps) defined on them."""

__version__ = "0.1.0"
