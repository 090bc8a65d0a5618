"""Exact computations on Lie superalgebras of superdimension (2|2) and their
bialgebra structures."""

__version__ = "0.1.0"
