"""Certified witnesses for (vertex, edge) pairs of 3-, 4- and 5-polytopes."""

__version__ = "0.1.0"
