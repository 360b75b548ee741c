"""Finite commutative rings, amalgamated duplications and Prüfer-type conditions."""

__version__ = "0.1.0"
