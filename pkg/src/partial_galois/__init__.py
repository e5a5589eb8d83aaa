"""Partial Galois connections and equivalences over finite carriers."""

__version__ = "0.1.0"
