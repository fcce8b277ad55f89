"""Duality-preserving bases and self-dual skew cyclic codes over finite rings."""

__version__ = "0.1.0"
