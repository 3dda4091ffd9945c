"""Finite sigma-algebras: lattice operations, products and distributivity checks."""

__version__ = "1.0.0"
