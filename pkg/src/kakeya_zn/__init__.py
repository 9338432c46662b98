"""Exact-arithmetic tools for maximal Kakeya inequalities over Z/NZ and finite fields."""

__version__ = "0.1.0"
