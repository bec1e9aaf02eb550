"""Exact arithmetic for proportionally modular numerical and affine semigroups."""

__version__ = "0.1.0"
