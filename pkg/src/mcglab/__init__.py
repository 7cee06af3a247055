"""Curve, marking and pants complexes of low-complexity surfaces."""
__version__ = "0.1.0"
