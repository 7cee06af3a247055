"""Reproducible scans over the curve, marking and pants complexes."""
