"""Curves, twists and four-holed-sphere subsurfaces on the five-punctured sphere."""
