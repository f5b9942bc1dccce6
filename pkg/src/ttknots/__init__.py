"""Twisted torus knots as braid closures, with exact knot-polynomial invariants."""

__version__ = "0.1.0"
