"""Rectilinear lattice polytopes, dotted graphs, deformation calculus and
minimal-area rectangle-transformation planning."""

__version__ = "0.1.0"
