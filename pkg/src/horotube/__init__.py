"""Numerics for magnetic eigenfunctions on the horocycle Grauert tube."""

__version__ = "0.1.0"
