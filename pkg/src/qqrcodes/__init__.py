"""Quasi-quadratic-residue codes, hyperelliptic point counts and Duursma zeta functions."""

__version__ = "0.1.0"
