"""Finite p-group toolkit for Beauville structures and strongly real Beauville structures"""

__version__ = "0.1.0"
