"""Automorphisms and strongly real Beauville structures"""
