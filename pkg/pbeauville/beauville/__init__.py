"""Sigma-sets and Beauville structures"""
