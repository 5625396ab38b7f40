"""Parametrized group families and their Beauville criteria"""
