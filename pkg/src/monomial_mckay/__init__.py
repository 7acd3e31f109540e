"""Crepant resolutions and McKay-type checks for monomial subgroups of SL(3, C)."""

__version__ = "0.1.0"
