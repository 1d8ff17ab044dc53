"""Binomial edge ideals of graph families: closed forms and an exact oracle."""

__version__ = "0.1.0"
