"""Analytic Campanato space toolbox."""

__version__ = "0.0.1"
