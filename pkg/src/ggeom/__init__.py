"""Exact symbolic verification of generalized complex and contact structures."""

__version__ = "0.1.0"
