"""Fibred strictly object-adapted cellular categories and their traces."""

__version__ = "0.1.0"
