"""Centralizers, Jordan data and saturation rank for Richardson elements in type A."""

__version__ = "0.1.0"
