"""Extensional higher-order logic programming with negation."""

__version__ = "0.1.0"
