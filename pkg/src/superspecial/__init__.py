"""Superspecial genus-4 curve enumeration over F_25 and F_49."""

__version__ = "0.1.0"
