"""Symbolic and numeric toolkit for step-2 nilpotent Gelfand pairs."""

__version__ = "0.1.0"
