"""Symmetric multiplication maps on explicit curves over prime fields."""
__version__ = "0.1.0"
