"""Augmentations of Legendrian surface fronts and their combinatorial sheaves."""

__version__ = "0.1.0"
