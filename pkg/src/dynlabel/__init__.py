"""Dynamic map labeling: independent sets of squares and rectangles under updates."""

__version__ = "0.1.0"
