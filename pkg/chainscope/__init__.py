"""Chain dynamics of iterated function systems on box grids."""

__version__ = "0.1.0"
