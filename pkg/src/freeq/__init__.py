"""Tools for describing solution sets of equations w(x, y) = u in free groups."""

__version__ = "0.1.0"
