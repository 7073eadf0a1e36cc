"""Exact calculus for finite graphs of groups and their splittings."""

__version__ = "0.1.0"
