"""Exact chain-level computations around the Hodge filtration of Hochschild
homology and the Loday construction."""
__version__ = "0.1.0"
