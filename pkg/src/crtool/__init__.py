"""Exact symbolic toolkit for uniformly 2-nondegenerate CR hypersurface models."""
__version__ = "0.1.0"
