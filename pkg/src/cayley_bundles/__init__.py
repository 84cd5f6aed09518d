"""Exact characteristic numbers of Cayley-plane bundles and string-bordism generators."""

__version__ = "0.1.0"
