"""Exact computations with Ext over left bialgebroids: bar resolutions,
operadic compositions, cup products and brackets, and the extension
category machinery that realizes them."""

__version__ = "0.1.0"
