"""dblcat: a workbench for double-categorical structure over finite
categories, with every universal property decided by finite enumeration."""

__version__ = "0.1.0"
