"""Computable objects over Baire space: sequence codes, stumps, regular trees,
rule-based continuous functions and a catalog of reductions between named sets."""

__version__ = "0.1.0"
