"""Exact combinatorics of cyclic quotient and cusp surface singularities."""

from .chains import (
    Chain,
    ChainSyntaxError,
    CyclicType,
    TClass,
    chain_to_frac,
    frac_to_chain,
    generate_tchains,
    is_tchain,
    parse_chain,
)
from .graphs import DualGraph, classify_strictly_lc, cores, log_discrepancies, log_discrepancies_recursive

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "ChainSyntaxError",
    "CyclicType",
    "DualGraph",
    "TClass",
    "chain_to_frac",
    "classify_strictly_lc",
    "cores",
    "frac_to_chain",
    "generate_tchains",
    "is_tchain",
    "log_discrepancies",
    "log_discrepancies_recursive",
    "parse_chain",
]
