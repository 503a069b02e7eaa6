"""Exact and asymptotic counts of strongly unimodal sequences by rank."""
from .genfun import Route, UnimodalTableSet, unimodal_row, unimodal_tables
from .series import BivarSeries, TruncSeries, partition_series

__all__ = [
    "BivarSeries",
    "Route",
    "TruncSeries",
    "UnimodalTableSet",
    "partition_series",
    "unimodal_row",
    "unimodal_tables",
]
__version__ = "0.1.0"
