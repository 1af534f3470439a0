"""
LowerBound Module
Rank witness for the span of gate matrix elements and the lower-bound check
"""

from .rank_witness import (
    RankReport,
    LowerBoundReport,
    rank_witness,
    matrix_element_rank,
    check_lower_bound,
)

__all__ = [
    'RankReport',
    'LowerBoundReport',
    'rank_witness',
    'matrix_element_rank',
    'check_lower_bound',
]
