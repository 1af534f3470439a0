"""
RepLab Cost Model
Exact communication costs, success probabilities, bounds and figure series.
"""

from .cost_report import (
    Task,
    CostReport,
    cost_report,
    amplify_rounds,
    permutation_total_diagnostics,
    cost_grid,
)
from .bounds import BoundReport, verify_bounds
from .figures import FIGURES, default_range, figure_series

__all__ = [
    'Task',
    'CostReport',
    'cost_report',
    'amplify_rounds',
    'permutation_total_diagnostics',
    'cost_grid',
    'BoundReport',
    'verify_bounds',
    'FIGURES',
    'default_range',
    'figure_series',
]
