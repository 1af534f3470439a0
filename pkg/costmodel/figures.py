"""
Figure Series
Exact data behind the cost and probability plots, emitted as DataFrames.
"""

from typing import Iterable, Optional

import pandas as pd

from utils.exact import format_decimal, format_rational
from .cost_report import Task, cost_report

FIGURES = ("fig4", "fig5", "fig6")
DEFAULT_D = {"fig4": 2, "fig5": 4, "fig6": 2}


def default_range(figure: str, nmax: Optional[int] = None) -> range:
    """fig5 steps over even n in [2, 60]; the others over n in [1, 100]."""
    if figure == "fig5":
        return range(2, (nmax or 60) + 1, 2)
    return range(1, (nmax or 100) + 1)


def figure_series(figure: str, d: Optional[int] = None, n_range: Optional[Iterable[int]] = None) -> pd.DataFrame:
    """
    Rows of one figure.

    fig4: n, c_rm, c_min, c_max (unitary gate arrays)
    fig5: n, delta_c, small_delta_c (permutation gates)
    fig6: n, p_rm, p_tele with decimal companions (unitary gate arrays)

    Args:
        figure: 'fig4', 'fig5' or 'fig6'
        d: Local dimension (defaults: 2, 4, 2)
        n_range: Values of n (defaults from default_range)

    Returns:
        DataFrame with exact values (integers as ints, rationals as 'p/q' strings)
    """
    if figure not in FIGURES:
        raise ValueError(f"Unknown figure '{figure}', expected one of {FIGURES}")
    d = d or DEFAULT_D[figure]
    n_values = list(n_range) if n_range is not None else list(default_range(figure))
    if not n_values or min(n_values) < 1:
        raise ValueError("figure_series needs a non-empty range of n >= 1")

    rows = []
    for n in n_values:
        if figure == "fig4":
            report = cost_report(n, d, Task.UNITARY_ARRAY)
            rows.append({"n": n, "c_rm": report.c_rm, "c_min": report.c_min, "c_max": report.c_max})
        elif figure == "fig5":
            report = cost_report(n, d, Task.PERMUTATION)
            rows.append({"n": n, "delta_c": report.delta_c, "small_delta_c": report.small_delta_c})
        else:
            report = cost_report(n, d, Task.UNITARY_ARRAY)
            rows.append(
                {
                    "n": n,
                    "p_rm": format_rational(report.p_rm),
                    "p_rm_decimal": format_decimal(report.p_rm),
                    "p_tele": format_rational(report.p_tele),
                    "p_tele_decimal": format_decimal(report.p_tele),
                }
            )
    return pd.DataFrame(rows)
