"""
Bound Checks
Exact verification of the dimension bounds and of the cost upper bound
for unitary gate arrays.
"""

from dataclasses import asdict, dataclass

from repcore import TaskRole, build_table
from utils.exact import ceil_log2


@dataclass(frozen=True)
class BoundReport:
    """Pass/fail for each bound at one (n, d)."""
    n: int
    d: int
    num_irreps_bound: bool
    max_dimension_bound: bool
    total_dimension_bound: bool
    cost_upper_bound: bool
    lower_bound_consistent: bool
    average_cost_holds: bool

    @property
    def all_hold(self) -> bool:
        return all(
            (
                self.num_irreps_bound,
                self.max_dimension_bound,
                self.total_dimension_bound,
                self.cost_upper_bound,
                self.lower_bound_consistent,
                self.average_cost_holds,
            )
        )

    def to_dict(self) -> dict:
        result = asdict(self)
        result["all_hold"] = self.all_hold
        return result


def verify_bounds(n: int, d: int) -> BoundReport:
    """
    Check |R| <= (n+1)^(d-1), max d_lambda <= (n+1)^(d(d-1)/2),
    d_tot <= d_R |R| <= (n+1)^((d+2)(d-1)/2) and c_rm <= (d^2-1) log2(n+1) + 2.

    All comparisons are between integers: the logarithmic bound is checked as
    2^(c_rm - 2) <= (n+1)^(d^2-1).

    Args:
        n: Number of copies (>= 1)
        d: Local dimension (>= 2)

    Returns:
        BoundReport
    """
    if n < 1 or d < 2:
        raise ValueError(f"verify_bounds needs n >= 1 and d >= 2, got n={n}, d={d}")
    table = build_table(n, d, TaskRole.UNITARY_ARRAY)
    base = n + 1

    c_rm = ceil_log2(table.d_R) + ceil_log2(table.d_tot)
    c_max = 2 * ceil_log2(table.d_tot)
    c_min = ceil_log2(table.d_tot_sq)

    cost_upper = c_rm < 2 or 2 ** (c_rm - 2) <= base ** (d * d - 1)

    return BoundReport(
        n=n,
        d=d,
        num_irreps_bound=table.size <= base ** (d - 1),
        max_dimension_bound=table.d_R <= base ** (d * (d - 1) // 2),
        total_dimension_bound=table.d_tot <= table.d_R * table.size <= base ** ((d + 2) * (d - 1) // 2),
        cost_upper_bound=cost_upper,
        lower_bound_consistent=c_rm >= c_min,
        average_cost_holds=table.size < 2 or c_rm * table.size >= c_max,
    )
