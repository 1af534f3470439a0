"""
Cost Reports
Communication cost and success probability of representation matching and
of its baselines, all in exact integer / rational arithmetic.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Union

import pandas as pd

from repcore import TaskRole, build_table
from utils.exact import ceil_log2, format_decimal, format_rational


class Task(str, Enum):
    UNITARY_ARRAY = "unitary-array"
    PERMUTATION = "permutation"
    CONJUGATION = "conjugation"
    STORAGE_RETRIEVAL = "storage-retrieval"

    @classmethod
    def parse(cls, value) -> "Task":
        if isinstance(value, cls):
            return value
        aliases = {
            "unitary": cls.UNITARY_ARRAY,
            "perm": cls.PERMUTATION,
            "conj": cls.CONJUGATION,
            "store-retrieve": cls.STORAGE_RETRIEVAL,
        }
        text = str(value).strip().lower()
        return aliases.get(text) or cls(text)

    @property
    def role(self) -> TaskRole:
        """Conjugation and storage-retrieval use the n-copy unitary-array table."""
        if self == Task.PERMUTATION:
            return TaskRole.PERMUTATION
        return TaskRole.UNITARY_ARRAY


@dataclass(frozen=True)
class CostReport:
    """All cost and probability figures for one (n, d, task)."""
    n: int
    d: int
    task: Task
    num_irreps: int
    d_R: int
    d_tot: int
    d_tot_sq: int
    forward_qubits: int
    backward_qubits: int
    c_max: int
    c_rm: int
    c_min: int
    delta_c: int
    small_delta_c: int
    c_naive: int
    p_rm: Fraction
    p_tele: Fraction
    p_naive: Fraction
    c_rs: Optional[int] = None
    p_rs: Optional[Fraction] = None

    @property
    def average_cost(self) -> int:
        """c_rm / p_rm, exact since p_rm = 1/|R|."""
        return self.c_rm * self.num_irreps

    @property
    def probability_ratio(self) -> Fraction:
        """p_rm / p_tele."""
        return self.p_rm / self.p_tele

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready dict; exact values as strings, probabilities also as decimals."""
        result: Dict[str, Any] = {"n": self.n, "d": self.d, "task": self.task.value}
        for key in ("num_irreps", "d_R", "d_tot", "d_tot_sq", "forward_qubits", "backward_qubits",
                    "c_max", "c_rm", "c_min", "delta_c", "small_delta_c", "c_naive", "c_rs"):
            value = getattr(self, key)
            result[key] = None if value is None else str(value)
        for key in ("p_rm", "p_tele", "p_naive", "p_rs"):
            value = getattr(self, key)
            result[key] = None if value is None else format_rational(value)
            result[f"{key}_decimal"] = None if value is None else format_decimal(value)
        return result


def cost_report(n: int, d: int, task: Union[str, Task] = Task.UNITARY_ARRAY) -> CostReport:
    """
    Exact cost report for compressing the target of the given task.

    Args:
        n: Number of gate copies / qudits (>= 1)
        d: Local dimension (>= 2)
        task: unitary-array | permutation | conjugation | storage-retrieval

    Returns:
        CostReport
    """
    if n < 1 or d < 2:
        raise ValueError(f"cost_report needs n >= 1 and d >= 2, got n={n}, d={d}")
    task = Task.parse(task)
    table = build_table(n, d, task.role)

    forward = ceil_log2(table.d_R)
    backward = ceil_log2(table.d_tot)
    c_rm = forward + backward
    c_max = 2 * backward
    c_min = ceil_log2(table.d_tot_sq)

    c_rs = p_rs = None
    if task == Task.STORAGE_RETRIEVAL:
        c_rs = ceil_log2(table.d_tot_sq)
        p_rs = Fraction(1, table.d_tot_sq)

    return CostReport(
        n=n,
        d=d,
        task=task,
        num_irreps=table.size,
        d_R=table.d_R,
        d_tot=table.d_tot,
        d_tot_sq=table.d_tot_sq,
        forward_qubits=forward,
        backward_qubits=backward,
        c_max=c_max,
        c_rm=c_rm,
        c_min=c_min,
        delta_c=c_max - c_rm,
        small_delta_c=c_rm - c_min,
        c_naive=n * ceil_log2(d * d),
        p_rm=Fraction(1, table.size),
        p_tele=Fraction(1, table.d_tot ** 2),
        p_naive=Fraction(1, d ** (2 * n)),
        c_rs=c_rs,
        p_rs=p_rs,
    )


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def amplify_rounds(p_rm, eps) -> int:
    """
    Smallest number of rounds k with (1 - p_rm)^k <= eps.

    Args:
        p_rm: Per-round success probability in (0, 1]
        eps: Target failure probability in (0, 1)

    Returns:
        Number of rounds (1 when p_rm = 1)
    """
    p = _as_fraction(p_rm)
    epsilon = _as_fraction(eps)
    if not 0 < epsilon < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not 0 < p <= 1:
        raise ValueError(f"p_rm must lie in (0, 1], got {p_rm}")
    if p == 1:
        return 1

    q = 1 - p
    k = max(1, math.ceil(math.log(float(epsilon)) / math.log(float(q))))
    # float estimate, then settle exactly
    while q ** k > epsilon:
        k += 1
    while k > 1 and q ** (k - 1) <= epsilon:
        k -= 1
    return k


def permutation_total_diagnostics(n: int) -> Dict[str, str]:
    """
    Compare the direct sum of m_lambda (d = 2) with the printed closed form.

    Args:
        n: Even number of qubits

    Returns:
        Dict with 'direct', 'printed_form' and 'half_printed_form' as exact strings
    """
    if n < 2 or n % 2:
        raise ValueError(f"The closed form is stated for even n >= 2, got {n}")
    direct = build_table(n, 2, TaskRole.PERMUTATION).d_tot
    printed = Fraction(n + 2, n + 1) * math.comb(n + 1, n // 2)
    return {
        "n": str(n),
        "direct": str(direct),
        "printed_form": format_rational(printed),
        "half_printed_form": format_rational(printed / 2),
        "printed_matches": str(printed == direct),
        "half_matches": str(printed / 2 == direct),
    }


def cost_grid(n_values: Iterable[int], d_values: Iterable[int], task: Union[str, Task]) -> pd.DataFrame:
    """CostReports for every (n, d) pair as a DataFrame of exact strings."""
    rows = [cost_report(n, d, task).to_dict() for d in d_values for n in n_values]
    return pd.DataFrame(rows)
