"""
Rank Witness
Numerical dimension of the span of the matrix elements of U^{(x)n} (or of
the permutation operators), which underlies the communication lower bound.
"""

import itertools
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import numpy as np
from scipy.linalg import svdvals

from costmodel import Task, cost_report
from repcore import build_table
from schur import haar_su, permutation_operator, random_permutation, tensor_power
from utils import DimensionCapError, get_logger, get_settings, log_event
from utils.config import LabSettings

logger = get_logger("LowerBound")

OVERSAMPLING = 8
ALL_PERMUTATIONS_LIMIT = 5040


@dataclass
class RankReport:
    """Measured span dimension against the expected sum of squared dimensions."""
    n: int
    d: int
    task: str
    expected: int
    measured: int
    rank_low_tol: int
    rank_high_tol: int
    sample_count: int
    tol: float

    @property
    def stable(self) -> bool:
        return self.measured == self.rank_low_tol == self.rank_high_tol

    @property
    def matches(self) -> bool:
        return self.stable and self.measured == self.expected

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        result["stable"] = self.stable
        result["matches"] = self.matches
        result["verdict"] = "pass" if self.matches else ("fail" if self.stable else "inconclusive")
        return result


def _numerical_rank(singular_values: np.ndarray, tol: float) -> int:
    if singular_values.size == 0 or singular_values[0] == 0:
        return 0
    return int(np.sum(singular_values > tol * singular_values[0]))


def _sample_matrix(n: int, d: int, task: Task, sample_count: int, rng: np.random.Generator) -> np.ndarray:
    """Rows are flattened operators of the target family."""
    if task == Task.PERMUTATION:
        if math.factorial(n) <= ALL_PERMUTATIONS_LIMIT:
            perms = itertools.permutations(range(n))
        else:
            perms = (random_permutation(n, rng) for _ in range(sample_count))
        return np.array([permutation_operator(p, n, d).toarray().reshape(-1) for p in perms])
    rows = []
    for _ in range(sample_count):
        g = haar_su(d, rng)
        rows.append(tensor_power(g.conj() if task == Task.CONJUGATION else g, n).reshape(-1))
    return np.array(rows)


def rank_witness(
    n: int,
    d: int,
    task="unitary-array",
    sample_count: Optional[int] = None,
    tol: Optional[float] = None,
    seed: int = 0,
    settings: Optional[LabSettings] = None,
) -> RankReport:
    """
    Rank of the sampled operator family at tol, tol/10 and tol*10.

    Permutation targets use every element of S(n) when n! <= 5040.

    Args:
        n: Number of qudits
        d: Local dimension
        task: Target family
        sample_count: Haar samples (at least d_tot,sq + 8; that is the default)
        tol: Relative singular-value threshold (defaults to settings.rank_tol)
        seed: Seed for default_rng
        settings: Lab settings

    Returns:
        RankReport
    """
    settings = settings or get_settings()
    task = Task.parse(task)
    if n < 1 or d < 2:
        raise ValueError(f"rank_witness needs n >= 1 and d >= 2, got n={n}, d={d}")
    if d ** n > settings.rank_dim_cap:
        raise DimensionCapError(f"d^n = {d ** n} exceeds the rank witness cap of {settings.rank_dim_cap}")
    tol = tol or settings.rank_tol
    expected = build_table(n, d, task.role).d_tot_sq
    minimum = expected + OVERSAMPLING
    if sample_count is None:
        sample_count = minimum
    elif sample_count < minimum:
        raise ValueError(f"sample_count must be at least d_tot,sq + {OVERSAMPLING} = {minimum}")

    rows = _sample_matrix(n, d, task, sample_count, np.random.default_rng(seed))
    singular_values = svdvals(rows)
    report = RankReport(
        n=n,
        d=d,
        task=task.value,
        expected=expected,
        measured=_numerical_rank(singular_values, tol),
        rank_low_tol=_numerical_rank(singular_values, tol * 0.1),
        rank_high_tol=_numerical_rank(singular_values, tol * 10),
        sample_count=rows.shape[0],
        tol=tol,
    )
    log_event(logger, "rank_witness", **report.to_dict())
    return report


def matrix_element_rank(
    n: int,
    d: int,
    sample_count: Optional[int] = None,
    tol: Optional[float] = None,
    task="unitary-array",
    seed: int = 0,
) -> int:
    """Numerical rank of the span of U^{(x)n} matrix elements; expected d_tot,sq."""
    return rank_witness(n, d, task, sample_count, tol, seed).measured


@dataclass
class LowerBoundReport:
    """2^{c_rm} >= d_tot,sq plus the optional rank witness."""
    n: int
    d: int
    task: str
    c_rm: int
    c_min: int
    d_tot_sq: int
    rank: Optional[RankReport] = None

    @property
    def bound_holds(self) -> bool:
        return 2 ** self.c_rm >= self.d_tot_sq

    @property
    def passed(self) -> bool:
        return self.bound_holds and (self.rank is None or self.rank.matches)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "task": self.task,
            "c_rm": self.c_rm,
            "c_min": self.c_min,
            "d_tot_sq": str(self.d_tot_sq),
            "bound_holds": self.bound_holds,
            "rank": self.rank.to_dict() if self.rank else None,
            "passed": self.passed,
        }


def check_lower_bound(
    n: int,
    d: int,
    task="unitary-array",
    with_rank: Optional[bool] = None,
    settings: Optional[LabSettings] = None,
) -> LowerBoundReport:
    """
    Check that representation matching respects the lower bound.

    Args:
        n: Number of qudits
        d: Local dimension
        task: Target family (permutation uses sum of m_lambda^2)
        with_rank: Attach a rank witness (default: when d^n fits the rank cap)
        settings: Lab settings

    Returns:
        LowerBoundReport
    """
    settings = settings or get_settings()
    task = Task.parse(task)
    report = cost_report(n, d, task)
    if with_rank is None:
        with_rank = d ** n <= settings.rank_dim_cap
    rank = rank_witness(n, d, task, settings=settings) if with_rank else None
    return LowerBoundReport(
        n=n,
        d=d,
        task=task.value,
        c_rm=report.c_rm,
        c_min=report.c_min,
        d_tot_sq=report.d_tot_sq,
        rank=rank,
    )
