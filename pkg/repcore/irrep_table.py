"""
Irrep Tables
Per-(n, d) list of blocks with their SU(d) and S(n) dimensions, and the
exact aggregates that drive every cost formula.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Tuple

import pandas as pd

from .young import YoungDiagram, enumerate_diagrams, su_dimension, sym_dimension


class TaskRole(str, Enum):
    """Which factor of a block is the representation register."""
    UNITARY_ARRAY = "unitary-array"
    PERMUTATION = "permutation"

    @classmethod
    def parse(cls, value) -> "TaskRole":
        if isinstance(value, cls):
            return value
        aliases = {"unitary": cls.UNITARY_ARRAY, "perm": cls.PERMUTATION}
        text = str(value).strip().lower()
        if text in aliases:
            return aliases[text]
        return cls(text)


@dataclass(frozen=True)
class IrrepEntry:
    """One block lambda with d_lambda (SU(d) irrep) and m_lambda (S(n) irrep)."""
    diagram: YoungDiagram
    d_lambda: int
    m_lambda: int

    def rep_dim(self, role: TaskRole) -> int:
        """Dimension of the register the target acts on."""
        return self.d_lambda if role == TaskRole.UNITARY_ARRAY else self.m_lambda

    def mult_dim(self, role: TaskRole) -> int:
        """Dimension of the register the target acts trivially on."""
        return self.m_lambda if role == TaskRole.UNITARY_ARRAY else self.d_lambda


@dataclass(frozen=True)
class IrrepTable:
    """
    Blocks of (C^d)^{(x)n} in canonical order with exact aggregates.

    For role 'unitary-array' the representation dimension is d_lambda,
    for 'permutation' it is m_lambda.
    """
    n: int
    d: int
    role: TaskRole
    entries: Tuple[IrrepEntry, ...]

    @property
    def diagrams(self) -> List[YoungDiagram]:
        return [e.diagram for e in self.entries]

    @property
    def size(self) -> int:
        """|R|, the number of blocks."""
        return len(self.entries)

    @property
    def rep_dims(self) -> List[int]:
        return [e.rep_dim(self.role) for e in self.entries]

    @property
    def d_R(self) -> int:
        return max(self.rep_dims)

    @property
    def d_tot(self) -> int:
        return sum(self.rep_dims)

    @property
    def d_tot_sq(self) -> int:
        return sum(r * r for r in self.rep_dims)

    @property
    def offsets(self) -> List[int]:
        """Cumulative representation dimensions of the preceding blocks."""
        offsets, running = [], 0
        for r in self.rep_dims:
            offsets.append(running)
            running += r
        return offsets

    def index_of(self, diagram: YoungDiagram) -> int:
        """Canonical position of a diagram."""
        for i, entry in enumerate(self.entries):
            if entry.diagram == diagram:
                return i
        raise ValueError(f"Diagram {diagram} is not in the table for n={self.n}, d={self.d}")

    def entry(self, diagram: YoungDiagram) -> IrrepEntry:
        return self.entries[self.index_of(diagram)]

    def to_dataframe(self) -> pd.DataFrame:
        """Rows lambda, d_lambda, m_lambda (lambda as a JSON array padded to d rows)."""
        return pd.DataFrame(
            {
                "lambda": [e.diagram.to_json(self.d) for e in self.entries],
                "d_lambda": [str(e.d_lambda) for e in self.entries],
                "m_lambda": [str(e.m_lambda) for e in self.entries],
            }
        )

    def to_csv(self) -> str:
        return self.to_dataframe().to_csv(index=False)

    def aggregates(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "role": self.role.value,
            "num_irreps": self.size,
            "d_R": str(self.d_R),
            "d_tot": str(self.d_tot),
            "d_tot_sq": str(self.d_tot_sq),
        }


@lru_cache(maxsize=512)
def _build(n: int, d: int, role: TaskRole) -> IrrepTable:
    entries = tuple(
        IrrepEntry(diagram=lam, d_lambda=su_dimension(lam, d), m_lambda=sym_dimension(lam, n, d))
        for lam in enumerate_diagrams(n, d)
    )
    return IrrepTable(n=n, d=d, role=role, entries=entries)


def build_table(n: int, d: int, role="unitary-array") -> IrrepTable:
    """
    Build the irrep table for n copies of a d-dimensional system.

    Args:
        n: Number of boxes (>= 0)
        d: Local dimension (>= 1)
        role: 'unitary-array' or 'permutation'

    Returns:
        IrrepTable in canonical diagram order
    """
    if n < 0 or d < 1:
        raise ValueError(f"build_table needs n >= 0 and d >= 1, got n={n}, d={d}")
    return _build(n, d, TaskRole.parse(role))
