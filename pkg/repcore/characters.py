"""
Symmetric Group Characters
Cycle types, conjugacy-class sizes and irreducible characters via the
Murnaghan-Nakayama rule (rim hooks removed on the beta-number abacus).
"""

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

from .young import YoungDiagram, _partitions


@dataclass(frozen=True)
class CycleType:
    """A partition of n labelling a conjugacy class of S(n)."""
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts if p), reverse=True))
        if any(p < 0 for p in parts):
            raise ValueError(f"Cycle lengths must be positive: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> "CycleType":
        """
        Cycle type of a permutation given in one-line notation (perm[i] = image of i).
        """
        seen = [False] * len(perm)
        lengths = []
        for start in range(len(perm)):
            if seen[start]:
                continue
            length = 0
            current = start
            while not seen[current]:
                seen[current] = True
                current = perm[current]
                length += 1
            lengths.append(length)
        return cls(tuple(lengths))

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def enumerate_cycle_types(n: int) -> List[CycleType]:
    """All conjugacy classes of S(n), in descending lexicographic order."""
    return [CycleType(p) for p in _partitions(n, n, n)]


def centralizer_order(cycle_type: CycleType) -> int:
    """z_mu = prod_i i^{k_i} k_i!, with k_i the number of cycles of length i."""
    order = 1
    for length, count in Counter(cycle_type.parts).items():
        order *= length ** count * math.factorial(count)
    return order


def class_size(cycle_type: CycleType) -> int:
    """Number of permutations with the given cycle type."""
    return math.factorial(cycle_type.size) // centralizer_order(cycle_type)


@lru_cache(maxsize=None)
def _character(rows: Tuple[int, ...], parts: Tuple[int, ...]) -> int:
    if not parts:
        return 1 if not rows else 0

    hook, rest = parts[0], parts[1:]
    length = len(rows)
    beads = [rows[i] + (length - 1 - i) for i in range(length)]
    occupied = set(beads)

    total = 0
    for bead in beads:
        target = bead - hook
        if target < 0 or target in occupied:
            continue
        height = sum(1 for b in beads if target < b < bead)
        moved = sorted((occupied - {bead}) | {target}, reverse=True)
        new_rows = tuple(moved[i] - (length - 1 - i) for i in range(length))
        stripped = YoungDiagram(new_rows).rows
        total += (-1) ** height * _character(stripped, rest)
    return total


def mn_character(diagram: YoungDiagram, cycle_type: CycleType) -> int:
    """
    Irreducible character chi^lambda(mu) of S(n).

    Args:
        diagram: Partition lambda of n
        cycle_type: Conjugacy class mu of S(n)

    Returns:
        Exact integer character value
    """
    if diagram.boxes != cycle_type.size:
        raise ValueError(
            f"Box counts differ: diagram {diagram} has {diagram.boxes}, "
            f"cycle type {cycle_type} has {cycle_type.size}"
        )
    return _character(diagram.rows, cycle_type.parts)
