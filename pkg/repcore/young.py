"""
Young Diagrams
Enumeration of partitions with a row bound and the exact dimension formulas
for the SU(d) and S(n) irreducible representations they label.
"""

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class YoungDiagram:
    """
    A partition lambda_1 >= lambda_2 >= ... >= 0.

    Trailing zero rows are dropped on construction, so two diagrams compare
    equal iff their nonzero rows agree.
    """
    rows: Tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r < 0 for r in rows):
            raise ValueError(f"Young diagram rows must be non-negative: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"Young diagram rows must be non-increasing: {rows}")
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "YoungDiagram":
        return cls(tuple(rows))

    @classmethod
    def from_json(cls, text: str) -> "YoungDiagram":
        """Parse a JSON array of row lengths."""
        return cls(tuple(json.loads(text)))

    @property
    def boxes(self) -> int:
        return sum(self.rows)

    @property
    def depth(self) -> int:
        """Number of nonzero rows."""
        return len(self.rows)

    def padded(self, d: int) -> Tuple[int, ...]:
        """Rows padded with zeros to length d."""
        if self.depth > d:
            raise ValueError(f"{self} has more than {d} rows")
        return self.rows + (0,) * (d - self.depth)

    def conjugate(self) -> "YoungDiagram":
        """Transposed diagram (its rows are the column heights of self)."""
        if not self.rows:
            return self
        return YoungDiagram(tuple(sum(1 for r in self.rows if r > c) for c in range(self.rows[0])))

    def to_json(self, d: Optional[int] = None) -> str:
        return json.dumps(list(self.padded(d) if d is not None else self.rows))

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.rows) + ")"


def _partitions(n: int, max_parts: int, max_part: int) -> Iterator[Tuple[int, ...]]:
    """Partitions of n into at most max_parts parts, each <= max_part, descending lex order."""
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        if first * max_parts < n:
            break
        for rest in _partitions(n - first, max_parts - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate(n: int, d: int) -> Tuple[YoungDiagram, ...]:
    return tuple(YoungDiagram(p) for p in _partitions(n, d, n))


def enumerate_diagrams(n: int, d: int) -> List[YoungDiagram]:
    """
    All Young diagrams with n boxes and at most d rows.

    The order is descending lexicographic, (n) first. This is the canonical
    block order used by tables, Schur bases and the matching-test shifts.

    Args:
        n: Number of boxes (>= 0)
        d: Row bound (>= 1)

    Returns:
        List of YoungDiagram
    """
    if n < 0 or d < 1:
        raise ValueError(f"enumerate_diagrams needs n >= 0 and d >= 1, got n={n}, d={d}")
    return list(_enumerate(n, d))


_factorial = lru_cache(maxsize=None)(math.factorial)


@lru_cache(maxsize=None)
def _superfactorial(k: int) -> int:
    """prod_{j=1}^{k} j!"""
    result = 1
    for j in range(1, k + 1):
        result *= _factorial(j)
    return result


def _vandermonde(rows: Tuple[int, ...]) -> int:
    d = len(rows)
    product = 1
    for i in range(d):
        for j in range(i + 1, d):
            product *= rows[i] - rows[j] + j - i
    return product


def su_dimension(diagram: YoungDiagram, d: int) -> int:
    """
    Dimension d_lambda of the SU(d) irrep labelled by the diagram (Weyl formula).

    Args:
        diagram: Young diagram with at most d rows
        d: Local dimension

    Returns:
        Exact positive integer
    """
    if diagram.depth > d:
        raise ValueError(f"Diagram {diagram} has more than d={d} rows")
    numerator = _vandermonde(diagram.padded(d))
    denominator = _superfactorial(d - 1)
    value, remainder = divmod(numerator, denominator)
    assert remainder == 0, f"non-integral SU({d}) dimension for {diagram}"
    return value


def sym_dimension(diagram: YoungDiagram, n: int, d: int) -> int:
    """
    Dimension m_lambda of the S(n) irrep labelled by the diagram.

    Uses n! * prod_{j<k}(l_j - l_k + k - j) / prod_i (l_i + d - i)!, which
    equals the number of standard Young tableaux of the shape.

    Args:
        diagram: Partition of n with at most d rows
        n: Number of boxes
        d: Row bound used for the padding

    Returns:
        Exact positive integer
    """
    if diagram.boxes != n:
        raise ValueError(f"Diagram {diagram} is not a partition of n={n}")
    if diagram.depth > d:
        raise ValueError(f"Diagram {diagram} has more than d={d} rows")
    rows = diagram.padded(d)
    denominator = 1
    for i, row in enumerate(rows, start=1):
        denominator *= _factorial(row + d - i)
    value, remainder = divmod(_factorial(n) * _vandermonde(rows), denominator)
    assert remainder == 0, f"non-integral S({n}) dimension for {diagram}"
    return value


def associated_diagram(diagram: YoungDiagram, d: int, pad_to: Optional[int] = None) -> YoungDiagram:
    """
    Diagram of the complex-conjugate SU(d) irrep.

    Every column of height k becomes a column of height d - k. With pad_to,
    full columns of height d are prepended until the diagram has pad_to boxes.

    Args:
        diagram: Young diagram with at most d rows
        d: Local dimension
        pad_to: Target box count, or None

    Returns:
        The associated YoungDiagram
    """
    rows = diagram.padded(d)
    top = rows[0] if rows else 0
    associated = tuple(top - rows[d - 1 - i] for i in range(d))
    result = YoungDiagram(associated)
    if pad_to is None:
        return result
    gap = pad_to - result.boxes
    if gap < 0 or gap % d != 0:
        raise ValueError(
            f"Cannot pad {result} ({result.boxes} boxes) to {pad_to} boxes with full columns of height {d}"
        )
    columns = gap // d
    return YoungDiagram(tuple(r + columns for r in result.padded(d)))
