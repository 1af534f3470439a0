"""
Gate Oracle
Black-box access to the target gate for station B, with a query counter.
"""

from typing import Optional

import numpy as np

from costmodel import Task
from schur.group_elements import apply_tensor_power, permute_tensor_factors, validate_permutation


class GateOracle:
    """
    Applies the hidden gate to station B's systems and counts the uses.

    A call acts on `copies` qudits at once: U^{(x)n} for gate arrays, the
    permutation gate on n qudits, U^{(x)m} with m = (d-1)n for conjugation.
    The counter grows by `copies` per call.
    """

    def __init__(self, task, element, n: int, d: int, copies: Optional[int] = None):
        """
        Initialize the oracle.

        Args:
            task: Task the gate belongs to
            element: d x d SU(d) matrix, or a permutation of n letters
            n: Number of qudits of the target
            d: Local dimension
            copies: Qudits per call (defaults to n, or (d-1)n for conjugation)
        """
        self.task = Task.parse(task)
        self.n = n
        self.d = d
        if self.task == Task.PERMUTATION:
            self._element = validate_permutation(element, n)
        else:
            self._element = np.asarray(element, dtype=complex)
            if self._element.shape != (d, d):
                raise ValueError(f"Gate must be {d}x{d}, got shape {self._element.shape}")
        default = (d - 1) * n if self.task == Task.CONJUGATION else n
        self.copies = copies if copies is not None else default
        self.queries = 0

    @property
    def element(self):
        """Gate description, used by the checker to build ideal outputs."""
        return self._element

    @property
    def uses_per_call(self) -> int:
        return self.copies

    def apply(self, vectors: np.ndarray) -> np.ndarray:
        """
        Apply the gate to the columns of `vectors` (shape (d^copies, k)).

        Args:
            vectors: Station B's input columns

        Returns:
            Rotated columns
        """
        self.queries += self.copies
        if self.task == Task.PERMUTATION:
            return permute_tensor_factors(self._element, vectors, self.copies, self.d)
        return apply_tensor_power(self._element, vectors, self.copies, self.d)

    def reset(self):
        self.queries = 0
