"""
Block States
States in Schur-block coordinates (lambda, q, alpha) with an optional
external reference register, the padded register view used on the wire,
and the merged memory index.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from repcore import IrrepTable, TaskRole, YoungDiagram
from schur import SchurBasis

NORM_TOL = 1e-8


def state_fidelity(first: np.ndarray, second: np.ndarray) -> float:
    """
    Fidelity |<first|second>|^2 of two pure states.

    Both arguments are flattened; a second axis is read as a reference register.
    """
    a = np.asarray(first).reshape(-1)
    b = np.asarray(second).reshape(-1)
    return float(abs(np.vdot(a, b)) ** 2)


def _as_columns(psi: np.ndarray, dim: int) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim == 1:
        psi = psi.reshape(-1, 1)
    if psi.ndim != 2 or psi.shape[0] != dim:
        raise ValueError(f"State must have shape ({dim},) or ({dim}, r), got {psi.shape}")
    return psi


@dataclass
class BlockState:
    """
    Amplitudes indexed by (lambda, q, alpha, reference).

    blocks[i] has shape (d_lambda, m_lambda, r) for the i-th diagram of the table.
    Sub-normalized states are allowed.
    """
    table: IrrepTable
    blocks: List[np.ndarray]

    def __post_init__(self):
        if len(self.blocks) != self.table.size:
            raise ValueError(f"Expected {self.table.size} blocks, got {len(self.blocks)}")
        for entry, block in zip(self.table.entries, self.blocks):
            if block.shape[:2] != (entry.d_lambda, entry.m_lambda):
                raise ValueError(
                    f"Block {entry.diagram} has shape {block.shape[:2]}, "
                    f"expected {(entry.d_lambda, entry.m_lambda)}"
                )
        if self.norm() > 1 + 1e-12 + NORM_TOL:
            raise ValueError(f"Block state norm {self.norm():.12f} exceeds 1")

    @property
    def reference_dim(self) -> int:
        return self.blocks[0].shape[2] if self.blocks else 1

    def norm(self) -> float:
        return float(np.sqrt(sum(np.vdot(b, b).real for b in self.blocks)))

    def weights(self) -> List[float]:
        """Probability mass per block."""
        return [float(np.vdot(b, b).real) for b in self.blocks]

    def support(self, tol: float = 1e-12) -> List[YoungDiagram]:
        return [e.diagram for e, w in zip(self.table.entries, self.weights()) if w > tol]

    def to_coordinates(self) -> np.ndarray:
        """Flatten to Schur-basis coordinates of shape (d^n, r)."""
        return np.concatenate([b.reshape(-1, b.shape[2]) for b in self.blocks], axis=0)

    def to_vector(self, basis: SchurBasis) -> np.ndarray:
        """Full-space state of shape (d^n, r), or (d^n,) without a reference register."""
        vector = basis.from_blocks(self.to_coordinates())
        return vector.reshape(-1) if vector.shape[1] == 1 else vector


def decompose_input(psi: np.ndarray, basis: SchurBasis) -> BlockState:
    """
    Schur-transform a normalized state into block coordinates.

    Args:
        psi: Vector of length d^n, or (d^n, r) with a reference register
        basis: Schur basis of (C^d)^{(x)n}

    Returns:
        BlockState over the basis' irrep table
    """
    columns = _as_columns(psi, basis.dim)
    norm = np.linalg.norm(columns)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"Input state must be normalized, norm is {norm:.12f}")
    coordinates = basis.to_blocks(columns)
    blocks, start = [], 0
    for entry in basis.table.entries:
        width = entry.d_lambda * entry.m_lambda
        blocks.append(coordinates[start:start + width].reshape(entry.d_lambda, entry.m_lambda, -1))
        start += width
    return BlockState(table=basis.table, blocks=blocks)


@dataclass
class RegisterState:
    """
    Block state with the representation register first and padded to d_R.

    registers[i] has shape (d_R, mult_i, r). For the permutation role the
    representation register is the S(n) index alpha and the multiplicity
    register is q. Slots at or beyond the block's representation dimension
    are padding.
    """
    table: IrrepTable
    registers: List[np.ndarray]

    @property
    def role(self) -> TaskRole:
        return self.table.role

    @classmethod
    def from_block_state(cls, state: BlockState, role_table: IrrepTable) -> "RegisterState":
        registers = []
        pad = role_table.d_R
        for block in state.blocks:
            view = block if role_table.role == TaskRole.UNITARY_ARRAY else np.transpose(block, (1, 0, 2))
            padded = np.zeros((pad,) + view.shape[1:], dtype=complex)
            padded[: view.shape[0]] = view
            registers.append(padded)
        return cls(table=role_table, registers=registers)

    def norm_sq(self) -> float:
        return float(sum(np.vdot(r, r).real for r in self.registers))

    def padding_weight(self) -> float:
        """Mass in slots beyond each block's own representation dimension."""
        return float(
            sum(np.vdot(r[dim:], r[dim:]).real for r, dim in zip(self.registers, self.table.rep_dims))
        )

    def normalized(self) -> "RegisterState":
        norm = np.sqrt(self.norm_sq())
        return RegisterState(table=self.table, registers=[r / norm for r in self.registers])

    def apply(self, unitaries: List[np.ndarray]) -> "RegisterState":
        """Apply one d_R x d_R matrix per block to the representation register."""
        return RegisterState(
            table=self.table,
            registers=[np.tensordot(u, r, axes=([1], [0])) for u, r in zip(unitaries, self.registers)],
        )

    def to_block_state(self, unitary_table: IrrepTable) -> BlockState:
        """Drop the padding and return to (q, alpha) order."""
        blocks = []
        for register, dim in zip(self.registers, self.table.rep_dims):
            valid = register[:dim]
            blocks.append(valid if self.role == TaskRole.UNITARY_ARRAY else np.transpose(valid, (1, 0, 2)))
        return BlockState(table=unitary_table, blocks=blocks)


def merge_registers(diagram: YoungDiagram, slot: int, table: IrrepTable) -> int:
    """
    Memory index of (lambda, representation slot).

    Args:
        diagram: Block label
        slot: Representation slot, below the block's representation dimension
        table: Irrep table (its role fixes the representation dimension)

    Returns:
        Index in [0, d_tot)
    """
    position = table.index_of(diagram)
    size = table.rep_dims[position]
    if not 0 <= slot < size:
        raise ValueError(f"Slot {slot} out of range for {diagram} (dimension {size})")
    return table.offsets[position] + slot


def split_memory_index(index: int, table: IrrepTable) -> Tuple[YoungDiagram, int]:
    """Inverse of merge_registers."""
    if not 0 <= index < table.d_tot:
        raise ValueError(f"Memory index {index} out of range [0, {table.d_tot})")
    for entry, offset, size in zip(table.entries, table.offsets, table.rep_dims):
        if index < offset + size:
            return entry.diagram, index - offset
    raise ValueError(f"Memory index {index} not found")  # unreachable for a consistent table


def coerce_state(psi: np.ndarray, dim: int, reference_dim: Optional[int] = None) -> np.ndarray:
    """Validate and return psi as (dim, r) columns."""
    columns = _as_columns(psi, dim)
    if reference_dim is not None and columns.shape[1] != reference_dim:
        raise ValueError(f"Reference register has dimension {columns.shape[1]}, expected {reference_dim}")
    return columns


def random_state(dim: int, rng: np.random.Generator, reference_dim: int = 1) -> np.ndarray:
    """Haar-random pure state of shape (dim,), or (dim, reference_dim) when entangled with a reference."""
    shape = (dim,) if reference_dim == 1 else (dim, reference_dim)
    psi = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return psi / np.linalg.norm(psi)
