"""
Storage and Retrieval
Store n uses of a gate in a quantum memory and retrieve its action on a
later input, with success probability 1/d_tot,sq.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from harness.oracle import GateOracle
from harness.transcript import B_TO_A, Transcript
from repcore import IrrepTable, build_table
from repmatch.block_state import BlockState, decompose_input, state_fidelity
from schur import SchurBasis, irreps_under, is_special_unitary, read_array, write_array
from utils import ProtocolError, get_logger, log_event
from utils.exact import ceil_log2, format_decimal, format_rational

logger = get_logger("Baselines")

PROBABILITY_TOL = 1e-12
FIDELITY_TOL = 1e-9


@dataclass
class GateMemory:
    """
    Memory sum_lambda d_lambda / sqrt(d_tot,sq) |lambda>_A (U^lambda (x) I)|Phi+_lambda>_{R1 R2}.

    blocks[i] is the R1 x R2 amplitude matrix of block i.
    """
    table: IrrepTable
    blocks: List[np.ndarray]

    @property
    def amplitudes(self) -> np.ndarray:
        """Block amplitudes d_lambda / sqrt(d_tot,sq), read from the stored blocks."""
        return np.array([np.linalg.norm(b) for b in self.blocks])

    @property
    def expected_amplitudes(self) -> np.ndarray:
        return np.array([e.d_lambda / np.sqrt(self.table.d_tot_sq) for e in self.table.entries])

    @property
    def memory_qubits(self) -> int:
        """c_rs = ceil(log2 d_tot,sq)."""
        return ceil_log2(self.table.d_tot_sq)

    def norm(self) -> float:
        return float(np.sqrt(sum(np.vdot(b, b).real for b in self.blocks)))

    def dump(self, path):
        """Write the memory in the Schur cache file format."""
        header = {
            "kind": "gate-memory",
            "n": self.table.n,
            "d": self.table.d,
            "blocks": [[list(e.diagram.padded(self.table.d)), e.d_lambda] for e in self.table.entries],
        }
        write_array(path, header, np.concatenate([b.reshape(-1) for b in self.blocks]))

    @classmethod
    def load(cls, path) -> "GateMemory":
        header, data = read_array(path)
        if header.get("kind") != "gate-memory":
            raise ValueError(f"{path} does not hold a gate memory")
        table = build_table(int(header["n"]), int(header["d"]))
        blocks, start = [], 0
        for entry in table.entries:
            size = entry.d_lambda * entry.d_lambda
            blocks.append(np.array(data[start:start + size]).reshape(entry.d_lambda, entry.d_lambda))
            start += size
        if start != data.size:
            raise ValueError(f"{path} holds {data.size} amplitudes, expected {start}")
        return cls(table=table, blocks=blocks)


@dataclass
class RetrievalOutcome:
    """The N_yes branch of retrieval."""
    probability: float
    exact_probability: Fraction
    fidelity: float
    memory_qubits: int
    transcript: Transcript
    state: np.ndarray = field(repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "probability": self.probability,
            "exact_probability": format_rational(self.exact_probability),
            "exact_probability_decimal": format_decimal(self.exact_probability),
            "fidelity": self.fidelity,
            "memory_qubits": self.memory_qubits,
            "transcript": self.transcript.to_dict(),
        }


def store(g: np.ndarray, basis: SchurBasis, oracle: Optional[GateOracle] = None) -> GateMemory:
    """
    Apply the Schur-conjugated U_g^{(x)n} to the memory preparation and keep the result.

    Args:
        g: d x d special unitary
        basis: Schur basis for (n, d)
        oracle: Gate oracle (built from g if omitted)

    Returns:
        GateMemory
    """
    g = np.asarray(g, dtype=complex)
    if not is_special_unitary(g, 1e-10, 1e-10):
        raise ValueError("Gate must be a d x d special unitary matrix")
    oracle = oracle or GateOracle("unitary-array", g, basis.n, basis.d)
    table = basis.table
    scale = np.sqrt(table.d_tot_sq)
    irreps = irreps_under(basis, oracle.apply, "su")
    blocks = [
        (e.d_lambda / scale) * u / np.sqrt(e.d_lambda)
        for e, u in zip(table.entries, irreps)
    ]
    return GateMemory(table=table, blocks=blocks)


def retrieve(
    psi: np.ndarray,
    memory: GateMemory,
    basis: SchurBasis,
    reference: Optional[np.ndarray] = None,
    transcript: Optional[Transcript] = None,
) -> RetrievalOutcome:
    """
    Project with N_yes = sum_lambda <lambda|_A (x) |lambda><lambda|_I (x) <Phi+_lambda|_{R R2}.

    The input's reference register plays the purification register P.

    Args:
        psi: Normalized input of length d^n, or (d^n, r)
        memory: Stored gate
        basis: Schur basis for (n, d)
        reference: Expected output for the fidelity check (skipped if omitted)
        transcript: Transcript to extend

    Returns:
        RetrievalOutcome with probability exactly 1/d_tot,sq
    """
    if (memory.table.n, memory.table.d) != (basis.n, basis.d):
        raise ValueError("Memory and basis disagree on (n, d)")
    transcript = transcript or Transcript(protocol="store-retrieve")
    if not transcript.round_records:
        transcript.start_round()
    transcript.send(B_TO_A, "gate-memory", memory.table.d_tot_sq)

    state = decompose_input(psi, basis)
    output = [
        np.einsum("ik,kar->iar", block, x) / np.sqrt(entry.d_lambda)
        for entry, block, x in zip(memory.table.entries, memory.blocks, state.blocks)
    ]
    probability = float(sum(np.vdot(b, b).real for b in output))
    exact = Fraction(1, memory.table.d_tot_sq)
    if abs(probability - float(exact)) > PROBABILITY_TOL:
        raise ProtocolError(f"Retrieval success probability {probability:.3e} != {exact}", transcript)

    normalized = BlockState(table=basis.table, blocks=[b / np.sqrt(probability) for b in output])
    vector = normalized.to_vector(basis)
    fidelity = float("nan")
    if reference is not None:
        fidelity = state_fidelity(reference, vector)
        if fidelity < 1 - FIDELITY_TOL:
            raise ProtocolError(f"Retrieved state fidelity {fidelity:.12f} below tolerance", transcript)

    transcript.record(success_probability=probability)
    log_event(logger, "retrieve", n=basis.n, d=basis.d, probability=probability, fidelity=fidelity)
    return RetrievalOutcome(
        probability=probability,
        exact_probability=exact,
        fidelity=fidelity,
        memory_qubits=memory.memory_qubits,
        transcript=transcript,
        state=vector,
    )
