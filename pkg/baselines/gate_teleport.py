"""
Gate Teleportation Baseline
Compression by gate teleportation: station B rotates a block-wise maximally
entangled resource with the hidden gate and ships it to station A, which
performs a generalised Bell measurement.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from harness.oracle import GateOracle
from harness.transcript import B_TO_A, Transcript
from repcore import IrrepTable, build_table
from repmatch.block_state import BlockState, decompose_input, state_fidelity
from schur import SchurBasis, apply_tensor_power, irreps_under, is_special_unitary
from utils import ProtocolError, get_logger, get_settings, log_event
from utils.config import LabSettings, check_dimension_cap
from utils.exact import ceil_log2, format_decimal, format_rational

logger = get_logger("Baselines")

PROBABILITY_TOL = 1e-12
FIDELITY_TOL = 1e-9


@dataclass
class TeleportResource:
    """
    Resource sum_lambda sqrt(d_lambda/d_tot) |lambda>_A |Phi+_lambda>_{R1 R2} |eta_0>_M.

    blocks[i] is the R1 x R2 amplitude matrix of block i, amplitude factor
    included. The multiplicity register M sits in its first basis vector.
    """
    table: IrrepTable
    blocks: List[np.ndarray]
    eta_index: int = 0

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([np.sqrt(e.d_lambda / self.table.d_tot) for e in self.table.entries])

    @property
    def support_dimension(self) -> int:
        """Dimension of (+)_lambda H_lambda (x) H_lambda."""
        return self.table.d_tot_sq

    def exact_norm(self) -> Fraction:
        return sum((Fraction(e.d_lambda, self.table.d_tot) for e in self.table.entries), Fraction(0))

    def norm(self) -> float:
        return float(np.sqrt(sum(np.vdot(b, b).real for b in self.blocks)))

    def rotated(self, irreps: List[np.ndarray]) -> "TeleportResource":
        """Resource after U^lambda acts on R1."""
        return TeleportResource(
            table=self.table,
            blocks=[u @ b for u, b in zip(irreps, self.blocks)],
            eta_index=self.eta_index,
        )


@dataclass
class TeleportOutcome:
    """The j = 0 branch of the Bell measurement; other outcomes are pooled as failure."""
    probability: float
    exact_probability: Fraction
    fidelity: float
    transcript: Transcript
    state: np.ndarray = field(repr=False)

    @property
    def failure_probability(self) -> Fraction:
        return 1 - self.exact_probability

    def to_dict(self) -> Dict[str, Any]:
        return {
            "probability": self.probability,
            "exact_probability": format_rational(self.exact_probability),
            "exact_probability_decimal": format_decimal(self.exact_probability),
            "failure_probability": format_rational(self.failure_probability),
            "fidelity": self.fidelity,
            "transcript": self.transcript.to_dict(),
        }


@dataclass(frozen=True)
class NaiveTeleportCost:
    """Teleporting each of the n gates separately."""
    n: int
    d: int

    @property
    def qubits(self) -> int:
        return self.n * ceil_log2(self.d * self.d)

    @property
    def probability(self) -> Fraction:
        return Fraction(1, self.d ** (2 * self.n))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "d": self.d,
            "qubits": self.qubits,
            "probability": format_rational(self.probability),
            "probability_decimal": format_decimal(self.probability),
        }


def naive_teleport_cost(n: int, d: int) -> NaiveTeleportCost:
    """Cost n * ceil(log2 d^2) and probability d^(-2n); calculator only."""
    if n < 1 or d < 2:
        raise ValueError(f"naive_teleport_cost needs n >= 1 and d >= 2, got n={n}, d={d}")
    return NaiveTeleportCost(n=n, d=d)


def build_teleport_resource(n: int, d: int, settings: Optional[LabSettings] = None) -> TeleportResource:
    """
    Unrotated resource state for (n, d).

    Args:
        n: Number of gate copies
        d: Local dimension
        settings: Settings holding the dimension cap

    Returns:
        TeleportResource with amplitudes sqrt(d_lambda / d_tot)
    """
    check_dimension_cap(n, d, settings)
    table = build_table(n, d)
    blocks = [
        np.sqrt(e.d_lambda / table.d_tot) * np.eye(e.d_lambda, dtype=complex) / np.sqrt(e.d_lambda)
        for e in table.entries
    ]
    return TeleportResource(table=table, blocks=blocks)


def bell_effect(resource: TeleportResource, state: BlockState) -> List[np.ndarray]:
    """
    Apply sum_lambda sqrt(d_lambda/d_tot) <lambda|_A (x) |lambda><lambda|_I (x) <Phi+_lambda|_{R R2}.

    Returns the unnormalized blocks left on R1 (x) multiplicity (x) reference.
    """
    result = []
    for entry, block, x in zip(resource.table.entries, resource.blocks, state.blocks):
        weight = np.sqrt(entry.d_lambda / resource.table.d_tot) / np.sqrt(entry.d_lambda)
        result.append(weight * np.einsum("ik,kar->iar", block, x))
    return result


def run_gate_teleport(
    psi: np.ndarray,
    g: np.ndarray,
    basis: SchurBasis,
    oracle: Optional[GateOracle] = None,
    transcript: Optional[Transcript] = None,
    settings: Optional[LabSettings] = None,
) -> TeleportOutcome:
    """
    Simulate the teleportation-based compression of U_g^{(x)n}.

    Args:
        psi: Normalized input of length d^n, or (d^n, r) with a reference register
        g: d x d special unitary (held by station B's oracle)
        basis: Schur basis for (n, d)
        oracle: Gate oracle (built from g if omitted)
        transcript: Transcript to extend

    Returns:
        TeleportOutcome for the j = 0 branch, probability exactly 1/d_tot^2
    """
    settings = settings or get_settings()
    g = np.asarray(g, dtype=complex)
    if not is_special_unitary(g, 1e-10, 1e-10):
        raise ValueError("Gate must be a d x d special unitary matrix")
    n, d = basis.n, basis.d
    oracle = oracle or GateOracle("unitary-array", g, n, d)
    transcript = transcript or Transcript(protocol="teleport")
    transcript.start_round()

    state = decompose_input(psi, basis)
    resource = build_teleport_resource(n, d, settings)
    rotated = resource.rotated(irreps_under(basis, oracle.apply, "su"))
    transcript.send(B_TO_A, "resource", resource.support_dimension)

    output = bell_effect(rotated, state)
    probability = float(sum(np.vdot(b, b).real for b in output))
    exact = Fraction(1, resource.table.d_tot ** 2)
    if abs(probability - float(exact)) > PROBABILITY_TOL:
        raise ProtocolError(f"Teleportation success probability {probability:.3e} != {exact}", transcript)

    normalized = BlockState(table=basis.table, blocks=[b / np.sqrt(probability) for b in output])
    vector = normalized.to_vector(basis)
    ideal = apply_tensor_power(g, np.asarray(psi, dtype=complex).reshape(basis.dim, -1), n, d)
    fidelity = state_fidelity(ideal, vector)
    if fidelity < 1 - FIDELITY_TOL:
        raise ProtocolError(f"Teleported state fidelity {fidelity:.12f} below tolerance", transcript)

    transcript.record(success_probability=probability, oracle_queries=oracle.queries)
    log_event(logger, "gate_teleport", n=n, d=d, probability=probability, fidelity=fidelity)
    return TeleportOutcome(
        probability=probability,
        exact_probability=exact,
        fidelity=fidelity,
        transcript=transcript,
        state=vector,
    )
