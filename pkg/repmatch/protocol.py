"""
Representation Matching
Simulation of the representation-matching protocol: station A sends only the
representation register, station B applies the target to it conditioned on a
uniform ansatz over the blocks, and the modified matching test compares the
ansatz with the index register kept by A.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import block_diag

from costmodel import Task, amplify_rounds
from harness.oracle import GateOracle
from harness.transcript import A_TO_B, B_TO_A, Transcript
from repcore import IrrepTable, TaskRole, build_table
from schur import (
    SchurBasis,
    SchurBasisCache,
    apply_tensor_power,
    conjugate_partner,
    conjugation_intertwiner,
    irreps_under,
    is_special_unitary,
    permute_tensor_factors,
    validate_permutation,
)
from utils import ProtocolError, get_logger, get_settings, log_event
from utils.config import LabSettings
from .block_state import (
    RegisterState,
    coerce_state,
    decompose_input,
    state_fidelity,
)

logger = get_logger("RepMatch")

PROBABILITY_TOL = 1e-10
FIDELITY_TOL = 1e-9


@dataclass
class TargetSpec:
    """
    The gate to be applied remotely.

    element is a d x d SU(d) matrix for unitary-array and conjugation, or a
    permutation tuple for the permutation task. m is the number of uses of U
    station B consumes per round: n, or (d-1)n for conjugation.
    """
    task: Task
    element: Any
    n: int
    d: int
    m: Optional[int] = None

    def __post_init__(self):
        self.task = Task.parse(self.task)
        if self.task == Task.STORAGE_RETRIEVAL:
            raise ValueError("Storage and retrieval is simulated by the baselines package")
        if self.n < 1 or self.d < 2:
            raise ValueError(f"TargetSpec needs n >= 1 and d >= 2, got n={self.n}, d={self.d}")
        expected = (self.d - 1) * self.n if self.task == Task.CONJUGATION else self.n
        if self.m is None:
            self.m = expected
        elif self.m != expected:
            raise ValueError(f"Task {self.task.value} consumes m={expected} uses, got m={self.m}")
        if self.task == Task.PERMUTATION:
            self.element = validate_permutation(self.element, self.n)
        else:
            self.element = np.asarray(self.element, dtype=complex)
            if self.element.shape != (self.d, self.d) or not is_special_unitary(self.element, 1e-10, 1e-10):
                raise ValueError("Gate must be a d x d special unitary matrix")

    @property
    def role(self) -> TaskRole:
        return self.task.role

    def oracle(self) -> GateOracle:
        return GateOracle(self.task, self.element, self.n, self.d, copies=self.m)

    def ideal_output(self, psi: np.ndarray) -> np.ndarray:
        """U^target psi computed directly in the full space, shape (d^n, r)."""
        columns = coerce_state(psi, self.d ** self.n)
        if self.task == Task.PERMUTATION:
            return permute_tensor_factors(self.element, columns, self.n, self.d)
        if self.task == Task.CONJUGATION:
            return apply_tensor_power(self.element.conj(), columns, self.n, self.d)
        return apply_tensor_power(self.element, columns, self.n, self.d)


@dataclass
class BlockTarget:
    """Padded unitaries applied by station B, one per ansatz value a."""
    table: IrrepTable
    unitaries: List[np.ndarray]

    @classmethod
    def from_irreps(cls, table: IrrepTable, irreps: List[np.ndarray]) -> "BlockTarget":
        """Pad each irrep matrix U^a to U^a (+) I on d_R slots."""
        pad = table.d_R
        unitaries = []
        for matrix in irreps:
            padded = np.eye(pad, dtype=complex)
            size = matrix.shape[0]
            padded[:size, :size] = matrix
            unitaries.append(padded)
        return cls(table=table, unitaries=unitaries)

    def shifted(self, position: int, branch: int) -> np.ndarray:
        """Unitary of ansatz value (position + branch) mod |R|."""
        return self.unitaries[(position + branch) % self.table.size]


@dataclass
class BlockUnitary:
    """One d_R x d_R unitary per block acting on the padded representation register."""
    table: IrrepTable
    blocks: List[np.ndarray]

    def apply(self, state: RegisterState) -> RegisterState:
        return state.apply(self.blocks)

    def dense(self) -> np.ndarray:
        """Block-diagonal matrix on the padded block space."""
        return block_diag(*self.blocks)

    def unitarity_residual(self) -> float:
        dense = self.dense()
        return float(np.max(np.abs(dense.conj().T @ dense - np.eye(dense.shape[0]))))


@dataclass
class ProtocolOutcome:
    """One branch r of the modified matching test (r = 0 is 'yes')."""
    branch: int
    probability: float
    fidelity: float
    padding_weight: float
    overflow_weight: float
    state: RegisterState = field(repr=False)

    @property
    def succeeded(self) -> bool:
        return self.branch == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "branch": self.branch,
            "probability": self.probability,
            "fidelity": self.fidelity,
            "padding_weight": self.padding_weight,
            "overflow_weight": self.overflow_weight,
        }


@dataclass
class RunResult:
    """Outcome of repeated rounds until success or the round limit."""
    succeeded: bool
    rounds: int
    outcome: ProtocolOutcome
    transcript: Transcript
    oracle_queries: int
    restored_fidelity: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "succeeded": self.succeeded,
            "rounds": self.rounds,
            "outcome": self.outcome.to_dict(),
            "oracle_queries": self.oracle_queries,
            "restored_fidelity": self.restored_fidelity,
            "transcript": self.transcript.to_dict(),
        }


@dataclass
class _Node:
    """State reached after a sequence of failed rounds, with the accumulated block action."""
    state: RegisterState
    accumulated: List[np.ndarray]
    target: Optional[BlockTarget] = None
    outcomes: Optional[List[ProtocolOutcome]] = None


class RepresentationMatcher:
    """
    Runs representation matching for one target.

    Works directly in Schur-block coordinates: decompose_input at the start,
    the basis again at the end to compare with the ideal output.
    """

    def __init__(
        self,
        target: TargetSpec,
        basis: Optional[SchurBasis] = None,
        conj_basis: Optional[SchurBasis] = None,
        cache: Optional[SchurBasisCache] = None,
        settings: Optional[LabSettings] = None,
    ):
        """
        Initialize the matcher.

        Args:
            target: Gate and task
            basis: Schur basis for (n, d) (built through the cache if omitted)
            conj_basis: Schur basis for ((d-1)n, d), conjugation only
            cache: Basis cache used for missing bases
            settings: Lab settings
        """
        self.target = target
        self.settings = settings or get_settings()
        self._cache = cache or SchurBasisCache(settings=self.settings, persist=False)
        self.basis = basis or self._cache.get(target.n, target.d)
        if (self.basis.n, self.basis.d) != (target.n, target.d):
            raise ValueError("Basis does not match the target's (n, d)")
        self.table = build_table(target.n, target.d, target.role)
        self.conj_basis = None
        self._intertwiners: Optional[List[np.ndarray]] = None
        if target.task == Task.CONJUGATION:
            if conj_basis is None:
                conj_basis = self.basis if target.m == target.n else self._cache.get(target.m, target.d)
            if (conj_basis.n, conj_basis.d) != (target.m, target.d):
                raise ValueError("Conjugation basis must be built for ((d-1)n, d)")
            self.conj_basis = conj_basis

    @property
    def p_rm(self) -> Fraction:
        return Fraction(1, self.table.size)

    # ------------------------------------------------------------------
    # station B
    # ------------------------------------------------------------------

    def intertwiners(self) -> List[np.ndarray]:
        """V^lambda for every block (conjugation only), computed once."""
        if self._intertwiners is None:
            rng = np.random.default_rng(0)
            self._intertwiners = [
                conjugation_intertwiner(e.diagram, self.basis, self.conj_basis, rng=rng, settings=self.settings)
                for e in self.basis.table.entries
            ]
        return self._intertwiners

    def base_target(self, oracle: Optional[GateOracle] = None) -> BlockTarget:
        """
        Station B's round unitaries a -> U^a (+) I, from one oracle call.

        The representation slot of every block is encoded into B's systems
        through the Schur basis, the oracle acts once, and the block is read
        back out.
        """
        oracle = oracle or self.target.oracle()
        task = self.target.task
        if task == Task.CONJUGATION:
            source = self.conj_basis
            partner_irreps = irreps_under(source, oracle.apply, "su")
            irreps = []
            for entry, v in zip(self.basis.table.entries, self.intertwiners()):
                partner = conjugate_partner(entry.diagram, self.basis, source)
                u = partner_irreps[source.table.index_of(partner)]
                irreps.append(v @ u @ v.conj().T)
        else:
            group = "sym" if task == Task.PERMUTATION else "su"
            irreps = irreps_under(self.basis, oracle.apply, group)
        return BlockTarget.from_irreps(self.table, irreps)

    def second_round_target(self, base: BlockTarget, branch: int) -> BlockTarget:
        """Retry target a -> U~^a (U~^{a+r})^dagger after a failed round with outcome r."""
        return self.retry_target(base, [base.shifted(i, branch) for i in range(self.table.size)])

    def retry_target(self, base: BlockTarget, accumulated: List[np.ndarray]) -> BlockTarget:
        """
        Target undoing the accumulated block action W and then applying U.

        a -> U~^a W_a^dagger, so that on the 'yes' outcome block lambda receives
        U~^lambda W_lambda^dagger W_lambda = U~^lambda.
        """
        return BlockTarget(
            table=self.table,
            unitaries=[u @ w.conj().T for u, w in zip(base.unitaries, accumulated)],
        )

    # ------------------------------------------------------------------
    # one round
    # ------------------------------------------------------------------

    def run_round(
        self,
        state: RegisterState,
        round_target: BlockTarget,
        transcript: Optional[Transcript] = None,
        ideal: Optional[np.ndarray] = None,
    ) -> List[ProtocolOutcome]:
        """
        Enumerate every outcome of the modified matching test.

        Branch r keeps the ansatz a = lambda + r (mod |R|). Its amplitude is
        |R|^{-1/2} sum_lambda |lambda> U~^{lambda+r} X_lambda, so each branch
        has probability 1/|R| for every input.

        Args:
            state: Padded register state sent by station A
            round_target: Station B's unitaries for this round
            transcript: Transcript receiving the two messages of the round
            ideal: Full-space ideal output for fidelity reporting

        Returns:
            One ProtocolOutcome per branch, branch 0 first
        """
        size = self.table.size
        rep_dims = self.table.rep_dims
        if transcript is not None:
            transcript.send(A_TO_B, "R", self.table.d_R)
            transcript.send(B_TO_A, "AR-memory", self.table.d_tot)

        outcomes = []
        total, overflow = 0.0, 0.0
        for branch in range(size):
            registers = [
                np.tensordot(round_target.shifted(i, branch), reg, axes=([1], [0]))
                for i, reg in enumerate(state.registers)
            ]
            branch_state = RegisterState(table=self.table, registers=registers)
            weight = branch_state.norm_sq()
            probability = weight / size
            total += probability
            normalized = branch_state.normalized()
            memory_limits = [rep_dims[(i + branch) % size] for i in range(size)]
            overflow_weight = float(
                sum(np.vdot(r[lim:], r[lim:]).real for r, lim in zip(normalized.registers, memory_limits))
            )
            overflow += probability * overflow_weight

            fidelity = float("nan")
            padding = normalized.padding_weight()
            if ideal is not None:
                output = normalized.to_block_state(self.basis.table).to_vector(self.basis)
                fidelity = state_fidelity(ideal, output)
            outcomes.append(
                ProtocolOutcome(
                    branch=branch,
                    probability=probability,
                    fidelity=fidelity,
                    padding_weight=padding,
                    overflow_weight=overflow_weight,
                    state=normalized,
                )
            )

        if abs(total - state.norm_sq()) > PROBABILITY_TOL:
            raise ProtocolError(f"Branch probabilities sum to {total:.12f}", transcript)
        if outcomes[0].padding_weight > PROBABILITY_TOL:
            raise ProtocolError(
                f"Success branch left the block space (padding weight {outcomes[0].padding_weight:.3e})", transcript
            )
        if transcript is not None:
            transcript.overflow_probability += overflow
            transcript.record(
                branch_probabilities=[o.probability for o in outcomes],
                overflow_probability=overflow,
            )
        return outcomes

    # ------------------------------------------------------------------
    # full protocol
    # ------------------------------------------------------------------

    def prepare(self, psi: np.ndarray) -> Tuple[RegisterState, np.ndarray]:
        """Station A's Schur transform, plus the ideal output used for checking."""
        block_state = decompose_input(psi, self.basis)
        return RegisterState.from_block_state(block_state, self.table), self.ideal_output(psi)

    def ideal_output(self, psi: np.ndarray) -> np.ndarray:
        return self.target.ideal_output(psi)

    def run_repmatch(
        self,
        psi: np.ndarray,
        transcript: Optional[Transcript] = None,
        oracle: Optional[GateOracle] = None,
    ) -> Tuple[List[ProtocolOutcome], Transcript]:
        """
        One round of the protocol with every branch enumerated.

        Args:
            psi: Normalized input of length d^n, or (d^n, r) with a reference register
            transcript: Transcript to extend (a new one if omitted)
            oracle: Gate oracle (a fresh one from the target if omitted)

        Returns:
            (outcomes, transcript)
        """
        transcript = transcript or Transcript(protocol="repmatch")
        oracle = oracle or self.target.oracle()
        state, ideal = self.prepare(psi)
        transcript.start_round()
        outcomes = self.run_round(state, self.base_target(oracle), transcript, ideal)
        transcript.record(oracle_queries=oracle.queries)

        success = outcomes[0]
        if success.fidelity < 1 - FIDELITY_TOL:
            raise ProtocolError(f"Success branch fidelity {success.fidelity:.12f} below tolerance", transcript)
        log_event(
            logger,
            "repmatch_round",
            task=self.target.task.value,
            n=self.target.n,
            d=self.target.d,
            p_yes=success.probability,
            fidelity=success.fidelity,
        )
        return outcomes, transcript

    def recovery_unitary(self, branch: int, round_target: Optional[BlockTarget] = None) -> BlockUnitary:
        """
        Unitary undoing a failed round on the padded block space.

        Block lambda receives (U~^{lambda+r})^dagger.

        Args:
            branch: Observed outcome r (must be nonzero)
            round_target: Target used in that round (the first-round target if omitted)

        Returns:
            BlockUnitary
        """
        if branch == 0:
            raise ValueError("Branch 0 succeeded; there is nothing to recover")
        if not 0 < branch < self.table.size:
            raise ValueError(f"Branch {branch} out of range for |R| = {self.table.size}")
        round_target = round_target or self.base_target()
        return BlockUnitary(
            table=self.table,
            blocks=[round_target.shifted(i, branch).conj().T for i in range(self.table.size)],
        )

    def restore(self, state: RegisterState, recovery: BlockUnitary) -> np.ndarray:
        """Apply a recovery and return the full-space state."""
        restored = recovery.apply(state)
        if restored.padding_weight() > PROBABILITY_TOL:
            raise ProtocolError(f"Recovered state has padding weight {restored.padding_weight():.3e}")
        return restored.to_block_state(self.basis.table).to_vector(self.basis)

    def _expand(self, node: _Node, oracle: GateOracle, transcript: Optional[Transcript], ideal: np.ndarray):
        node.target = self.retry_target(self.base_target(oracle), node.accumulated)
        node.outcomes = self.run_round(node.state, node.target, transcript, ideal)

    def _child(self, node: _Node, branch: int) -> _Node:
        accumulated = [node.target.shifted(i, branch) @ w for i, w in enumerate(node.accumulated)]
        return _Node(state=node.outcomes[branch].state, accumulated=accumulated)

    def _round_limit(self, eps, max_rounds) -> int:
        if max_rounds is not None:
            if max_rounds < 1:
                raise ValueError(f"max_rounds must be >= 1, got {max_rounds}")
            return max_rounds
        if eps is None:
            raise ValueError("Give eps or max_rounds")
        return amplify_rounds(self.p_rm, eps)

    def run_until_success(
        self,
        psi: np.ndarray,
        eps: Optional[float] = None,
        max_rounds: Optional[int] = None,
        seed: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
        oracle: Optional[GateOracle] = None,
        transcript: Optional[Transcript] = None,
    ) -> RunResult:
        """
        Repeat rounds, folding the recovery of each failure into the next target.

        Outcomes are sampled from the exact branch probabilities. When the
        round limit is reached the accumulated action is undone and the input
        is checked to be intact.

        Args:
            psi: Normalized input
            eps: Target failure probability (sets the round limit)
            max_rounds: Explicit round limit (takes precedence over eps)
            seed: Seed for default_rng when rng is not given
            rng: numpy Generator
            oracle: Gate oracle
            transcript: Transcript to extend

        Returns:
            RunResult
        """
        limit = self._round_limit(eps, max_rounds)
        rng = rng if rng is not None else np.random.default_rng(seed)
        oracle = oracle or self.target.oracle()
        transcript = transcript or Transcript(protocol="repmatch")
        state, ideal = self.prepare(psi)
        pad = self.table.d_R
        node = _Node(state=state, accumulated=[np.eye(pad, dtype=complex) for _ in range(self.table.size)])
        last = None

        for round_number in range(1, limit + 1):
            transcript.start_round()
            self._expand(node, oracle, transcript, ideal)
            probabilities = np.array([o.probability for o in node.outcomes])
            branch = int(rng.choice(len(probabilities), p=probabilities / probabilities.sum()))
            transcript.record(sampled_branch=branch, oracle_queries=oracle.queries)
            if branch == 0:
                outcome = node.outcomes[0]
                if outcome.fidelity < 1 - FIDELITY_TOL:
                    raise ProtocolError(f"Success fidelity {outcome.fidelity:.12f} below tolerance", transcript)
                log_event(logger, "repmatch_success", rounds=round_number, qubits=transcript.total_qubits)
                return RunResult(True, round_number, outcome, transcript, oracle.queries)
            last = node.outcomes[branch]
            node = self._child(node, branch)

        recovery = BlockUnitary(table=self.table, blocks=[w.conj().T for w in node.accumulated])
        restored = self.restore(node.state, recovery)
        restored_fidelity = state_fidelity(coerce_state(psi, self.basis.dim), restored)
        if restored_fidelity < 1 - FIDELITY_TOL:
            raise ProtocolError(f"Input not recoverable after {limit} rounds (fidelity {restored_fidelity:.12f})", transcript)
        log_event(logger, "repmatch_exhausted", level=logging.WARNING, rounds=limit, restored_fidelity=restored_fidelity)
        return RunResult(False, limit, last, transcript, oracle.queries, restored_fidelity)

    def success_frequency(
        self,
        psi: np.ndarray,
        trials: int,
        max_rounds: int = 1,
        seed: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        Empirical success rate over seeded trials against 1 - (1 - p)^k.

        The branch tree is expanded lazily and shared across trials, so each
        trial only samples outcomes.

        Args:
            psi: Normalized input
            trials: Number of trials
            max_rounds: Rounds per trial (k)
            seed: Seed for default_rng

        Returns:
            Dict with successes, rate, expected, sigma, within_3_sigma, mean_rounds
        """
        if trials < 1:
            raise ValueError(f"trials must be >= 1, got {trials}")
        rng = np.random.default_rng(seed)
        oracle = self.target.oracle()
        state, ideal = self.prepare(psi)
        pad = self.table.d_R
        root = _Node(state=state, accumulated=[np.eye(pad, dtype=complex) for _ in range(self.table.size)])
        children: Dict[Tuple[int, ...], _Node] = {(): root}

        successes = 0
        rounds_used = 0
        for _ in range(trials):
            path: Tuple[int, ...] = ()
            for round_number in range(1, max_rounds + 1):
                node = children[path]
                if node.outcomes is None:
                    self._expand(node, oracle, None, ideal)
                probabilities = np.array([o.probability for o in node.outcomes])
                branch = int(rng.choice(len(probabilities), p=probabilities / probabilities.sum()))
                if branch == 0:
                    successes += 1
                    break
                path = path + (branch,)
                if path not in children and round_number < max_rounds:
                    children[path] = self._child(node, branch)
            rounds_used += round_number

        expected = 1 - (1 - self.p_rm) ** max_rounds
        sigma = math.sqrt(float(expected * (1 - expected)) / trials)
        rate = successes / trials
        return {
            "trials": trials,
            "successes": successes,
            "rate": rate,
            "expected": float(expected),
            "expected_exact": f"{expected.numerator}/{expected.denominator}",
            "sigma": sigma,
            "within_3_sigma": abs(rate - float(expected)) <= 3 * sigma + 1e-12,
            "mean_rounds": rounds_used / trials,
        }
