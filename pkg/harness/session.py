"""
Sessions
Drives one protocol between station A and station B as alternating turns,
metering every transfer in a Transcript.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional

import numpy as np

from baselines import retrieve, run_gate_teleport, store
from costmodel import Task, amplify_rounds, cost_report
from repmatch import RepresentationMatcher, TargetSpec, random_state
from schur import (
    SchurBasis,
    SchurBasisCache,
    apply_tensor_power,
    haar_su,
    parse_cycles,
    random_permutation,
)
from utils import LabError, ProtocolError, check_dimension_cap, get_logger, get_settings, log_event
from utils.config import LabSettings
from utils.exact import format_rational
from .oracle import GateOracle
from .transcript import Transcript

logger = get_logger("Harness")

PROTOCOLS = ("repmatch", "teleport", "store-retrieve")


@dataclass
class SessionConfig:
    """Run parameters of a session."""
    seed: Optional[int] = 0
    max_rounds: Optional[int] = None
    eps: Optional[float] = None
    emit: Optional[str] = None


@dataclass
class SessionResult:
    """Protocol outcome together with its transcript."""
    protocol: str
    succeeded: bool
    probability: Any
    fidelity: float
    transcript: Transcript
    oracle_queries: int
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "protocol": self.protocol,
            "succeeded": self.succeeded,
            "probability": str(self.probability),
            "fidelity": self.fidelity,
            "oracle_queries": self.oracle_queries,
            "details": self.details,
            "transcript": self.transcript.to_dict(),
        }


def execute_session(
    protocol: str,
    psi: np.ndarray,
    oracle: GateOracle,
    config: Optional[SessionConfig] = None,
    basis: Optional[SchurBasis] = None,
    cache: Optional[SchurBasisCache] = None,
    settings: Optional[LabSettings] = None,
) -> SessionResult:
    """
    Run one session of the chosen protocol.

    Args:
        protocol: 'repmatch', 'teleport' or 'store-retrieve'
        psi: Station A's normalized input
        oracle: Station B's black box
        config: Seed, round limit / eps, transcript path
        basis: Schur basis for (n, d) (built through the cache if omitted)
        cache: Basis cache
        settings: Lab settings

    Returns:
        SessionResult

    Raises:
        ProtocolError: any failure inside the protocol, with the partial transcript attached
    """
    if protocol not in PROTOCOLS:
        raise ValueError(f"Unknown protocol '{protocol}', expected one of {PROTOCOLS}")
    config = config or SessionConfig()
    settings = settings or get_settings()
    cache = cache or SchurBasisCache(settings=settings, persist=False)
    basis = basis or cache.get(oracle.n, oracle.d)
    transcript = Transcript(protocol=protocol)

    try:
        if protocol == "repmatch":
            target = TargetSpec(oracle.task, oracle.element, oracle.n, oracle.d, m=oracle.copies)
            matcher = RepresentationMatcher(target, basis=basis, cache=cache, settings=settings)
            max_rounds = config.max_rounds if config.max_rounds or config.eps else 1
            run = matcher.run_until_success(
                psi,
                eps=config.eps,
                max_rounds=max_rounds,
                seed=config.seed,
                oracle=oracle,
                transcript=transcript,
            )
            result = SessionResult(
                protocol=protocol,
                succeeded=run.succeeded,
                probability=matcher.p_rm,
                fidelity=run.outcome.fidelity,
                transcript=transcript,
                oracle_queries=oracle.queries,
                details={"rounds": run.rounds, "restored_fidelity": run.restored_fidelity},
            )
        else:
            if oracle.task != Task.UNITARY_ARRAY:
                raise ValueError(f"Protocol '{protocol}' applies to unitary gate arrays only")
            g = oracle.element
            rng = np.random.default_rng(config.seed)
            if protocol == "teleport":
                outcome = run_gate_teleport(psi, g, basis, oracle=oracle, transcript=transcript, settings=settings)
            else:
                transcript.start_round()
                memory = store(g, basis, oracle=oracle)
                reference = apply_tensor_power(g, np.asarray(psi, dtype=complex).reshape(basis.dim, -1), basis.n, basis.d)
                outcome = retrieve(psi, memory, basis, reference=reference, transcript=transcript)
            succeeded = bool(rng.random() < float(outcome.exact_probability))
            result = SessionResult(
                protocol=protocol,
                succeeded=succeeded,
                probability=outcome.exact_probability,
                fidelity=outcome.fidelity,
                transcript=transcript,
                oracle_queries=oracle.queries,
            )
    except ProtocolError as e:
        if e.transcript is None:
            e.transcript = transcript
        raise
    except LabError as e:
        raise ProtocolError(str(e), transcript) from e

    log_event(
        logger,
        "session_complete",
        protocol=protocol,
        session_id=transcript.session_id,
        succeeded=result.succeeded,
        **transcript.totals(),
    )
    if config.emit:
        transcript.save(config.emit)
    return result


def target_element(task: Task, n: int, d: int, g_seed: int = 1, perm: Optional[str] = None):
    """Gate description for a simulation: a Haar SU(d) matrix or a permutation."""
    rng = np.random.default_rng(g_seed)
    if task == Task.PERMUTATION:
        return parse_cycles(perm, n) if perm is not None else random_permutation(n, rng)
    return haar_su(d, rng)


def _statistics(p: Fraction, successes: int, trials: int) -> Dict[str, Any]:
    rate = successes / trials
    sigma = math.sqrt(float(p * (1 - p)) / trials)
    return {
        "trials": trials,
        "successes": successes,
        "rate": rate,
        "expected": float(p),
        "sigma": sigma,
        "within_3_sigma": abs(rate - float(p)) <= 3 * sigma + 1e-12,
    }


def simulate(
    protocol: str,
    task,
    n: int,
    d: int,
    trials: int = 1000,
    seed: int = 0,
    g_seed: int = 1,
    perm: Optional[str] = None,
    eps: Optional[float] = None,
    max_rounds: Optional[int] = None,
    emit: Optional[str] = None,
    cache: Optional[SchurBasisCache] = None,
    settings: Optional[LabSettings] = None,
) -> Dict[str, Any]:
    """
    One metered session plus a success-frequency estimate over `trials` runs.

    Args:
        protocol: 'repmatch', 'teleport' or 'store-retrieve'
        task: Task or task name
        n: Number of gate copies
        d: Local dimension
        trials: Number of simulated runs for the frequency estimate
        seed: Seed for inputs and measurement outcomes
        g_seed: Seed for the gate (ignored when `perm` is given)
        perm: Permutation in 0-indexed cycle notation
        eps: Target failure probability (repmatch only)
        max_rounds: Round limit (repmatch only)
        emit: Path for the session transcript JSON
        cache: Basis cache
        settings: Lab settings

    Returns:
        JSON-ready summary with a 'statistics' block
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    settings = settings or get_settings()
    task = Task.parse(task)
    if protocol not in PROTOCOLS:
        raise ValueError(f"Unknown protocol '{protocol}', expected one of {PROTOCOLS}")
    if protocol != "repmatch" and task != Task.UNITARY_ARRAY:
        raise ValueError(f"Protocol '{protocol}' applies to unitary gate arrays only")
    check_dimension_cap(n, d, settings)

    cache = cache or SchurBasisCache(settings=settings)
    rng = np.random.default_rng(seed)
    element = target_element(task, n, d, g_seed=g_seed, perm=perm)
    psi = random_state(d ** n, rng)
    config = SessionConfig(seed=seed, max_rounds=max_rounds, eps=eps, emit=emit)
    oracle = GateOracle(task, element, n, d)
    session = execute_session(protocol, psi, oracle, config, cache=cache, settings=settings)
    summary: Dict[str, Any] = {"protocol": protocol, "task": task.value, "n": n, "d": d}

    if protocol == "repmatch":
        matcher = RepresentationMatcher(
            TargetSpec(task, element, n, d), basis=cache.get(n, d), cache=cache, settings=settings
        )
        rounds = max_rounds or (amplify_rounds(matcher.p_rm, eps) if eps else 1)
        summary.update({
            "num_irreps": matcher.table.size,
            "p_rm": format_rational(matcher.p_rm),
            "rounds_per_trial": rounds,
            "c_rm": cost_report(n, d, task).c_rm,
            "statistics": matcher.success_frequency(psi, trials, max_rounds=rounds, seed=seed),
        })
    else:
        p = Fraction(session.probability)
        successes = int(np.sum(rng.random(trials) < float(p)))
        summary.update({
            "exact_probability": format_rational(p),
            "statistics": _statistics(p, successes, trials),
        })

    summary["session"] = session.to_dict()
    log_event(logger, "simulation_complete", protocol=protocol, task=task.value, n=n, d=d,
              passed=summary["statistics"]["within_3_sigma"])
    return summary
