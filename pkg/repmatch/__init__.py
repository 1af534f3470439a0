"""
RepMatch Module
Representation matching: block states, station B targets, matching test and recovery
"""

from .block_state import (
    BlockState,
    RegisterState,
    decompose_input,
    merge_registers,
    split_memory_index,
    state_fidelity,
    random_state,
)
from .protocol import (
    TargetSpec,
    BlockTarget,
    BlockUnitary,
    ProtocolOutcome,
    RunResult,
    RepresentationMatcher,
)

__all__ = [
    'BlockState',
    'RegisterState',
    'decompose_input',
    'merge_registers',
    'split_memory_index',
    'state_fidelity',
    'random_state',
    'TargetSpec',
    'BlockTarget',
    'BlockUnitary',
    'ProtocolOutcome',
    'RunResult',
    'RepresentationMatcher',
]
