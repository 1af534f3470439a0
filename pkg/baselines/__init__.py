"""
Baselines Module
Gate-teleportation compression and storage-and-retrieval of gate arrays
"""

from .gate_teleport import (
    TeleportResource,
    TeleportOutcome,
    NaiveTeleportCost,
    naive_teleport_cost,
    build_teleport_resource,
    bell_effect,
    run_gate_teleport,
)
from .storage_retrieval import GateMemory, RetrievalOutcome, store, retrieve

__all__ = [
    'TeleportResource',
    'TeleportOutcome',
    'NaiveTeleportCost',
    'naive_teleport_cost',
    'build_teleport_resource',
    'bell_effect',
    'run_gate_teleport',
    'GateMemory',
    'RetrievalOutcome',
    'store',
    'retrieve',
]
