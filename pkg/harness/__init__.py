"""
Harness Module
Two-station message metering, transcripts and the black-box gate oracle
"""

from .transcript import Message, Transcript, A_TO_B, B_TO_A
from .oracle import GateOracle

__all__ = [
    'Message',
    'Transcript',
    'A_TO_B',
    'B_TO_A',
    'GateOracle',
]
