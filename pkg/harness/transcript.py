"""
Protocol Transcripts
Ordered record of the quantum messages exchanged between station A and
station B, metered in qubits, plus the outcome of every round.
"""

import json
import uuid
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from utils.exact import ceil_log2

SCHEMA_VERSION = "1.0"

A_TO_B = "A->B"
B_TO_A = "B->A"


@dataclass(frozen=True)
class Message:
    """One inter-station state transfer."""
    direction: str
    register: str
    dimension: int
    round: int = 1

    def __post_init__(self):
        if self.direction not in (A_TO_B, B_TO_A):
            raise ValueError(f"Unknown direction '{self.direction}'")
        if self.dimension < 1:
            raise ValueError(f"Register dimension must be >= 1, got {self.dimension}")

    @property
    def qubits(self) -> int:
        """Bit length of (dimension - 1)."""
        return ceil_log2(self.dimension)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "leg": self.direction,
            "register": self.register,
            "dimension": str(self.dimension),
            "qubits": self.qubits,
            "round": self.round,
        }


@dataclass
class Transcript:
    """
    Messages and per-round outcomes of one session.

    Totals are always recomputed from the message list.
    """
    protocol: str
    session_id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    messages: List[Message] = field(default_factory=list)
    round_records: List[Dict[str, Any]] = field(default_factory=list)
    started_at: str = field(default_factory=lambda: datetime.now().isoformat())
    overflow_probability: float = 0.0

    def send(self, direction: str, register: str, dimension: int) -> Message:
        message = Message(direction=direction, register=register, dimension=int(dimension), round=max(1, self.rounds))
        self.messages.append(message)
        return message

    def start_round(self) -> int:
        self.round_records.append({"round": len(self.round_records) + 1})
        return len(self.round_records)

    def record(self, **fields: Any):
        """Attach fields to the current round."""
        if not self.round_records:
            self.start_round()
        self.round_records[-1].update(fields)

    @property
    def rounds(self) -> int:
        return len(self.round_records)

    @property
    def forward_qubits(self) -> int:
        return sum(m.qubits for m in self.messages if m.direction == A_TO_B)

    @property
    def backward_qubits(self) -> int:
        return sum(m.qubits for m in self.messages if m.direction == B_TO_A)

    @property
    def total_qubits(self) -> int:
        return self.forward_qubits + self.backward_qubits

    def totals(self) -> Dict[str, int]:
        return {
            "forward": self.forward_qubits,
            "backward": self.backward_qubits,
            "total": self.total_qubits,
            "rounds": self.rounds,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "session_id": self.session_id,
            "protocol": self.protocol,
            "started_at": self.started_at,
            "messages": [m.to_dict() for m in self.messages],
            "rounds": self.round_records,
            "totals": self.totals(),
            "overflow_probability": self.overflow_probability,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str)

    def save(self, path):
        path = Path(path)
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json())
