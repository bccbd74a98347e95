"""Inter-agent message bus with strict tick-boundary delivery."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SocialMessage:
    sender: str
    recipient: str
    mode: str  # online | offline
    text: str
    sim_time: str
    stance: int | None = None
    depth: int = 0  # reply chains are depth-limited
    seq: int = -1   # assigned by the bus; orders delivery deterministically

    def __post_init__(self):
        if self.mode not in ("online", "offline"):
            raise ValueError(f"mode must be online or offline, got {self.mode!r}")
        if len(self.text) > 100:
            raise ValueError("message text exceeds 100 characters")

    def to_dict(self) -> dict:
        return {
            "sender": self.sender,
            "recipient": self.recipient,
            "mode": self.mode,
            "text": self.text,
            "sim_time": self.sim_time,
            "stance": self.stance,
            "depth": self.depth,
            "seq": self.seq,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "SocialMessage":
        return cls(**raw)


@dataclass
class MessageBus:
    """Messages sent during tick t become visible no earlier than t+1."""

    _pending: dict[int, list[SocialMessage]] = field(default_factory=dict)
    _next_seq: int = 0

    def send(self, message: SocialMessage, current_tick: int) -> None:
        message.seq = self._next_seq
        self._next_seq += 1
        self._pending.setdefault(current_tick + 1, []).append(message)

    def due(self, tick: int) -> list[SocialMessage]:
        messages = self._pending.pop(tick, [])
        messages.sort(key=lambda m: m.seq)
        return messages

    def pending_count(self) -> int:
        return sum(len(v) for v in self._pending.values())

    def state(self) -> dict:
        return {
            "next_seq": self._next_seq,
            "pending": {str(t): [m.to_dict() for m in msgs] for t, msgs in self._pending.items()},
        }

    def restore(self, state: dict) -> None:
        self._next_seq = int(state["next_seq"])
        self._pending = {
            int(t): [SocialMessage.from_dict(m) for m in msgs]
            for t, msgs in state["pending"].items()
        }
