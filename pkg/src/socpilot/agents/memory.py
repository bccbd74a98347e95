"""Append-only memory stream with a rolling daily digest.

Surveys and interviews read memory but never write it; the engine verifies
that with content hashes around every data-collection call.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timedelta

MEMORY_KINDS = ("incident", "behavior", "message", "reflection")

# prompts get at most this many recent entries, newest last
DIGEST_MAX_ENTRIES = 40
DIGEST_WINDOW_HOURS = 24.0


@dataclass(frozen=True)
class MemoryEntry:
    sim_time: str  # ISO timestamp
    kind: str
    text: str

    def __post_init__(self):
        if self.kind not in MEMORY_KINDS:
            raise ValueError(f"unknown memory kind {self.kind!r}")


@dataclass
class MemoryStream:
    entries: list[MemoryEntry] = field(default_factory=list)
    day_digest: str = ""

    def append(self, sim_time: str, kind: str, text: str) -> None:
        self.entries.append(MemoryEntry(sim_time, kind, text))

    def recent(self, now: datetime, window_hours: float = DIGEST_WINDOW_HOURS) -> list[MemoryEntry]:
        cutoff = now - timedelta(hours=window_hours)
        picked = [e for e in self.entries if datetime.fromisoformat(e.sim_time) >= cutoff]
        return picked[-DIGEST_MAX_ENTRIES:]

    def refresh_digest(self, now: datetime) -> str:
        lines = [f"[{e.sim_time}] ({e.kind}) {e.text}" for e in self.recent(now)]
        self.day_digest = "\n".join(lines) if lines else "nothing notable"
        return self.day_digest

    def incidents_between(self, start: datetime, end: datetime) -> list[MemoryEntry]:
        out = []
        for entry in self.entries:
            when = datetime.fromisoformat(entry.sim_time)
            if start <= when < end:
                out.append(entry)
        return out

    def content_hash(self) -> str:
        payload = json.dumps(
            [[e.sim_time, e.kind, e.text] for e in self.entries] + [self.day_digest],
            ensure_ascii=False,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def to_dict(self) -> dict:
        return {
            "entries": [[e.sim_time, e.kind, e.text] for e in self.entries],
            "day_digest": self.day_digest,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "MemoryStream":
        stream = cls(day_digest=raw.get("day_digest", ""))
        for sim_time, kind, text in raw.get("entries", []):
            stream.entries.append(MemoryEntry(sim_time, kind, text))
        return stream
