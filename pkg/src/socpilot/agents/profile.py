"""Participant identity (fixed) and status (dynamic)."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict


@dataclass(frozen=True)
class AgentProfile:
    """Fixed identity; frozen because profiles must not change mid-run."""

    agent_id: str
    name: str
    age: int
    gender: str
    education: str
    occupation: str
    personality: str
    city: str
    home: tuple[float, float] = (0.0, 0.0)
    cbg_id: str = ""
    attributes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.age <= 0:
            raise ValueError("age must be positive")

    def description(self) -> str:
        return (
            f"You are {self.name}, a {self.age}-year-old {self.gender} living in {self.city}. "
            f"Education: {self.education}. Occupation: {self.occupation}. "
            f"Personality: {self.personality}."
        )

    def to_dict(self) -> dict:
        data = asdict(self)
        data["home"] = list(self.home)
        return data

    @classmethod
    def from_dict(cls, raw: dict) -> "AgentProfile":
        raw = dict(raw)
        raw["home"] = tuple(raw.get("home", (0.0, 0.0)))
        return cls(**raw)


@dataclass
class Friendship:
    agent_id: str
    strength: int = 50

    def adjust(self, delta: int) -> None:
        self.strength = max(0, min(100, self.strength + delta))


@dataclass
class AgentStatus:
    """Everything about an agent that legitimately changes during a run."""

    savings: float = 0.0
    hourly_wage: float = 15.0
    job: str = ""
    consumption_level: str = "middle"
    location_label: str = "home"
    location: tuple[float, float] = (0.0, 0.0)
    friends: list[Friendship] = field(default_factory=list)
    last_tax_paid: float = 0.0
    last_consumption: float = 0.0
    last_support_received: float = 0.0  # redistribution + any direct transfer, last month
    allow_debt: bool = False

    def friend(self, agent_id: str) -> Friendship | None:
        return next((f for f in self.friends if f.agent_id == agent_id), None)

    def deposit(self, amount: float) -> None:
        self.savings += amount
        if not self.allow_debt and self.savings < 0:
            self.savings = 0.0

    def summary(self) -> str:
        lines = [
            f"Job: {self.job or 'none'}",
            f"Hourly wage: ${self.hourly_wage:.2f}",
            f"Savings: ${self.savings:.2f}",
            f"Consumption level: {self.consumption_level}",
            f"Last month consumption: ${self.last_consumption:.2f}",
            f"Last tax paid: ${self.last_tax_paid:.2f}",
            f"Monthly public support received: ${self.last_support_received:.2f}",
            f"Friends: {len(self.friends)}",
        ]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "savings": self.savings,
            "hourly_wage": self.hourly_wage,
            "job": self.job,
            "consumption_level": self.consumption_level,
            "location_label": self.location_label,
            "location": list(self.location),
            "friends": [{"agent_id": f.agent_id, "strength": f.strength} for f in self.friends],
            "last_tax_paid": self.last_tax_paid,
            "last_consumption": self.last_consumption,
            "last_support_received": self.last_support_received,
            "allow_debt": self.allow_debt,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "AgentStatus":
        raw = dict(raw)
        raw["location"] = tuple(raw.get("location", (0.0, 0.0)))
        raw["friends"] = [Friendship(**f) for f in raw.get("friends", [])]
        return cls(**raw)
