"""Typed behavioral plans generated to serve the current need."""

from __future__ import annotations

from dataclasses import dataclass, field

STEP_TYPES = ("mobility", "social", "economy", "other")


@dataclass
class PlanStep:
    type: str
    intention: str
    completed: bool = False
    evaluation: str = ""

    def __post_init__(self):
        if self.type not in STEP_TYPES:
            raise ValueError(f"step type must be one of {STEP_TYPES}, got {self.type!r}")
        if not self.intention.strip():
            raise ValueError("step intention must be non-empty")

    def to_dict(self) -> dict:
        return {
            "type": self.type,
            "intention": self.intention,
            "completed": self.completed,
            "evaluation": self.evaluation,
        }


@dataclass
class Plan:
    target_need: str
    target: str
    steps: list[PlanStep]
    cursor: int = 0
    degraded: bool = False  # set when this is the fallback plan after contract failures

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a plan needs at least one step")

    @property
    def current_step(self) -> PlanStep | None:
        if 0 <= self.cursor < len(self.steps):
            return self.steps[self.cursor]
        return None

    @property
    def finished(self) -> bool:
        return self.cursor >= len(self.steps)

    def complete_current(self, evaluation: str) -> None:
        step = self.steps[self.cursor]
        step.completed = True
        step.evaluation = evaluation
        self.cursor += 1

    def abandon(self, reason: str) -> None:
        for step in self.steps[self.cursor:]:
            step.completed = False
            if not step.evaluation:
                step.evaluation = reason
        self.cursor = len(self.steps)

    def evaluations_text(self) -> str:
        lines = []
        for step in self.steps:
            state = "done" if step.completed else "not done"
            note = f" - {step.evaluation}" if step.evaluation else ""
            lines.append(f"[{state}] ({step.type}) {step.intention}{note}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "target_need": self.target_need,
            "target": self.target,
            "steps": [s.to_dict() for s in self.steps],
            "cursor": self.cursor,
            "degraded": self.degraded,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "Plan":
        return cls(
            target_need=raw["target_need"],
            target=raw["target"],
            steps=[PlanStep(**s) for s in raw["steps"]],
            cursor=raw.get("cursor", 0),
            degraded=raw.get("degraded", False),
        )
