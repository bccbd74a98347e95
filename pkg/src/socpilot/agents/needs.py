"""Hierarchical needs: decay, threshold selection, and preemption.

Priority is fixed: hungry > tired > safe > social, with "whatever" as the
resting state when nothing is urgent. The most urgent unmet need wins even
when a lower-priority need has a larger deficit.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

NEED_PRIORITY = ("hungry", "tired", "safe", "social")
WHATEVER = "whatever"

SATISFACTION_FIELD = {
    "hungry": "hunger_satisfaction",
    "tired": "energy_satisfaction",
    "safe": "safety_satisfaction",
    "social": "social_satisfaction",
}

# prompt-facing names, e.g. "hunger satisfaction"
PROMPT_FIELD = {
    "hungry": "hunger satisfaction",
    "tired": "energy satisfaction",
    "safe": "safety satisfaction",
    "social": "social satisfaction",
}


def priority_rank(need: str) -> int:
    return NEED_PRIORITY.index(need) if need in NEED_PRIORITY else len(NEED_PRIORITY)


@dataclass
class NeedsParams:
    thresholds: dict[str, float] = field(
        default_factory=lambda: {"hungry": 0.3, "tired": 0.3, "safe": 0.5, "social": 0.5}
    )
    decay_per_hour: dict[str, float] = field(
        default_factory=lambda: {"hungry": 0.08, "tired": 0.05, "safe": 0.02, "social": 0.03}
    )

    def __post_init__(self):
        for need, rate in self.decay_per_hour.items():
            if rate < 0:
                raise ValueError(f"decay rate for {need} must be >= 0")


@dataclass
class NeedsState:
    hunger_satisfaction: float = 1.0
    energy_satisfaction: float = 1.0
    safety_satisfaction: float = 1.0
    social_satisfaction: float = 1.0
    current_need: str = WHATEVER

    def satisfaction(self, need: str) -> float:
        return getattr(self, SATISFACTION_FIELD[need])

    def set_satisfaction(self, need: str, value: float) -> None:
        setattr(self, SATISFACTION_FIELD[need], max(0.0, min(1.0, value)))

    def clamped(self) -> "NeedsState":
        return replace(
            self,
            hunger_satisfaction=max(0.0, min(1.0, self.hunger_satisfaction)),
            energy_satisfaction=max(0.0, min(1.0, self.energy_satisfaction)),
            safety_satisfaction=max(0.0, min(1.0, self.safety_satisfaction)),
            social_satisfaction=max(0.0, min(1.0, self.social_satisfaction)),
        )

    def to_dict(self) -> dict:
        return {
            "hunger_satisfaction": self.hunger_satisfaction,
            "energy_satisfaction": self.energy_satisfaction,
            "safety_satisfaction": self.safety_satisfaction,
            "social_satisfaction": self.social_satisfaction,
            "current_need": self.current_need,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "NeedsState":
        return cls(**raw)


def select_need(needs: NeedsState, thresholds: dict[str, float]) -> str:
    for need in NEED_PRIORITY:
        if needs.satisfaction(need) < thresholds.get(need, 0.0):
            return need
    return WHATEVER


def evaluate_needs(needs: NeedsState, params: NeedsParams, elapsed_hours: float) -> NeedsState:
    """Decay each satisfaction by rate*elapsed (floored at 0), then reselect."""
    updated = NeedsState(
        hunger_satisfaction=needs.hunger_satisfaction,
        energy_satisfaction=needs.energy_satisfaction,
        safety_satisfaction=needs.safety_satisfaction,
        social_satisfaction=needs.social_satisfaction,
    )
    for need in NEED_PRIORITY:
        rate = params.decay_per_hour.get(need, 0.0)
        updated.set_satisfaction(need, needs.satisfaction(need) - rate * elapsed_hours)
    updated.current_need = select_need(updated, params.thresholds)
    return updated


def preemption_target(needs: NeedsState, params: NeedsParams, plan_target: str) -> str | None:
    """Need that should interrupt a plan for ``plan_target``, if any.

    Only a strictly higher-priority unmet need preempts; "whatever" plans
    yield to any unmet need.
    """
    limit = priority_rank(plan_target)
    for need in NEED_PRIORITY:
        if priority_rank(need) >= limit:
            break
        if needs.satisfaction(need) < params.thresholds.get(need, 0.0):
            return need
    return None
