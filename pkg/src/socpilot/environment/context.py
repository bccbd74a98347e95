"""Global environment context (weather, events) on a per-day schedule."""

from __future__ import annotations

from dataclasses import dataclass, field

from socpilot.errors import OverlappingSchedule


@dataclass(frozen=True)
class GlobalContext:
    weather: str = "clear"
    temperature: float = 22.0
    event_prompt: str = ""
    phase_label: str = ""

    def to_dict(self) -> dict:
        return {
            "weather": self.weather,
            "temperature": self.temperature,
            "event_prompt": self.event_prompt,
            "phase_label": self.phase_label,
        }


@dataclass
class GlobalSchedule:
    """Context changes applied at the first tick of each scheduled day."""

    default: GlobalContext = field(default_factory=GlobalContext)
    _by_day: dict[int, GlobalContext] = field(default_factory=dict)
    _current: GlobalContext | None = None

    def set_schedule(self, entries: list[tuple[int, GlobalContext]]) -> None:
        seen: dict[int, GlobalContext] = {}
        for day, context in entries:
            if day in seen:
                raise OverlappingSchedule(f"two contexts scheduled for day {day}")
            seen[day] = context
        self._by_day = seen

    def on_day_start(self, day_index: int) -> GlobalContext:
        if day_index in self._by_day:
            self._current = self._by_day[day_index]
        elif self._current is None:
            self._current = self.default
        return self._current

    @property
    def current(self) -> GlobalContext:
        return self._current or self.default

    def state(self) -> dict:
        return {"current_day_context": self.current.to_dict()}

    def restore(self, state: dict) -> None:
        self._current = GlobalContext(**state["current_day_context"])
