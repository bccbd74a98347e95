"""Discrete simulation clock.

Two cadences are supported: fixed-length minute ticks for day-scale
experiments, and calendar-month ticks for long-horizon economic runs where
the intra-day loop would add nothing but cost.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timedelta


def _add_months(moment: datetime, months: int) -> datetime:
    month_index = moment.month - 1 + months
    year = moment.year + month_index // 12
    month = month_index % 12 + 1
    return moment.replace(year=year, month=month, day=1)


@dataclass
class TickEvents:
    tick: int
    sim_time: datetime
    starts_new_day: bool
    starts_new_month: bool
    day_index: int   # 1-based simulation day
    month_index: int  # 1-based simulation month


@dataclass
class SimClock:
    start: datetime
    tick_minutes: int = 30
    monthly: bool = False
    tick: int = field(default=-1)

    def __post_init__(self):
        if not self.monthly and self.tick_minutes <= 0:
            raise ValueError("tick_minutes must be positive")

    @property
    def sim_time(self) -> datetime:
        return self.time_at(max(self.tick, 0))

    def time_at(self, tick: int) -> datetime:
        if self.monthly:
            return _add_months(self.start, tick)
        return self.start + timedelta(minutes=self.tick_minutes * tick)

    def day_index_at(self, tick: int) -> int:
        if self.monthly:
            return tick + 1
        return (self.time_at(tick).date() - self.start.date()).days + 1

    @property
    def day_index(self) -> int:
        return self.day_index_at(max(self.tick, 0))

    @property
    def hours_per_tick(self) -> float:
        if self.monthly:
            return 30.0 * 24.0
        return self.tick_minutes / 60.0

    def ticks_per_day(self) -> int:
        if self.monthly:
            return 1
        return (24 * 60) // self.tick_minutes

    def advance(self) -> TickEvents:
        previous = self.tick
        self.tick += 1
        now = self.time_at(self.tick)
        if self.monthly:
            return TickEvents(
                tick=self.tick,
                sim_time=now,
                starts_new_day=True,
                starts_new_month=True,
                day_index=self.tick + 1,
                month_index=self.tick + 1,
            )
        then = self.time_at(previous) if previous >= 0 else None
        new_day = then is None or now.date() != then.date()
        new_month = then is None or (now.year, now.month) != (then.year, then.month)
        months = (now.year - self.start.year) * 12 + (now.month - self.start.month) + 1
        return TickEvents(
            tick=self.tick,
            sim_time=now,
            starts_new_day=new_day,
            starts_new_month=new_month,
            day_index=self.day_index_at(self.tick),
            month_index=months,
        )

    def state(self) -> dict:
        return {"tick": self.tick}

    def restore(self, state: dict) -> None:
        self.tick = int(state["tick"])
