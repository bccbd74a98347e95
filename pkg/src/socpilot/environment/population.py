"""Demographic population sampling from census-block-group style marginals.

Attributes are drawn independently per block group (joint distributions are
not available at this granularity); home locations jitter uniformly within
500 m of the block-group centroid. Everything is a pure function of the rng.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from random import Random

from socpilot.errors import SchemaError
from socpilot.agents.profile import AgentProfile

MARGINAL_TOLERANCE = 1e-6

_FIRST_NAMES = (
    "Emily", "Kevin", "Ruth", "Charles", "Rachael", "Matthew", "Nicole", "Debra",
    "Aaron", "Beth", "Carlos", "Dana", "Elena", "Frank", "Grace", "Hassan",
    "Irene", "Jamal", "Karen", "Luis", "Mona", "Nathan", "Olga", "Pete",
    "Quinn", "Rosa", "Sam", "Tina", "Umar", "Vera", "Wen", "Yara",
)
_LAST_NAMES = (
    "Smith", "Nunez", "Anderson", "Nguyen", "White", "Dyer", "Bowen", "Pearson",
    "Jones", "Garcia", "Lee", "Patel", "Okafor", "Brown", "Kim", "Lopez",
    "Murphy", "Silva", "Chen", "Ali", "Novak", "Reed", "Santos", "Weber",
)
_PERSONALITIES = (
    "outgoing and optimistic", "reserved and analytical", "warm and patient",
    "ambitious and direct", "easygoing and curious", "cautious and practical",
    "creative and restless", "steady and loyal",
)


@dataclass(frozen=True)
class CBGProfile:
    """One census block group: population weight, centroid, attribute marginals."""

    cbg_id: str
    population: int
    centroid: tuple[float, float]
    marginals: dict[str, dict[str, float]] = field(default_factory=dict)

    def __post_init__(self):
        for attr, dist in self.marginals.items():
            total = sum(dist.values())
            if abs(total - 1.0) > MARGINAL_TOLERANCE:
                raise ValueError(f"marginal {attr!r} sums to {total}, expected 1")


def load_cbgs(path: str | Path) -> list[CBGProfile]:
    """CSV with cbg_id,population,lat,lon plus attr:value fraction columns."""
    cbgs = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        required = ["cbg_id", "population", "lat", "lon"]
        missing = [c for c in required if c not in (reader.fieldnames or [])]
        if missing:
            raise SchemaError(1, missing[0], "missing required column")
        marginal_cols = [c for c in reader.fieldnames if ":" in c]
        for row in reader:
            line = reader.line_num
            try:
                population = int(row["population"])
                lat, lon = float(row["lat"]), float(row["lon"])
            except ValueError as exc:
                raise SchemaError(line, "population", str(exc)) from None
            marginals: dict[str, dict[str, float]] = {}
            for col in marginal_cols:
                attr, value = col.split(":", 1)
                try:
                    fraction = float(row[col])
                except ValueError:
                    raise SchemaError(line, col, f"not a fraction: {row[col]!r}") from None
                marginals.setdefault(attr, {})[value] = fraction
            try:
                cbgs.append(
                    CBGProfile(
                        cbg_id=row["cbg_id"],
                        population=population,
                        centroid=(lat, lon),
                        marginals=marginals,
                    )
                )
            except ValueError as exc:
                raise SchemaError(line, "marginals", str(exc)) from None
    return cbgs


def _weighted_choice(rng: Random, items: list, weights: list[float]):
    total = sum(weights)
    point = rng.random() * total
    cumulative = 0.0
    for item, weight in zip(items, weights):
        cumulative += weight
        if point <= cumulative:
            return item
    return items[-1]


def _sample_marginal(rng: Random, dist: dict[str, float]) -> str:
    values = sorted(dist)
    return _weighted_choice(rng, values, [dist[v] for v in values])


_AGE_BAND_RE = re.compile(r"^(\d+)\s*-\s*(\d+)$")


def _age_from_band(rng: Random, band: str) -> int:
    match = _AGE_BAND_RE.match(band.strip())
    if not match:
        return rng.randint(25, 60)
    low, high = int(match.group(1)), int(match.group(2))
    return rng.randint(low, high)


def _jitter(rng: Random, centroid: tuple[float, float], radius_m: float = 500.0) -> tuple[float, float]:
    angle = rng.random() * 2 * math.pi
    distance = radius_m * math.sqrt(rng.random())
    dlat = distance * math.cos(angle) / 111_320.0
    dlon = distance * math.sin(angle) / (111_320.0 * max(0.1, math.cos(math.radians(centroid[0]))))
    return (centroid[0] + dlat, centroid[1] + dlon)


def sample_population(
    cbgs: list[CBGProfile],
    n: int,
    rng: Random,
    *,
    city: str = "Columbia",
) -> list[AgentProfile]:
    """Draw n profiles; block group chosen proportional to population."""
    if n <= 0:
        raise ValueError("n must be positive")
    if not cbgs:
        raise ValueError("no block groups to sample from")
    weights = [float(c.population) for c in cbgs]
    profiles = []
    for i in range(n):
        cbg = _weighted_choice(rng, cbgs, weights)
        attrs = {attr: _sample_marginal(rng, dist) for attr, dist in sorted(cbg.marginals.items())}
        name = f"{rng.choice(_FIRST_NAMES)} {rng.choice(_LAST_NAMES)}"
        profiles.append(
            AgentProfile(
                agent_id=f"a{i:04d}",
                name=name,
                age=_age_from_band(rng, attrs.get("age", "25-60")),
                gender=attrs.get("gender", "female"),
                education=attrs.get("education", "high school"),
                occupation=attrs.get("occupation", "clerk"),
                personality=rng.choice(_PERSONALITIES),
                city=city,
                home=_jitter(rng, cbg.centroid),
                cbg_id=cbg.cbg_id,
                attributes=attrs,
            )
        )
    return profiles
