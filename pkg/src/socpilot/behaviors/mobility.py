"""Mobility: model-chosen place type, then gravity-model destination choice.

The destination sampler weights each candidate by attractiveness times
distance to the power -alpha (distance floored to avoid the self-distance
singularity), normalized over the candidates inside the travel radius.
"""

from __future__ import annotations

import difflib
import logging
from dataclasses import dataclass, field
from random import Random

from socpilot.environment.geo import GeoIndex, POI, haversine_distance
from socpilot.errors import ContractViolation, NoCandidateInRadius
from socpilot.gateway import CompletionRequest, FieldSpec, JsonContract

log = logging.getLogger(__name__)

RADIUS_MIN_M = 3000
RADIUS_MAX_M = 200000
DEFAULT_RADIUS_M = 10000  # the fallback the radius prompt itself illustrates

GRAVITY_ALPHA = 2.0
GRAVITY_MIN_DISTANCE_M = 100.0


@dataclass
class MobilityDecision:
    place_type: str
    radius_m: int
    chosen_poi: str
    choice_probabilities: dict[str, float] = field(default_factory=dict)


def normalize_place_type(raw: str, categories: list[str]) -> str | None:
    """Case-insensitive exact, then substring, then closest-string match."""
    cleaned = raw.strip().strip('."!').lower()
    by_lower = {c.lower(): c for c in categories}
    if cleaned in by_lower:
        return by_lower[cleaned]
    for lower, original in by_lower.items():
        if lower in cleaned or cleaned in lower:
            return original
    close = difflib.get_close_matches(cleaned, list(by_lower), n=1, cutoff=0.6)
    return by_lower[close[0]] if close else None


def select_place_type(gateway, agent, plan_text: str, intention: str,
                      other_information: str, categories: list[str]) -> str:
    """Returned category always comes from the catalog; a lone category wins outright."""
    if not categories:
        raise NoCandidateInRadius("place catalog is empty")
    if len(categories) == 1:
        return categories[0]
    bindings = {
        "plan": plan_text,
        "intention": intention,
        "other information": other_information,
        "poi category": "[" + ", ".join(categories) + "]",
    }
    contract = JsonContract([FieldSpec("place type", "choice", choices=tuple(categories))])
    request = CompletionRequest("place_type", bindings, temperature=agent.temperature)
    try:
        return gateway.complete_structured(request, contract=contract)["place type"]
    except ContractViolation:
        pass
    # retry budget spent; fall back to nearest-string normalization of the raw reply
    raw = gateway.complete_structured(request)  # free-text parse of the same response
    normalized = normalize_place_type(raw.get("place type", raw.get("text", "")), categories)
    if normalized is None:
        raise ContractViolation(f"cannot map response to a known place type from {categories}")
    return normalized


def determine_radius(gateway, agent, weather: str, temperature: str, other_info: str) -> int:
    bindings = {
        "weather": weather,
        "temperature": temperature,
        "emotion types": agent.emotion_types(),
        "thought": agent.thought.display(),
        "other info": other_info,
    }
    request = CompletionRequest("radius", bindings, temperature=agent.temperature)
    try:
        return int(gateway.complete_structured(request)["radius"])
    except ContractViolation:
        log.warning("%s: radius decision failed, defaulting to %d m", agent.agent_id, DEFAULT_RADIUS_M)
        return DEFAULT_RADIUS_M


def gravity_probabilities(
    origin: tuple[float, float],
    candidates: list[POI],
    *,
    alpha: float = GRAVITY_ALPHA,
    min_distance_m: float = GRAVITY_MIN_DISTANCE_M,
) -> dict[str, float]:
    weights = {}
    for poi in candidates:
        distance = max(haversine_distance(origin, poi.location), min_distance_m)
        weights[poi.poi_id] = poi.attractiveness * distance ** (-alpha)
    total = sum(weights.values())
    if total <= 0.0:
        # all-zero attractiveness degenerates to a uniform draw
        return {poi.poi_id: 1.0 / len(candidates) for poi in candidates}
    return {poi_id: w / total for poi_id, w in weights.items()}


def gravity_select(
    origin: tuple[float, float],
    category: str,
    radius_m: float,
    geo_index: GeoIndex,
    rng: Random,
    *,
    alpha: float = GRAVITY_ALPHA,
    min_distance_m: float = GRAVITY_MIN_DISTANCE_M,
) -> tuple[POI, dict[str, float]]:
    """Sample a destination of ``category`` within ``radius_m`` of origin."""
    candidates = geo_index.within_radius(origin, category, radius_m)
    if not candidates:
        raise NoCandidateInRadius(f"no {category!r} candidate within {radius_m:.0f} m")
    candidates = sorted(candidates, key=lambda p: p.poi_id)
    probabilities = gravity_probabilities(
        origin, candidates, alpha=alpha, min_distance_m=min_distance_m
    )
    point = rng.random()
    cumulative = 0.0
    chosen = candidates[-1]
    for poi in candidates:
        cumulative += probabilities[poi.poi_id]
        if point <= cumulative:
            chosen = poi
            break
    return chosen, probabilities


def choose_destination(
    origin: tuple[float, float],
    category: str,
    radius_m: float,
    geo_index: GeoIndex,
    rng: Random,
    **kwargs,
) -> tuple[POI, dict[str, float]]:
    """Gravity selection with the one permitted radius widening."""
    try:
        return gravity_select(origin, category, radius_m, geo_index, rng, **kwargs)
    except NoCandidateInRadius:
        if radius_m >= RADIUS_MAX_M:
            raise
        log.debug("widening search radius to %d m for %r", RADIUS_MAX_M, category)
        return gravity_select(origin, category, RADIUS_MAX_M, geo_index, rng, **kwargs)
