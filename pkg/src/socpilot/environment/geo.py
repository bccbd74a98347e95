"""Geospatial primitives: haversine distance, POIs, and the category index."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from socpilot.errors import SchemaError

EARTH_RADIUS_M = 6_371_000.0


def haversine_distance(p1: tuple[float, float], p2: tuple[float, float]) -> float:
    """Great-circle distance in meters between (lat, lon) points."""
    lat1, lon1 = math.radians(p1[0]), math.radians(p1[1])
    lat2, lon2 = math.radians(p2[0]), math.radians(p2[1])
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    a = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return 2 * EARTH_RADIUS_M * math.asin(math.sqrt(a))


@dataclass(frozen=True)
class POI:
    poi_id: str
    name: str
    category: str
    location: tuple[float, float]
    attractiveness: float

    def __post_init__(self):
        if self.attractiveness < 0:
            raise ValueError("attractiveness must be non-negative")


class GeoIndex:
    """POIs grouped by category with radius queries.

    Linear scan per query; fixture-scale catalogs make anything fancier
    premature.
    """

    def __init__(self, pois: list[POI] | None = None):
        self._pois: list[POI] = []
        self._by_category: dict[str, list[POI]] = {}
        for poi in pois or []:
            self.add(poi)

    def add(self, poi: POI) -> None:
        self._pois.append(poi)
        self._by_category.setdefault(poi.category, []).append(poi)

    def __len__(self) -> int:
        return len(self._pois)

    @property
    def categories(self) -> list[str]:
        return sorted(self._by_category)

    def all(self) -> list[POI]:
        return list(self._pois)

    def get(self, poi_id: str) -> POI | None:
        return next((p for p in self._pois if p.poi_id == poi_id), None)

    def within_radius(self, origin: tuple[float, float], category: str, radius_m: float) -> list[POI]:
        return [
            poi
            for poi in self._by_category.get(category, [])
            if haversine_distance(origin, poi.location) <= radius_m
        ]


POI_COLUMNS = ["poi_id", "name", "category", "lat", "lon", "attractiveness"]


def load_pois(path: str | Path) -> GeoIndex:
    """Load the documented POI CSV; invalid rows raise with their line number."""
    index = GeoIndex()
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return index
        missing = [c for c in POI_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise SchemaError(1, missing[0], "missing required column")
        for row in reader:
            line = reader.line_num
            try:
                lat = float(row["lat"])
                lon = float(row["lon"])
            except ValueError:
                raise SchemaError(line, "lat", f"not a coordinate: {row['lat']!r}/{row['lon']!r}") from None
            if not (-90 <= lat <= 90 and -180 <= lon <= 180):
                raise SchemaError(line, "lat", f"coordinate out of range: {lat}, {lon}")
            try:
                attractiveness = float(row["attractiveness"])
            except ValueError:
                raise SchemaError(line, "attractiveness", f"not a number: {row['attractiveness']!r}") from None
            if attractiveness < 0:
                raise SchemaError(line, "attractiveness", "must be non-negative")
            if not row["poi_id"]:
                raise SchemaError(line, "poi_id", "must be non-empty")
            index.add(
                POI(
                    poi_id=row["poi_id"],
                    name=row["name"],
                    category=row["category"],
                    location=(lat, lon),
                    attractiveness=attractiveness,
                )
            )
    return index
