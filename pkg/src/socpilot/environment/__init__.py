from socpilot.environment.bus import MessageBus, SocialMessage
from socpilot.environment.clock import SimClock
from socpilot.environment.context import GlobalContext, GlobalSchedule
from socpilot.environment.geo import POI, GeoIndex, haversine_distance, load_pois
from socpilot.environment.population import CBGProfile, load_cbgs, sample_population

__all__ = [
    "CBGProfile",
    "GeoIndex",
    "GlobalContext",
    "GlobalSchedule",
    "MessageBus",
    "POI",
    "SimClock",
    "SocialMessage",
    "haversine_distance",
    "load_cbgs",
    "load_pois",
    "sample_population",
]
