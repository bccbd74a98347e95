from socpilot.behaviors.economy import (
    EconomyState,
    MonthlyDecision,
    compute_tax,
    load_brackets,
    settle_month,
)
from socpilot.behaviors.mobility import MobilityDecision, gravity_select

__all__ = [
    "EconomyState",
    "MobilityDecision",
    "MonthlyDecision",
    "compute_tax",
    "gravity_select",
    "load_brackets",
    "settle_month",
]
