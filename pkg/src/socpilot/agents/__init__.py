from socpilot.agents.agent import Agent
from socpilot.agents.memory import MemoryStream
from socpilot.agents.minds import Attitude, EmotionState, Thought
from socpilot.agents.needs import NeedsParams, NeedsState, evaluate_needs
from socpilot.agents.plans import Plan, PlanStep
from socpilot.agents.profile import AgentProfile, AgentStatus, Friendship

__all__ = [
    "Agent",
    "AgentProfile",
    "AgentStatus",
    "Attitude",
    "EmotionState",
    "Friendship",
    "MemoryStream",
    "NeedsParams",
    "NeedsState",
    "Plan",
    "PlanStep",
    "Thought",
    "evaluate_needs",
]
