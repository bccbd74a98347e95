"""The silicon participant: one agent's state plus its prompt-mediated ops.

All cognition goes through the gateway; a contract violation never crashes
the agent, it leaves the previous state in place (the gateway counts the
failure) so that multi-day runs stay total.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from socpilot.agents.memory import MemoryStream
from socpilot.agents.minds import Attitude, EmotionState, Thought
from socpilot.agents.needs import (
    NeedsParams,
    NeedsState,
    PROMPT_FIELD,
    evaluate_needs,
    preemption_target,
    select_need,
)
from socpilot.agents.plans import Plan, PlanStep
from socpilot.agents.profile import AgentProfile, AgentStatus
from socpilot.errors import ContractViolation, SocpilotError
from socpilot.gateway import CompletionRequest, FieldSpec, JsonContract

log = logging.getLogger(__name__)

NEED_GUIDANCE = {
    "hungry": "get something to eat",
    "tired": "rest and recover energy",
    "safe": "secure your livelihood and finances",
    "social": "connect with friends",
    "whatever": "spend free time however you like",
}


@dataclass
class EnvView:
    """The slice of the environment an agent sees when prompted."""

    weather: str = "clear"
    temperature: str = "22"
    other_information: str = "none"
    current_time: str = ""


@dataclass
class StepOutcome:
    step_type: str
    intention: str
    outcome: str
    visited_poi: str = ""       # poi id when the step ended at a countable place
    visited_category: str = ""


@dataclass
class Agent:
    profile: AgentProfile
    status: AgentStatus
    rng: random.Random
    needs_params: NeedsParams = field(default_factory=NeedsParams)
    max_plan_steps: int = 6
    temperature: float = 1.0
    emotion: EmotionState = field(default_factory=EmotionState)
    attitudes: dict[str, Attitude] = field(default_factory=dict)
    thought: Thought = field(default_factory=Thought)
    memory: MemoryStream = field(default_factory=MemoryStream)
    needs: NeedsState = field(default_factory=NeedsState)
    plan: Plan | None = None

    @property
    def agent_id(self) -> str:
        return self.profile.agent_id

    # ------------------------------------------------------------------
    # prompt bindings

    def persona(self) -> str:
        return self.profile.description()

    def emotion_types(self) -> str:
        return self.emotion.summary()

    def related_information(self, topics: bool = True) -> str:
        """Profile + status block used by surveys and interviews (read-only)."""
        lines = [self.persona(), self.status.summary()]
        if topics:
            for topic in sorted(self.attitudes):
                lines.append(f"Attitude on {topic}: {self.attitudes[topic].rating}/10")
        return "\n".join(lines)

    # ------------------------------------------------------------------
    # mind updates

    def update_emotion(self, gateway, incident: str, now_iso: str) -> EmotionState:
        bindings = {
            "agent profile description": self.persona(),
            **{k: str(v) for k, v in self.emotion.intensities().items()},
            "thought": self.thought.display(),
            "incident": incident or "nothing notable",
        }
        request = CompletionRequest("emotion", bindings, temperature=self.temperature)
        try:
            record = gateway.complete_structured(request)
        except ContractViolation:
            log.warning("%s: emotion update failed, state unchanged", self.agent_id)
            return self.emotion
        self.emotion = EmotionState.from_record(record)
        if incident:
            self.memory.append(now_iso, "incident", incident)
        self.memory.append(now_iso, "reflection", self.emotion.conclusion or self.emotion.emotion_word)
        return self.emotion

    def update_attitude(self, gateway, topic: str, related_incidents: str, now_iso: str) -> Attitude:
        attitude = self.attitudes[topic]
        bindings = {
            "agent profile description": self.persona(),
            "topic": topic,
            "related incidents": related_incidents or "none",
            "previous attitude": str(attitude.rating),
        }
        request = CompletionRequest("attitude", bindings, temperature=self.temperature)
        try:
            record = gateway.complete_structured(request)
        except ContractViolation:
            log.warning("%s: attitude update failed, rating unchanged", self.agent_id)
            return attitude
        self.attitudes[topic] = Attitude(topic=topic, rating=int(record["attitude"]))
        return self.attitudes[topic]

    def update_thought(self, gateway, day_incidents: str, now) -> Thought:
        bindings = {
            "agent profile description": self.persona(),
            "incidents": day_incidents or "no notable incidents",
        }
        request = CompletionRequest("thought", bindings, temperature=self.temperature)
        now_iso = now.isoformat()
        try:
            record = gateway.complete_structured(request)
        except ContractViolation:
            log.warning("%s: thought update failed, previous thought retained", self.agent_id)
            return self.thought
        self.thought = Thought(text=str(record["thought"]), updated_at=now_iso)
        self.memory.append(now_iso, "reflection", self.thought.text)
        self.memory.refresh_digest(now)
        return self.thought

    # ------------------------------------------------------------------
    # needs and planning

    def elapse(self, hours: float) -> None:
        self.needs = evaluate_needs(self.needs, self.needs_params, hours)

    def update_satisfaction(self, gateway, plan: Plan) -> NeedsState:
        need = plan.target_need
        bindings = {
            "current need": need,
            "plan target": plan.target,
            "evaluation results": plan.evaluations_text(),
            "hunger satisfaction": f"{self.needs.hunger_satisfaction:.2f}",
            "energy satisfaction": f"{self.needs.energy_satisfaction:.2f}",
            "safety satisfaction": f"{self.needs.safety_satisfaction:.2f}",
            "social satisfaction": f"{self.needs.social_satisfaction:.2f}",
        }
        if need == "whatever":
            fields = [
                FieldSpec("safety satisfaction", "float", 0, 1),
                FieldSpec("social satisfaction", "float", 0, 1),
            ]
        else:
            fields = [FieldSpec(PROMPT_FIELD[need], "float", 0, 1)]
        request = CompletionRequest("satisfaction", bindings, temperature=self.temperature)
        try:
            record = gateway.complete_structured(request, contract=JsonContract(fields))
        except ContractViolation:
            log.warning("%s: satisfaction update failed, values unchanged", self.agent_id)
            return self.needs
        if need == "whatever":
            self.needs.set_satisfaction("safe", record["safety satisfaction"])
            self.needs.set_satisfaction("social", record["social satisfaction"])
        else:
            self.needs.set_satisfaction(need, record[PROMPT_FIELD[need]])
        self.needs.current_need = select_need(self.needs, self.needs_params.thresholds)
        return self.needs

    def generate_plan(self, gateway, need: str, env: EnvView, now_iso: str) -> Plan:
        assert self.needs.current_need == need, "plans are generated for the current need"
        selected = f"{need}: {NEED_GUIDANCE.get(need, 'act sensibly')}"
        bindings = {
            "weather": env.weather,
            "temperature": env.temperature,
            "other information": env.other_information,
            "selected option": selected,
            "current location": self.status.location_label,
            "current time": env.current_time or now_iso,
            "consumption level": self.status.consumption_level,
            "occupation": self.profile.occupation,
            "age": str(self.profile.age),
            "emotion types": self.emotion_types(),
            "thought": self.thought.display(),
            "max plan steps": str(self.max_plan_steps),
        }
        contract = JsonContract([FieldSpec("steps", "plan_steps", maximum=self.max_plan_steps)])
        request = CompletionRequest("plan", bindings, temperature=self.temperature)
        try:
            record = gateway.complete_structured(request, contract=contract)
            steps = [PlanStep(type=s["type"], intention=s["intention"]) for s in record["steps"]]
            plan = Plan(target_need=need, target=selected, steps=steps)
        except ContractViolation:
            log.warning("%s: plan generation degraded to fallback", self.agent_id)
            plan = Plan(
                target_need=need,
                target=selected,
                steps=[PlanStep(type="other", intention="rest")],
                degraded=True,
            )
        self.plan = plan
        self.memory.append(
            now_iso, "behavior",
            f"planned for {need}: " + " -> ".join(s.intention for s in plan.steps),
        )
        return plan

    def preempt_check(self) -> str | None:
        """Between steps: does an unmet, strictly more urgent need interrupt?"""
        if self.plan is None or self.plan.finished:
            return None
        return preemption_target(self.needs, self.needs_params, self.plan.target_need)

    def abandon_plan(self, reason: str) -> None:
        if self.plan is not None:
            self.plan.abandon(reason)
            self.plan = None

    def execute_step(self, world, now_iso: str) -> StepOutcome:
        """Run the next plan step, dispatching by type; errors don't abort."""
        step = self.plan.current_step
        assert step is not None, "execute_step requires an unfinished plan"
        visited_poi = ""
        visited_category = ""
        try:
            if step.type == "mobility":
                outcome, poi = world.run_mobility_step(self, step.intention)
                if poi is not None:
                    visited_poi = poi.poi_id
                    visited_category = poi.category
            elif step.type == "social":
                outcome = world.run_social_step(self, step.intention)
            elif step.type == "economy":
                outcome = world.run_economy_step(self, step.intention)
            else:
                outcome = "done"
        except SocpilotError as exc:
            outcome = f"failed: {exc}"
        self.plan.complete_current(outcome)
        self.memory.append(now_iso, "behavior", f"{step.intention} ({step.type})")
        return StepOutcome(
            step_type=step.type,
            intention=step.intention,
            outcome=outcome,
            visited_poi=visited_poi,
            visited_category=visited_category,
        )

    # ------------------------------------------------------------------
    # snapshots

    def to_dict(self) -> dict:
        state = self.rng.getstate()
        return {
            "profile": self.profile.to_dict(),
            "status": self.status.to_dict(),
            "rng_state": [state[0], list(state[1]), state[2]],
            "max_plan_steps": self.max_plan_steps,
            "temperature": self.temperature,
            "needs_params": {
                "thresholds": self.needs_params.thresholds,
                "decay_per_hour": self.needs_params.decay_per_hour,
            },
            "emotion": self.emotion.to_dict(),
            "attitudes": {t: a.rating for t, a in self.attitudes.items()},
            "thought": self.thought.to_dict(),
            "memory": self.memory.to_dict(),
            "needs": self.needs.to_dict(),
            "plan": self.plan.to_dict() if self.plan else None,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "Agent":
        rng = random.Random()
        version, internal, gauss = raw["rng_state"]
        rng.setstate((version, tuple(internal), gauss))
        agent = cls(
            profile=AgentProfile.from_dict(raw["profile"]),
            status=AgentStatus.from_dict(raw["status"]),
            rng=rng,
            needs_params=NeedsParams(**raw["needs_params"]),
            max_plan_steps=raw["max_plan_steps"],
            temperature=raw.get("temperature", 1.0),
            emotion=EmotionState.from_dict(raw["emotion"]),
            attitudes={t: Attitude(t, r) for t, r in raw["attitudes"].items()},
            thought=Thought(**raw["thought"]),
            memory=MemoryStream.from_dict(raw["memory"]),
            needs=NeedsState.from_dict(raw["needs"]),
        )
        if raw.get("plan"):
            agent.plan = Plan.from_dict(raw["plan"])
        return agent
