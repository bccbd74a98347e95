"""Scripted response rules: matchers plus a registry of deterministic builtins.

A rules file is YAML of the form::

    rules:
      - match: {template_id: emotion}
        respond: {builtin: emotion_echo, params: {word: Relief}}
      - match: {template_id: attitude, where: {topic: "gun"}}
        respond: {builtin: attitude_persuasion}
      - match: {}
        respond: {text: '{}'}

Rules are tried in order; the first match wins; the list must end with a
catch-all (empty match). ``respond`` is a literal ``text``, a ``template``
re-substituted from request bindings, or a named ``builtin`` from
:data:`BUILTIN_RESPONDERS`. Builtins draw randomness only from the
per-request stream handed to them, so identical (rules, request, seed)
always produce identical output.

Matchers and builtins see a reserved ``$attempt`` binding carrying the
retry attempt number, which lets a rules file exercise violation/repair
paths deterministically.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import yaml

from socpilot.errors import ConfigError

EMOTION_DIMENSIONS = ("sadness", "joy", "fear", "disgust", "anger", "surprise")

EMOTION_WORDS = (
    "Joy", "Distress", "Resentment", "Pity", "Hope", "Fear", "Satisfaction",
    "Relief", "Disappointment", "Pride", "Admiration", "Shame", "Reproach",
    "Liking", "Disliking", "Gratitude", "Anger", "Gratification", "Remorse",
    "Love", "Hate",
)


@dataclass(frozen=True)
class ScriptedRule:
    """One matcher → responder pair."""

    responder: Callable[[dict, "random.Random", int], str]
    template_id: str | None = None
    where: dict[str, str] = field(default_factory=dict)
    name: str = ""

    def matches(self, template_id: str, bindings: dict, attempt: int) -> bool:
        if self.template_id is not None and self.template_id != template_id:
            return False
        view = {**bindings, "$attempt": str(attempt)}
        for key, pattern in self.where.items():
            if not re.search(pattern, str(view.get(key, ""))):
                return False
        return True

    @property
    def is_catch_all(self) -> bool:
        return self.template_id is None and not self.where

    def respond(self, bindings: dict, rng, attempt: int) -> str:
        return self.responder({**bindings, "$attempt": str(attempt)}, rng, attempt)


def first_matching_rule(rules, template_id: str, bindings: dict, attempt: int) -> ScriptedRule:
    for rule in rules:
        if rule.matches(template_id, bindings, attempt):
            return rule
    raise ConfigError("scripted rules have no catch-all")  # load-time check makes this unreachable


def validate_rules(rules: list[ScriptedRule]) -> list[ScriptedRule]:
    if not rules:
        raise ConfigError("scripted rules file declares no rules")
    if not rules[-1].is_catch_all:
        raise ConfigError("scripted rules must end with a catch-all rule")
    for rule in rules[:-1]:
        if rule.is_catch_all:
            raise ConfigError("catch-all rule must be the last rule")
    return rules


def load_rules_file(path: str | Path) -> list[ScriptedRule]:
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict) or "rules" not in raw:
        raise ConfigError(f"{path}: expected a top-level 'rules' list")
    rules = []
    for idx, entry in enumerate(raw["rules"]):
        try:
            rules.append(rule_from_dict(entry))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{path}: rules[{idx}]: {exc}") from exc
    return validate_rules(rules)


def rule_from_dict(entry: dict) -> ScriptedRule:
    match = entry.get("match") or {}
    respond = entry["respond"]
    if "text" in respond:
        literal = str(respond["text"])
        responder = lambda bindings, rng, attempt: literal  # noqa: E731
    elif "template" in respond:
        tmpl = str(respond["template"])
        responder = lambda bindings, rng, attempt: _substitute(tmpl, bindings)  # noqa: E731
    elif "builtin" in respond:
        name = respond["builtin"]
        try:
            fn = BUILTIN_RESPONDERS[name]
        except KeyError:
            raise ValueError(f"unknown builtin responder {name!r}") from None
        params = respond.get("params") or {}
        responder = lambda bindings, rng, attempt: fn(bindings, params, rng)  # noqa: E731
    else:
        raise ValueError("respond must give one of: text, template, builtin")
    return ScriptedRule(
        responder=responder,
        template_id=match.get("template_id"),
        where=dict(match.get("where") or {}),
        name=str(entry.get("name", respond.get("builtin", "rule"))),
    )


_SUB_RE = re.compile(r"\{([A-Za-z0-9 _\-$]+)\}")


def _substitute(template: str, bindings: dict) -> str:
    return _SUB_RE.sub(lambda m: str(bindings.get(m.group(1), m.group(0))), template)


# ---------------------------------------------------------------------------
# binding parsers shared by the builtins


def _num(text, default=0.0) -> float:
    try:
        return float(str(text).replace("$", "").replace(",", "").strip())
    except (TypeError, ValueError):
        return default


def _find_amount(text: str, label: str, default: float = 0.0) -> float:
    match = re.search(rf"{re.escape(label)}\s*[:=]?\s*\$?(-?[\d,]+(?:\.\d+)?)", text, re.IGNORECASE)
    return _num(match.group(1)) if match else default


def _scale_bounds(survey_text: str) -> tuple[float, float, bool]:
    """Parse 'Scale: integer 0-3' / 'Scale: number 0-100' out of an item."""
    match = re.search(r"Scale:\s*(integer|number)\s*(-?\d+(?:\.\d+)?)\s*-\s*(-?\d+(?:\.\d+)?)", survey_text)
    if not match:
        return 0.0, 10.0, True
    return float(match.group(2)), float(match.group(3)), match.group(1) == "integer"


# ---------------------------------------------------------------------------
# builtin responders: fn(bindings, params, rng) -> raw response text


def emotion_echo(bindings, params, rng) -> str:
    """Echo current intensities, optionally nudged by incident keywords."""
    values = {dim: int(_num(bindings.get(dim, 5), 5)) for dim in EMOTION_DIMENSIONS}
    incident = str(bindings.get("incident", ""))
    word = params.get("word")
    for reaction in params.get("reactions", []):
        if re.search(reaction["pattern"], incident, re.IGNORECASE):
            for dim in EMOTION_DIMENSIONS:
                if dim in reaction:
                    values[dim] = max(0, min(10, values[dim] + int(reaction[dim])))
            word = reaction.get("word", word)
    if not word:
        word = EMOTION_WORDS[rng.randrange(len(EMOTION_WORDS))]
    record = dict(values)
    record["conclusion"] = f"I feel {word.lower()} about what is happening."
    record["word"] = word
    return json.dumps(record)


def thought_summary(bindings, params, rng) -> str:
    incidents = str(bindings.get("incidents", "")).strip()
    if incidents and incidents.lower() not in ("", "no notable incidents"):
        first = incidents.splitlines()[0][:120]
        thought = f"Today was shaped by this: {first}. I will keep that in mind tomorrow."
    else:
        thought = "Currently nothing good or bad is happening, I think things are steady."
    return json.dumps({"thought": thought})


def attitude_persuasion(bindings, params, rng) -> str:
    """Aligned messages pull one step toward the pole, opposing ones toward 5."""
    rating = int(_num(bindings.get("previous attitude", 5), 5))
    step = int(params.get("step", 1))
    for raw in re.findall(r"stance[ =:]+(\d+)", str(bindings.get("related incidents", ""))):
        stance = int(raw)
        if stance == 5 or rating == 5:
            continue
        aligned = (stance > 5) == (rating > 5)
        if aligned:
            rating = min(10, rating + step) if rating > 5 else max(0, rating - step)
        else:
            rating = rating - step if rating > 5 else rating + step
    return json.dumps({"attitude": rating})


def attitude_echo(bindings, params, rng) -> str:
    return json.dumps({"attitude": int(_num(bindings.get("previous attitude", 5), 5))})


_PLAN_LIBRARY = {
    "hungry": [
        ("mobility", "commute via the grocery store"),
        ("economy", "compare product prices"),
        ("other", "prepare a meal"),
        ("other", "eat"),
    ],
    "tired": [
        ("other", "complete bedtime routine"),
        ("other", "go to sleep"),
    ],
    "safe": [
        ("mobility", "commute to the office"),
        ("economy", "respond to priority emails"),
        ("economy", "attend the project planning meeting"),
        ("economy", "coordinate cross-department tasks"),
    ],
    "social": [
        ("other", "browse social networking sites"),
        ("social", "find a friend to contact"),
        ("social", "send a message to the friend"),
    ],
    "whatever": [
        ("other", "browse webpages"),
        ("other", "play video games"),
    ],
}


def plan_by_need(bindings, params, rng) -> str:
    """Canned daily plans per need; optional sheltering under a context marker."""
    option = str(bindings.get("selected option", "")).lower()
    need = next((label for label in _PLAN_LIBRARY if option.startswith(label)), "whatever")
    steps = [{"type": t, "intention": i} for t, i in _PLAN_LIBRARY[need]]
    marker = params.get("shelter_marker")
    context = f"{bindings.get('other information', '')} {bindings.get('weather', '')}"
    if marker and re.search(marker, context, re.IGNORECASE):
        if rng.random() < float(params.get("shelter_prob", 0.8)):
            steps = [
                {"type": "other", "intention": "stay home and wait out the storm"},
                {"type": "other", "intention": "check emergency supplies"},
            ]
    elif need == "whatever" and rng.random() < float(params.get("leisure_outing_prob", 0.0)):
        steps = [
            {"type": "mobility", "intention": "visit a nearby park"},
            {"type": "other", "intention": "take a walk"},
        ]
    limit = int(_num(bindings.get("max plan steps", 6), 6))
    return json.dumps({"target": option or need, "steps": steps[:limit]})


def satisfaction_refill(bindings, params, rng) -> str:
    need = str(bindings.get("current need", "whatever")).strip().lower()
    value = float(params.get("value", 0.9))
    field_by_need = {
        "hungry": "hunger satisfaction",
        "tired": "energy satisfaction",
        "safe": "safety satisfaction",
        "social": "social satisfaction",
    }
    if need in field_by_need:
        return json.dumps({field_by_need[need]: value})
    return json.dumps({
        "safety satisfaction": float(params.get("safety_value", value)),
        "social satisfaction": float(params.get("social_value", max(0.0, value - 0.2))),
    })


_PLACE_KEYWORDS = [
    ("grocery", "shopping"),
    ("shop", "shopping"),
    ("office", "workplace"),
    ("work", "workplace"),
    ("restaurant", "dining"),
    ("lunch", "dining"),
    ("dinner", "dining"),
    ("park", "park"),
]


def place_type_keywords(bindings, params, rng) -> str:
    intention = str(bindings.get("intention", "")).lower()
    keywords = list(params.get("keywords", {}).items()) or _PLACE_KEYWORDS
    for keyword, category in keywords:
        if keyword in intention:
            return json.dumps({"place type": category})
    return json.dumps({"place type": str(params.get("default", "shopping"))})


def radius_by_context(bindings, params, rng) -> str:
    radius = int(params.get("default", 40000))
    marker = params.get("marker")
    context = f"{bindings.get('other info', '')} {bindings.get('weather', '')}"
    if marker and re.search(marker, context, re.IGNORECASE):
        radius = int(params.get("reduced", 4000))
    return json.dumps({"radius": radius})


def social_target_pick(bindings, params, rng) -> str:
    """Pick the strongest-listed friend; coin-flip the meeting mode."""
    entries = re.findall(
        r"(\d+):\s*relationship strength\s*(\d+)", str(bindings.get("friend info", ""))
    )
    if not entries:
        return "[online, 0]"
    best = max(entries, key=lambda pair: (int(pair[1]), -int(pair[0])))
    mode = "online" if rng.random() < float(params.get("online_prob", 0.7)) else "offline"
    return f"[{mode}, {best[0]}]"


def message_from_intention(bindings, params, rng) -> str:
    constraint = str(bindings.get("discussion constraint", "")).strip()
    if constraint:
        openers = [
            "I keep thinking about this issue",
            "We should talk about this topic",
            "This debate matters to me",
        ]
        text = f"{openers[rng.randrange(len(openers))]} - where do you stand these days?"
    else:
        intention = str(bindings.get("intention", "catching up"))[:50]
        text = f"Hey! About {intention} - got a minute to chat?"
    return text[:100]


def relationship_delta_sentiment(bindings, params, rng) -> str:
    message = str(bindings.get("message text", "")).lower()
    positive = params.get("positive", ["thanks", "great", "chat", "catch up", "love", "minute"])
    negative = params.get("negative", ["hate", "stupid", "never", "wrong"])
    delta = 0
    if any(word in message for word in positive):
        delta = int(params.get("positive_delta", 2))
    if any(word in message for word in negative):
        delta = int(params.get("negative_delta", -2))
    return json.dumps({"delta": delta})


def consumption_by_support(bindings, params, rng) -> str:
    """Work propensity fixed; spending propensity rises with direct support."""
    support = _num(bindings.get("UBI", 0))
    base = float(params.get("base", 0.2))
    scale = float(params.get("scale", 20000.0))
    consumption = max(0.0, min(1.0, base + support / scale))
    return json.dumps({"work": float(params.get("work", 0.6)), "consumption": round(consumption, 4)})


def survey_likert_constant(bindings, params, rng) -> str:
    return json.dumps({"answer": params.get("value", 0)})


def cesd_by_wellbeing(bindings, params, rng) -> str:
    """Item score drawn binomial(3, p); p falls with savings and direct support."""
    info = str(bindings.get("related information", ""))
    savings = _find_amount(info, "Savings")
    support = _find_amount(info, "Monthly public support received")
    p = float(params.get("p0", 0.45))
    p -= savings / float(params.get("savings_scale", 80000.0))
    p -= support / float(params.get("support_scale", 4000.0))
    p = max(0.05, min(0.95, p))
    answer = sum(1 for _ in range(3) if rng.random() < p)
    return json.dumps({"answer": answer})


def thermometer_by_attitude(bindings, params, rng) -> str:
    """Warmth toward the out-group shrinks as the rating leaves the midpoint."""
    info = str(bindings.get("related information", ""))
    match = re.search(r"Attitude on [^:]+:\s*(\d+)", info)
    rating = int(match.group(1)) if match else 5
    return json.dumps({"answer": 100 - 10 * abs(rating - 5)})


def demagogue_line(bindings, params, rng) -> str:
    side = str(bindings.get("agree or disagree", "agree")).strip().lower()
    verb = "support" if side == "agree" else "reject"
    lines = [
        f"Everyone I trust has come to {verb} this - the evidence is overwhelming, join us.",
        f"History will prove we were right to {verb} this; do not be on the wrong side.",
        f"People like us {verb} this because we see what is really at stake.",
    ]
    return lines[rng.randrange(len(lines))]


def interview_reply(bindings, params, rng) -> str:
    question = str(bindings.get("question", "")).strip()
    info = str(bindings.get("status summary", ""))
    savings = _find_amount(info, "Savings")
    support = _find_amount(info, "Monthly public support received")
    if support > 0:
        stance = (
            "the monthly payment covers essential expenses and gives me room to breathe"
            if savings < 20000
            else "the payment is welcome, though I worry about prices creeping up"
        )
    else:
        stance = "I manage on what I earn, but a safety net would change how I plan ahead"
    lead_ins = ["Honestly,", "Thinking it over,", "From my experience,"]
    lead = lead_ins[rng.randrange(len(lead_ins))]
    topic = question[:80] if question else "that"
    return f"{lead} about \"{topic}\" - {stance}."


BUILTIN_RESPONDERS = {
    "emotion_echo": emotion_echo,
    "thought_summary": thought_summary,
    "attitude_persuasion": attitude_persuasion,
    "attitude_echo": attitude_echo,
    "plan_by_need": plan_by_need,
    "satisfaction_refill": satisfaction_refill,
    "place_type_keywords": place_type_keywords,
    "radius_by_context": radius_by_context,
    "social_target_pick": social_target_pick,
    "message_from_intention": message_from_intention,
    "relationship_delta_sentiment": relationship_delta_sentiment,
    "consumption_by_support": consumption_by_support,
    "survey_likert_constant": survey_likert_constant,
    "cesd_by_wellbeing": cesd_by_wellbeing,
    "thermometer_by_attitude": thermometer_by_attitude,
    "demagogue_line": demagogue_line,
    "interview_reply": interview_reply,
}
