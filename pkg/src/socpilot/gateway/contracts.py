"""Structured-output contracts and tolerant JSON extraction.

Model responses routinely wrap the requested JSON in prose or code fences;
the extractor scans for the first balanced top-level braces block that both
parses and satisfies the contract. Values that violate a declared range are
rejected here (the caller retries), never clamped.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace

from socpilot.errors import ContractViolation

PLAN_STEP_TYPES = ("mobility", "social", "economy", "other")


def iter_json_blocks(text: str):
    """Yield every balanced top-level ``{...}`` substring, left to right."""
    i = 0
    n = len(text)
    while i < n:
        start = text.find("{", i)
        if start == -1:
            return
        depth = 0
        in_str = False
        escape = False
        for j in range(start, n):
            ch = text[j]
            if in_str:
                if escape:
                    escape = False
                elif ch == "\\":
                    escape = True
                elif ch == '"':
                    in_str = False
            elif ch == '"':
                in_str = True
            elif ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    yield text[start : j + 1]
                    break
        else:
            return  # unbalanced tail; no further candidates
        i = start + 1


def extract_json_block(text: str) -> dict:
    """First balanced braces block that parses as a JSON object."""
    for block in iter_json_blocks(text):
        try:
            parsed = json.loads(block)
        except json.JSONDecodeError:
            continue
        if isinstance(parsed, dict):
            return parsed
    raise ContractViolation("no parseable JSON object found in response")


@dataclass(frozen=True)
class FieldSpec:
    """One declared response field: name, type, and optional range/choices."""

    name: str
    kind: str = "str"  # int | float | str | choice | plan_steps
    minimum: float | None = None
    maximum: float | None = None
    choices: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.minimum is not None and self.maximum is not None and self.minimum > self.maximum:
            raise ValueError(f"field {self.name!r}: empty range [{self.minimum}, {self.maximum}]")
        if self.kind == "choice" and not self.choices:
            raise ValueError(f"field {self.name!r}: choice field without choices")

    def check(self, value):
        """Coerce and range-check; returns the validated value."""
        if self.kind == "int":
            value = _coerce_number(self.name, value, integral=True)
        elif self.kind == "float":
            value = _coerce_number(self.name, value, integral=False)
        elif self.kind == "choice":
            if not isinstance(value, str) or value not in self.choices:
                raise ContractViolation(
                    f"field {self.name!r}: {value!r} is not one of {list(self.choices)}"
                )
            return value
        elif self.kind == "plan_steps":
            return _check_plan_steps(self.name, value, self.maximum)
        elif self.kind == "str":
            if not isinstance(value, str):
                raise ContractViolation(f"field {self.name!r}: expected text, got {type(value).__name__}")
            return value
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.minimum is not None and value < self.minimum:
            raise ContractViolation(f"field {self.name!r}: {value} below minimum {self.minimum}")
        if self.maximum is not None and value > self.maximum:
            raise ContractViolation(f"field {self.name!r}: {value} above maximum {self.maximum}")
        return value


def _coerce_number(name: str, value, *, integral: bool):
    if isinstance(value, bool):
        raise ContractViolation(f"field {name!r}: expected a number, got a boolean")
    if isinstance(value, str):
        try:
            value = float(value.strip())
        except ValueError:
            raise ContractViolation(f"field {name!r}: {value!r} is not numeric") from None
    if not isinstance(value, (int, float)):
        raise ContractViolation(f"field {name!r}: expected a number, got {type(value).__name__}")
    if integral:
        if float(value) != int(value):
            raise ContractViolation(f"field {name!r}: {value} is not an integer")
        return int(value)
    return float(value)


def _check_plan_steps(name: str, value, max_steps):
    if not isinstance(value, list) or not value:
        raise ContractViolation(f"field {name!r}: expected a non-empty list of steps")
    if max_steps is not None and len(value) > int(max_steps):
        raise ContractViolation(f"field {name!r}: {len(value)} steps exceeds limit {int(max_steps)}")
    steps = []
    for idx, raw in enumerate(value):
        if not isinstance(raw, dict):
            raise ContractViolation(f"field {name!r}[{idx}]: step must be an object")
        step_type = str(raw.get("type", "")).strip().lower()
        if step_type not in PLAN_STEP_TYPES:
            raise ContractViolation(
                f"field {name!r}[{idx}]: type {raw.get('type')!r} not in {list(PLAN_STEP_TYPES)}"
            )
        intention = str(raw.get("intention", "")).strip()
        if not intention:
            raise ContractViolation(f"field {name!r}[{idx}]: empty intention")
        steps.append({"type": step_type, "intention": intention})
    return steps


class ResponseContract:
    """Interface: parse raw backend text into a validated record."""

    kind = "abstract"

    def parse(self, text: str) -> dict:
        raise NotImplementedError


class FreeTextContract(ResponseContract):
    kind = "free"

    def parse(self, text: str) -> dict:
        return {"text": text}


class JsonContract(ResponseContract):
    """JSON object with declared fields; extra fields are tolerated."""

    kind = "json"

    def __init__(self, fields: list[FieldSpec] | tuple[FieldSpec, ...] = ()):
        self.fields = tuple(fields)

    def parse(self, text: str) -> dict:
        first_violation: ContractViolation | None = None
        found_any = False
        for block in iter_json_blocks(text):
            try:
                parsed = json.loads(block)
            except json.JSONDecodeError:
                continue
            if not isinstance(parsed, dict):
                continue
            found_any = True
            try:
                return self._validate(parsed)
            except ContractViolation as exc:
                first_violation = first_violation or exc
        if first_violation is not None:
            raise first_violation
        if not found_any:
            raise ContractViolation("no parseable JSON object found in response")
        raise ContractViolation("no JSON object satisfied the contract")

    def _validate(self, parsed: dict) -> dict:
        record = dict(parsed)
        for spec in self.fields:
            if spec.name not in parsed:
                raise ContractViolation(f"missing required field {spec.name!r}")
            record[spec.name] = spec.check(parsed[spec.name])
        return record

    def refined(self, **updates_by_field) -> "JsonContract":
        """Copy with per-field overrides, e.g. choices known only at call time."""
        fields = []
        for spec in self.fields:
            if spec.name in updates_by_field:
                fields.append(replace(spec, **updates_by_field[spec.name]))
            else:
                fields.append(spec)
        return JsonContract(fields)


class BracketPairContract(ResponseContract):
    """Responses of the exact form ``[mode, index]``.

    ``max_index`` is supplied per call (it depends on the rendered list).
    """

    kind = "bracket_pair"
    _PATTERN = re.compile(r"\[\s*'?(\w+)'?\s*,\s*(-?\d+)\s*\]")

    def __init__(self, modes: tuple[str, ...] = ("online", "offline"), max_index: int | None = None):
        self.modes = tuple(modes)
        self.max_index = max_index

    def with_max_index(self, max_index: int) -> "BracketPairContract":
        return BracketPairContract(self.modes, max_index)

    def parse(self, text: str) -> dict:
        match = self._PATTERN.search(text)
        if not match:
            raise ContractViolation("response does not contain a [mode, index] pair")
        mode = match.group(1).lower()
        index = int(match.group(2))
        if mode not in self.modes:
            raise ContractViolation(f"mode {mode!r} not in {list(self.modes)}")
        if index < 0 or (self.max_index is not None and index > self.max_index):
            raise ContractViolation(f"index {index} out of range 0..{self.max_index}")
        return {"mode": mode, "index": index}


def contract_from_dict(raw) -> ResponseContract | None:
    """Build a contract from its catalog/front-matter description."""
    if raw is None or raw == "free":
        return None
    if isinstance(raw, str):
        raise ValueError(f"unknown contract shorthand {raw!r}")
    kind = raw.get("kind", "json")
    if kind == "free":
        return None
    if kind == "bracket_pair":
        modes = tuple(raw.get("modes", ("online", "offline")))
        return BracketPairContract(modes=modes)
    if kind == "json":
        fields = []
        for spec in raw.get("fields", []):
            fields.append(
                FieldSpec(
                    name=spec["name"],
                    kind=spec.get("type", "str"),
                    minimum=spec.get("min"),
                    maximum=spec.get("max"),
                    choices=tuple(spec["choices"]) if "choices" in spec else None,
                )
            )
        return JsonContract(fields)
    raise ValueError(f"unknown contract kind {kind!r}")
