"""Chat-completion backends: scripted (offline), live HTTP, and replay.

All backends satisfy the same small protocol: ``complete(prompt, request,
attempt) -> BackendReply``. The scripted backend is a pure function of
(rules, request, seed) so that entire simulation runs replay byte-identically.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import requests as _requests

from socpilot.errors import BackendUnavailable, RateLimited
from socpilot.gateway.scripted import ScriptedRule, first_matching_rule


@dataclass(frozen=True)
class BackendReply:
    text: str
    tokens_in: int = 0
    tokens_out: int = 0


class Backend(Protocol):
    backend_id: str

    def complete(self, prompt: str, request, attempt: int) -> BackendReply: ...


def derive_seed(base_seed: int, template_id: str, bindings: dict, attempt: int) -> int:
    """Stable per-request seed; independent of process hash randomization."""
    payload = json.dumps(
        [base_seed, template_id, sorted((k, str(v)) for k, v in bindings.items()), attempt],
        ensure_ascii=False,
    )
    return int.from_bytes(hashlib.sha256(payload.encode("utf-8")).digest()[:8], "big")


class ScriptedBackend:
    """Deterministic rule-driven stand-in for a real model.

    Safe to call from concurrent contexts: per-request state is derived
    from the request itself, never shared.
    """

    backend_id = "scripted"

    def __init__(self, rules: list[ScriptedRule], seed: int = 0):
        self.rules = list(rules)
        self.seed = seed

    def complete(self, prompt: str, request, attempt: int) -> BackendReply:
        rule = first_matching_rule(self.rules, request.template_id, request.bindings, attempt)
        rng = random.Random(derive_seed(self.seed, request.template_id, request.bindings, attempt))
        text = rule.respond(request.bindings, rng, attempt)
        return BackendReply(text=text, tokens_in=0, tokens_out=0)


class LiveBackend:
    """OpenAI-style HTTP chat-completions endpoint.

    Credentials come from SOCPILOT_LLM_KEY / SOCPILOT_LLM_URL /
    SOCPILOT_LLM_MODEL unless given explicitly.
    """

    def __init__(
        self,
        url: str | None = None,
        model: str | None = None,
        api_key: str | None = None,
        *,
        timeout: float = 60.0,
        session=None,
    ):
        self.url = url or os.environ.get("SOCPILOT_LLM_URL", "")
        self.model = model or os.environ.get("SOCPILOT_LLM_MODEL", "")
        self.api_key = api_key if api_key is not None else os.environ.get("SOCPILOT_LLM_KEY", "")
        if not self.url or not self.model:
            raise BackendUnavailable(
                "live backend needs SOCPILOT_LLM_URL and SOCPILOT_LLM_MODEL (or explicit args)"
            )
        self.timeout = timeout
        self._session = session or _requests.Session()

    @property
    def backend_id(self) -> str:
        return f"live:{self.model}"

    def complete(self, prompt: str, request, attempt: int) -> BackendReply:
        payload = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": request.temperature,
        }
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        try:
            resp = self._session.post(self.url, json=payload, headers=headers, timeout=self.timeout)
        except _requests.RequestException as exc:
            raise BackendUnavailable(f"request failed: {exc}") from exc
        if resp.status_code == 429:
            raise RateLimited(f"backend returned 429: {resp.text[:200]}")
        if resp.status_code != 200:
            raise BackendUnavailable(f"backend returned {resp.status_code}: {resp.text[:200]}")
        body = resp.json()
        try:
            text = body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise BackendUnavailable(f"malformed completion body: {body!r}") from exc
        usage = body.get("usage") or {}
        return BackendReply(
            text=text,
            tokens_in=int(usage.get("prompt_tokens", 0)),
            tokens_out=int(usage.get("completion_tokens", 0)),
        )


class ReplayBackend:
    """Serves responses recorded in a gateway transcript file.

    The transcript key is a content hash of (rendered prompt, temperature,
    original backend id), so a replayed run reproduces the original exactly
    without touching the network.
    """

    def __init__(self, transcript_path: str | Path):
        self._responses: dict[str, str] = {}
        recorded_id = "scripted"
        with open(transcript_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                if "backend_id" in record:
                    recorded_id = record["backend_id"]
                    continue
                self._responses[record["key"]] = record["response"]
        self.backend_id = recorded_id

    def __len__(self) -> int:
        return len(self._responses)

    def complete(self, prompt: str, request, attempt: int) -> BackendReply:
        key = request_key(prompt, request.temperature, self.backend_id)
        try:
            return BackendReply(text=self._responses[key])
        except KeyError:
            raise BackendUnavailable(
                f"transcript has no response for template {request.template_id!r} "
                f"(key {key[:12]}...)"
            ) from None


def request_key(prompt: str, temperature: float, backend_id: str) -> str:
    digest = hashlib.sha256()
    digest.update(prompt.encode("utf-8"))
    digest.update(b"\x00")
    digest.update(repr(float(temperature)).encode())
    digest.update(b"\x00")
    digest.update(backend_id.encode("utf-8"))
    return digest.hexdigest()


def wait_with_backoff(attempt: int, *, base: float = 0.5, cap: float = 8.0, sleep=time.sleep) -> None:
    sleep(min(cap, base * (2**attempt)))
