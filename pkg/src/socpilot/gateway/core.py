"""The gateway proper: render, call, parse, retry, cache, count.

Policy notes that matter to callers:

* Out-of-range values are rejected and retried here, never clamped; any
  clamping is a per-caller decision.
* On a contract violation the request is retried with the violation detail
  appended to the prompt, up to ``max_retries`` extra attempts.
* The response cache is keyed by (rendered prompt, temperature, backend id)
  and lives for one run; an optional transcript file records every final
  response so live runs replay offline.
"""

from __future__ import annotations

import copy
import json
import logging
import threading
import time
from dataclasses import dataclass, field

from socpilot.errors import ContractViolation, RateLimited
from socpilot.gateway.backends import request_key, wait_with_backoff
from socpilot.gateway.contracts import FreeTextContract, ResponseContract
from socpilot.gateway.templates import TemplateCatalog

log = logging.getLogger(__name__)

_CORRECTION = (
    "\n\nYour previous response was invalid: {detail}. "
    "Respond again and follow the required output format exactly."
)


@dataclass
class CompletionRequest:
    template_id: str
    bindings: dict[str, str]
    temperature: float = 1.0
    max_retries: int = 3

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")


@dataclass
class GatewayStats:
    """Monotonic counters for one gateway lifetime."""

    requests: int = 0
    cache_hits: int = 0
    retries: int = 0
    parse_failures: int = 0
    tokens_in: int = 0
    tokens_out: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class _Transcript:
    path: str
    _fh: object = field(default=None, repr=False)

    def open(self, backend_id: str):
        self._fh = open(self.path, "w", encoding="utf-8")
        self._fh.write(json.dumps({"backend_id": backend_id}) + "\n")
        return self

    def record(self, key: str, template_id: str, response: str):
        self._fh.write(
            json.dumps({"key": key, "template_id": template_id, "response": response}) + "\n"
        )
        self._fh.flush()

    def close(self):
        if self._fh:
            self._fh.close()
            self._fh = None


class LlmGateway:
    """Provider-agnostic completion layer shared by every agent.

    Thread-safe: concurrent callers contend only on the rate limiter, the
    cache and the counters.
    """

    def __init__(
        self,
        catalog: TemplateCatalog,
        backend,
        *,
        rate_limiter=None,
        cache_enabled: bool = True,
        transcript_path: str | None = None,
        max_rate_limit_retries: int = 5,
        sleep=time.sleep,
    ):
        self.catalog = catalog
        self.backend = backend
        self.stats = GatewayStats()
        self._rate_limiter = rate_limiter
        self._cache_enabled = cache_enabled
        self._cache: dict[str, dict] = {}
        self._lock = threading.Lock()
        self._max_rate_limit_retries = max_rate_limit_retries
        self._sleep = sleep
        self._transcript = None
        if transcript_path:
            self._transcript = _Transcript(transcript_path).open(backend.backend_id)

    def close(self):
        if self._transcript:
            self._transcript.close()

    def render(self, template_id: str, bindings: dict[str, str]) -> str:
        return self.catalog.get(template_id).render(bindings)

    def complete_structured(
        self, request: CompletionRequest, contract: ResponseContract | None = None
    ) -> dict:
        """Complete and parse against the template's (or given) contract.

        Raises ContractViolation once retries are exhausted; the final
        failure is what increments ``parse_failures``.
        """
        template = self.catalog.get(request.template_id)
        prompt = template.render(request.bindings)
        if contract is None:
            contract = template.response_contract or FreeTextContract()

        key = request_key(prompt, request.temperature, self.backend.backend_id)
        with self._lock:
            if self._cache_enabled and key in self._cache:
                self.stats.cache_hits += 1
                return copy.deepcopy(self._cache[key])

        violation: ContractViolation | None = None
        attempt_prompt = prompt
        for attempt in range(request.max_retries + 1):
            reply = self._call_backend(attempt_prompt, request, attempt)
            try:
                record = contract.parse(reply.text)
            except ContractViolation as exc:
                violation = exc
                attempt_prompt = prompt + _CORRECTION.format(detail=exc.detail)
                with self._lock:
                    if attempt < request.max_retries:
                        self.stats.retries += 1
                continue
            with self._lock:
                if self._cache_enabled:
                    self._cache[key] = copy.deepcopy(record)
                if self._transcript:
                    self._transcript.record(key, request.template_id, reply.text)
            return record

        with self._lock:
            self.stats.parse_failures += 1
        log.warning("contract violation after %d retries on %r: %s",
                    request.max_retries, request.template_id, violation.detail)
        raise violation

    def _call_backend(self, prompt: str, request: CompletionRequest, attempt: int):
        for rl_attempt in range(self._max_rate_limit_retries + 1):
            if self._rate_limiter is not None:
                self._rate_limiter.acquire()
            try:
                reply = self.backend.complete(prompt, request, attempt)
            except RateLimited:
                if rl_attempt >= self._max_rate_limit_retries:
                    raise
                wait_with_backoff(rl_attempt, sleep=self._sleep)
                continue
            with self._lock:
                self.stats.requests += 1
                self.stats.tokens_in += reply.tokens_in
                self.stats.tokens_out += reply.tokens_out
            return reply
