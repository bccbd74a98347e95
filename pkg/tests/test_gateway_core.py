import concurrent.futures
import json

import pytest

from socpilot.errors import ContractViolation
from socpilot.gateway import CompletionRequest, JsonContract, FieldSpec, LlmGateway, TemplateCatalog
from socpilot.gateway.backends import ReplayBackend, ScriptedBackend
from socpilot.gateway.ratelimit import TokenBucket
from socpilot.gateway.scripted import ScriptedRule, load_rules_file, validate_rules


def rule(text=None, template_id=None, where=None, fn=None):
    responder = (lambda b, rng, a: text) if fn is None else fn
    return ScriptedRule(responder=responder, template_id=template_id, where=dict(where or {}))


@pytest.fixture(scope="module")
def catalog():
    return TemplateCatalog.builtin()


def make_gateway(catalog, rules, seed=0, **kwargs):
    return LlmGateway(catalog, ScriptedBackend(list(rules), seed=seed), **kwargs)


def attitude_request(**overrides):
    bindings = {
        "agent profile description": "You are Ada.",
        "topic": "gun control",
        "related incidents": "none",
        "previous attitude": "5",
    }
    bindings.update(overrides.pop("bindings", {}))
    return CompletionRequest(template_id="attitude", bindings=bindings, **overrides)


def test_scripted_first_match_wins(catalog):
    rules = [
        rule('{"attitude": 1}', template_id="attitude"),
        rule('{"attitude": 9}'),
    ]
    gw = make_gateway(catalog, rules)
    assert gw.complete_structured(attitude_request())["attitude"] == 1


def test_scripted_catch_all_used_for_other_templates(catalog):
    rules = [
        rule('{"attitude": 1}', template_id="attitude"),
        rule('{"thought": "calm"}'),
    ]
    gw = make_gateway(catalog, rules)
    record = gw.complete_structured(
        CompletionRequest("thought", {"agent profile description": "P", "incidents": "none"})
    )
    assert record["thought"] == "calm"


def test_scripted_seeded_rule_is_reproducible(catalog):
    def stochastic(bindings, rng, attempt):
        return json.dumps({"attitude": rng.randint(0, 10)})

    rules = [rule(fn=stochastic)]
    first = make_gateway(catalog, rules, seed=42).complete_structured(attitude_request())
    second = make_gateway(catalog, rules, seed=42).complete_structured(attitude_request())
    assert first == second
    # different bindings draw from a different derived stream
    other = make_gateway(catalog, rules, seed=42).complete_structured(
        attitude_request(bindings={"previous attitude": "7"})
    )
    assert isinstance(other["attitude"], int)


def test_contract_violation_retries_then_fails(catalog):
    calls = []

    def always_bad(bindings, rng, attempt):
        calls.append(attempt)
        return '{"attitude": 99}'

    gw = make_gateway(catalog, [rule(fn=always_bad)])
    with pytest.raises(ContractViolation):
        gw.complete_structured(attitude_request(max_retries=2))
    assert calls == [0, 1, 2]
    assert gw.stats.requests == 3
    assert gw.stats.retries == 2
    assert gw.stats.parse_failures == 1


def test_retry_prompt_carries_violation_detail(catalog):
    seen_prompts = []

    class SpyBackend(ScriptedBackend):
        def complete(self, prompt, request, attempt):
            seen_prompts.append(prompt)
            return super().complete(prompt, request, attempt)

    def repairs_on_retry(bindings, rng, attempt):
        return '{"attitude": 99}' if attempt == 0 else '{"attitude": 4}'

    gw = LlmGateway(catalog, SpyBackend([rule(fn=repairs_on_retry)]))
    record = gw.complete_structured(attitude_request(max_retries=2))
    assert record["attitude"] == 4
    assert "previous response was invalid" in seen_prompts[1]
    assert gw.stats.parse_failures == 0
    assert gw.stats.retries == 1


def test_cache_hit_skips_backend(catalog):
    gw = make_gateway(catalog, [rule('{"attitude": 5}')])
    req = attitude_request()
    gw.complete_structured(req)
    gw.complete_structured(attitude_request())
    assert gw.stats.requests == 1
    assert gw.stats.cache_hits == 1


def test_distinct_bindings_miss_cache(catalog):
    gw = make_gateway(catalog, [rule('{"attitude": 5}')])
    gw.complete_structured(attitude_request())
    gw.complete_structured(attitude_request(bindings={"previous attitude": "6"}))
    assert gw.stats.requests == 2
    assert gw.stats.cache_hits == 0


def test_hundred_identical_requests_one_backend_call(catalog):
    gw = make_gateway(catalog, [rule('{"attitude": 5}')])
    for _ in range(100):
        gw.complete_structured(attitude_request())
    assert gw.stats.requests == 1
    assert gw.stats.cache_hits == 99


def test_gateway_safe_under_concurrent_callers(catalog):
    def echo(bindings, rng, attempt):
        return json.dumps({"attitude": int(bindings["previous attitude"])})

    gw = make_gateway(catalog, [rule(fn=echo)])
    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        futures = [
            pool.submit(
                gw.complete_structured,
                attitude_request(bindings={"previous attitude": str(i % 11)}),
            )
            for i in range(200)
        ]
        results = [f.result() for f in futures]
    assert all(r["attitude"] == i % 11 for i, r in enumerate(results))
    assert gw.stats.requests + gw.stats.cache_hits == 200


def test_scripted_response_contract_range_never_escapes(catalog):
    # even a malicious rule cannot push an out-of-range value through
    gw = make_gateway(catalog, [rule('{"attitude": -3}')])
    with pytest.raises(ContractViolation):
        gw.complete_structured(attitude_request(max_retries=0))


def test_rate_limiter_throttles_requests(catalog):
    fake_now = [0.0]
    slept = []

    def clock():
        return fake_now[0]

    def sleep(seconds):
        slept.append(seconds)
        fake_now[0] += seconds

    bucket = TokenBucket(rate_per_minute=60, capacity=1, clock=clock, sleep=sleep)
    gw = make_gateway(catalog, [rule('{"attitude": 5}')], rate_limiter=bucket, cache_enabled=False)
    gw.complete_structured(attitude_request())
    gw.complete_structured(attitude_request())
    assert slept and sum(slept) >= 0.9  # second call waited ~1s at 60 rpm


def test_transcript_replay_round_trip(catalog, tmp_path):
    transcript = tmp_path / "transcript.jsonl"
    gw = make_gateway(catalog, [rule('{"attitude": 6}')], transcript_path=str(transcript))
    original = gw.complete_structured(attitude_request())
    gw.close()

    replay = LlmGateway(catalog, ReplayBackend(transcript))
    replayed = replay.complete_structured(attitude_request())
    assert replayed == original


def test_rules_file_loading(tmp_path):
    path = tmp_path / "rules.yaml"
    path.write_text(
        """
rules:
  - match: {template_id: attitude}
    respond: {text: '{"attitude": 2}'}
  - match: {}
    respond: {text: '{}'}
""",
        encoding="utf-8",
    )
    rules = load_rules_file(path)
    assert len(rules) == 2
    assert rules[0].template_id == "attitude"
    assert rules[-1].is_catch_all


def test_rules_file_requires_catch_all(tmp_path):
    path = tmp_path / "rules.yaml"
    path.write_text(
        """
rules:
  - match: {template_id: attitude}
    respond: {text: '{}'}
""",
        encoding="utf-8",
    )
    from socpilot.errors import ConfigError

    with pytest.raises(ConfigError):
        load_rules_file(path)


def test_validate_rules_rejects_early_catch_all():
    from socpilot.errors import ConfigError

    rules = [rule("{}"), rule("{}", template_id="attitude"), rule("{}")]
    with pytest.raises(ConfigError):
        validate_rules(rules)
