import json

import pytest
from hypothesis import given, strategies as st

from socpilot.errors import ContractViolation
from socpilot.gateway import BracketPairContract, FieldSpec, JsonContract, extract_json_block


ATTITUDE = JsonContract([FieldSpec("attitude", "int", 0, 10)])


def test_plain_json_parses():
    assert ATTITUDE.parse('{"attitude": 5}')["attitude"] == 5


def test_json_wrapped_in_prose_and_fences():
    record = ATTITUDE.parse('Sure! ```{"attitude": 7}``` hope that helps')
    assert record["attitude"] == 7


def test_out_of_range_rejected_not_clamped():
    with pytest.raises(ContractViolation):
        ATTITUDE.parse('{"attitude": 99}')


def test_first_satisfying_block_wins():
    text = 'bad: {"attitude": 99} then good: {"attitude": 3}'
    assert ATTITUDE.parse(text)["attitude"] == 3


def test_numeric_strings_coerced():
    assert ATTITUDE.parse('{"attitude": "8"}')["attitude"] == 8


def test_float_field_rejects_non_numeric():
    contract = JsonContract([FieldSpec("work", "float", 0, 1)])
    with pytest.raises(ContractViolation):
        contract.parse('{"work": "plenty"}')


def test_missing_field_is_violation():
    with pytest.raises(ContractViolation):
        ATTITUDE.parse('{"rating": 5}')


def test_extra_fields_tolerated():
    record = ATTITUDE.parse('{"attitude": 5, "explanation": "because"}')
    assert record["explanation"] == "because"


def test_choice_field():
    contract = JsonContract([FieldSpec("word", "choice", choices=("Joy", "Fear"))])
    assert contract.parse('{"word": "Fear"}')["word"] == "Fear"
    with pytest.raises(ContractViolation):
        contract.parse('{"word": "Meh"}')


def test_plan_steps_field():
    contract = JsonContract([FieldSpec("steps", "plan_steps", maximum=6)])
    raw = {"steps": [{"type": "mobility", "intention": "go"}, {"type": "other", "intention": "rest"}]}
    parsed = contract.parse(json.dumps(raw))
    assert [s["type"] for s in parsed["steps"]] == ["mobility", "other"]
    too_many = {"steps": [{"type": "other", "intention": f"s{i}"} for i in range(7)]}
    with pytest.raises(ContractViolation):
        contract.parse(json.dumps(too_many))
    with pytest.raises(ContractViolation):
        contract.parse('{"steps": [{"type": "warp", "intention": "x"}]}')


def test_bracket_pair_contract():
    contract = BracketPairContract(max_index=2)
    assert contract.parse("[online, 0]") == {"mode": "online", "index": 0}
    assert contract.parse("I choose: [offline, 2].") == {"mode": "offline", "index": 2}
    with pytest.raises(ContractViolation):
        contract.parse("[online, 5]")
    with pytest.raises(ContractViolation):
        contract.parse("[sideways, 1]")
    with pytest.raises(ContractViolation):
        contract.parse("nothing here")


def test_nested_braces_inside_strings():
    contract = JsonContract([FieldSpec("thought", "str")])
    text = 'noise {"thought": "braces like { and } inside", "n": {"deep": 1}} tail'
    assert contract.parse(text)["thought"] == "braces like { and } inside"


@given(st.integers(min_value=0, max_value=10), st.text(alphabet=" abc\n`", max_size=20))
def test_extraction_ignores_surrounding_noise(value, noise):
    text = f"{noise}{{\"attitude\": {value}}}{noise}"
    assert ATTITUDE.parse(text)["attitude"] == value


def test_extract_json_block_raises_without_object():
    with pytest.raises(ContractViolation):
        extract_json_block("no json here [1, 2, 3]")
