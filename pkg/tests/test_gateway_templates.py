import pytest

from socpilot.errors import MissingBinding, TemplateError, UnknownPlaceholder
from socpilot.gateway import PromptTemplate, TemplateCatalog, render_template
from socpilot.gateway.templates import UNRESOLVED_MARKER_RE


def test_render_no_placeholders_is_identity():
    tmpl = PromptTemplate(id="plain", body="hello world", required_bindings=frozenset())
    assert render_template(tmpl, {}) == "hello world"


def test_render_substitutes_named_placeholders():
    tmpl = PromptTemplate(
        id="pair",
        body="sadness: {sadness}, joy: {joy}",
        required_bindings=frozenset({"sadness", "joy"}),
    )
    assert render_template(tmpl, {"sadness": "5", "joy": "5"}) == "sadness: 5, joy: 5"


def test_render_missing_binding():
    tmpl = PromptTemplate(
        id="pair",
        body="sadness: {sadness}, fear: {fear}",
        required_bindings=frozenset({"sadness", "fear"}),
    )
    with pytest.raises(MissingBinding) as exc:
        render_template(tmpl, {"sadness": "5"})
    assert exc.value.name == "fear"


def test_render_extra_binding_rejected():
    tmpl = PromptTemplate(id="one", body="{a}", required_bindings=frozenset({"a"}))
    with pytest.raises(UnknownPlaceholder) as exc:
        render_template(tmpl, {"a": "1", "b": "2"})
    assert exc.value.name == "b"


def test_literal_braces_survive_rendering():
    tmpl = PromptTemplate(
        id="json-example",
        body='Return JSON, e.g. {{"attitude": 5}} for topic {topic}',
        required_bindings=frozenset({"topic"}),
    )
    out = render_template(tmpl, {"topic": "anything"})
    assert '{"attitude": 5}' in out


def test_declared_bindings_must_match_body():
    with pytest.raises(TemplateError):
        PromptTemplate(id="bad", body="{a}", required_bindings=frozenset({"a", "b"}))
    with pytest.raises(TemplateError):
        PromptTemplate(id="bad2", body="{a} {c}", required_bindings=frozenset({"a"}))


def test_builtin_catalog_loads_and_renders_clean():
    catalog = TemplateCatalog.builtin()
    expected = {
        "emotion", "thought", "attitude", "place_type", "radius", "social_target",
        "message", "consumption", "satisfaction", "plan", "echo_chamber", "survey",
        "relationship_delta", "interview_reply",
    }
    assert expected <= set(catalog.ids())
    for template_id in catalog.ids():
        tmpl = catalog.get(template_id)
        bindings = {name: "X" for name in tmpl.required_bindings}
        rendered = tmpl.render(bindings)
        # no unresolved placeholder markers remain after substitution
        assert not UNRESOLVED_MARKER_RE.search(rendered), (template_id, rendered)


def test_emotion_template_renders_paper_shape():
    catalog = TemplateCatalog.builtin()
    tmpl = catalog.get("emotion")
    bindings = {name: "5" for name in tmpl.required_bindings}
    bindings["agent profile description"] = "You are Ada."
    bindings["thought"] = "all good"
    bindings["incident"] = "nothing notable"
    rendered = tmpl.render(bindings)
    assert "sadness: 5, joy: 5" in rendered
    assert "choose one word to represent your current status" in rendered
