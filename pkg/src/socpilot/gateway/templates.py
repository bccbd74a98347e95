"""Prompt templates with named placeholders, and the on-disk template catalog.

Template bodies use ``{name}`` placeholders. Literal braces are written as
``{{`` and ``}}`` in catalog files so that JSON examples inside prompt text
survive rendering untouched. Placeholder names may contain letters, digits,
spaces, underscores and hyphens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from socpilot.errors import MissingBinding, TemplateError, UnknownPlaceholder
from socpilot.gateway.contracts import ResponseContract, contract_from_dict

_NAME_RE = re.compile(r"^[A-Za-z0-9 _\-]+$")

# Pattern a rendered prompt must never match: an unresolved placeholder marker.
UNRESOLVED_MARKER_RE = re.compile(r"\{[A-Za-z0-9 _\-]+\}")


def _parse_body(body: str) -> list[tuple[str, str]]:
    """Split a template body into ('lit', text) and ('ph', name) parts."""
    parts: list[tuple[str, str]] = []
    lit: list[str] = []
    i, n = 0, len(body)
    while i < n:
        ch = body[i]
        if ch == "{":
            if i + 1 < n and body[i + 1] == "{":
                lit.append("{")
                i += 2
                continue
            end = body.find("}", i + 1)
            if end == -1:
                raise TemplateError(f"unclosed placeholder at offset {i}")
            name = body[i + 1 : end]
            if not _NAME_RE.match(name):
                raise TemplateError(f"invalid placeholder name: {name!r}")
            if lit:
                parts.append(("lit", "".join(lit)))
                lit = []
            parts.append(("ph", name))
            i = end + 1
        elif ch == "}":
            if i + 1 < n and body[i + 1] == "}":
                lit.append("}")
                i += 2
                continue
            raise TemplateError(f"unmatched '}}' at offset {i}")
        else:
            lit.append(ch)
            i += 1
    if lit:
        parts.append(("lit", "".join(lit)))
    return parts


@dataclass(frozen=True)
class PromptTemplate:
    """A named prompt body plus the contract its responses must satisfy.

    ``response_contract`` is None for free-text prompts.
    """

    id: str
    body: str
    required_bindings: frozenset[str]
    response_contract: ResponseContract | None = None
    _parts: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        parts = tuple(_parse_body(self.body))
        object.__setattr__(self, "_parts", parts)
        found = {name for kind, name in parts if kind == "ph"}
        if found != set(self.required_bindings):
            missing = set(self.required_bindings) - found
            extra = found - set(self.required_bindings)
            raise TemplateError(
                f"template {self.id!r}: placeholder mismatch"
                + (f"; declared but absent from body: {sorted(missing)}" if missing else "")
                + (f"; in body but undeclared: {sorted(extra)}" if extra else "")
            )

    def render(self, bindings: dict[str, str]) -> str:
        return render_template(self, bindings)


def render_template(template: PromptTemplate, bindings: dict[str, str]) -> str:
    """Substitute every placeholder; bindings must cover them exactly."""
    required = set(template.required_bindings)
    provided = set(bindings)
    for name in sorted(required - provided):
        raise MissingBinding(name)
    for name in sorted(provided - required):
        raise UnknownPlaceholder(name)
    out: list[str] = []
    for kind, text in template._parts:
        out.append(str(bindings[text]) if kind == "ph" else text)
    return "".join(out)


class TemplateCatalog:
    """Templates loaded from a directory of front-matter text files.

    Each ``*.txt`` file starts with a ``---`` delimited YAML header carrying
    ``id``, ``required_bindings`` and ``contract``, followed by the raw body.
    """

    def __init__(self, templates: dict[str, PromptTemplate] | None = None):
        self._templates: dict[str, PromptTemplate] = dict(templates or {})

    def __contains__(self, template_id: str) -> bool:
        return template_id in self._templates

    def __len__(self) -> int:
        return len(self._templates)

    def ids(self) -> list[str]:
        return sorted(self._templates)

    def get(self, template_id: str) -> PromptTemplate:
        try:
            return self._templates[template_id]
        except KeyError:
            raise TemplateError(f"unknown template id: {template_id!r}") from None

    def add(self, template: PromptTemplate) -> None:
        self._templates[template.id] = template

    @classmethod
    def load_dir(cls, path: str | Path) -> "TemplateCatalog":
        catalog = cls()
        root = Path(path)
        for file in sorted(root.glob("*.txt")):
            catalog.add(load_template_file(file))
        if not len(catalog):
            raise TemplateError(f"no templates found under {root}")
        return catalog

    @classmethod
    def builtin(cls) -> "TemplateCatalog":
        """The catalog shipped with the package."""
        return cls.load_dir(Path(__file__).parent / "catalog")


def load_template_file(path: str | Path) -> PromptTemplate:
    text = Path(path).read_text(encoding="utf-8")
    if not text.startswith("---\n"):
        raise TemplateError(f"{path}: missing front-matter header")
    try:
        header_text, body = text[4:].split("\n---\n", 1)
    except ValueError:
        raise TemplateError(f"{path}: unterminated front-matter header") from None
    header = yaml.safe_load(header_text)
    if not isinstance(header, dict) or "id" not in header:
        raise TemplateError(f"{path}: front matter must declare an id")
    contract = contract_from_dict(header.get("contract"))
    return PromptTemplate(
        id=str(header["id"]),
        body=body.lstrip("\n"),
        required_bindings=frozenset(header.get("required_bindings") or []),
        response_contract=contract,
    )
