from socpilot.gateway.contracts import (
    BracketPairContract,
    FieldSpec,
    FreeTextContract,
    JsonContract,
    extract_json_block,
)
from socpilot.gateway.core import CompletionRequest, GatewayStats, LlmGateway
from socpilot.gateway.templates import PromptTemplate, TemplateCatalog, render_template

__all__ = [
    "BracketPairContract",
    "CompletionRequest",
    "FieldSpec",
    "FreeTextContract",
    "GatewayStats",
    "JsonContract",
    "LlmGateway",
    "PromptTemplate",
    "TemplateCatalog",
    "extract_json_block",
    "render_template",
]
